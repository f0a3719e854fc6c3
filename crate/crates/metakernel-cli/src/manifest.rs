//! Run manifests: every command writes exactly one `manifest.json` into its
//! output directory, recording the fully resolved command (seeds included),
//! the produced artifacts with checksums, and timing. Re-executing the
//! recorded command reproduces every artifact marked `reproducible`
//! byte for byte.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use metakernel::{Error, Result};

use crate::commands::CommandSpec;

pub const MANIFEST_VERSION: u32 = 1;
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Artifact {
    /// Path relative to the output directory.
    pub path: String,
    pub sha256: String,
    /// Whether a rerun of the recorded command must reproduce this file
    /// byte for byte (timing files are exempt).
    pub reproducible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub manifest_version: u32,
    pub toolkit_version: String,
    pub command: CommandSpec,
    pub artifacts: Vec<Artifact>,
    pub wall_ms: f64,
    pub created_unix_ms: u64,
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path)?;
    let digest = Sha256::digest(&bytes);
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

impl RunManifest {
    pub fn create(
        command: CommandSpec,
        out_dir: &Path,
        outputs: &[(String, bool)],
        wall_ms: f64,
    ) -> Result<Self> {
        let mut artifacts = Vec::with_capacity(outputs.len());
        for (rel, reproducible) in outputs {
            artifacts.push(Artifact {
                path: rel.clone(),
                sha256: sha256_file(&out_dir.join(rel))?,
                reproducible: *reproducible,
            });
        }
        Ok(RunManifest {
            manifest_version: MANIFEST_VERSION,
            toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            artifacts,
            wall_ms,
            created_unix_ms: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_millis() as u64)
                .unwrap_or(0),
        })
    }

    pub fn write(&self, out_dir: &Path) -> Result<PathBuf> {
        let path = out_dir.join(MANIFEST_FILE);
        std::fs::write(&path, serde_json::to_string_pretty(self).map_err(Error::from)?)?;
        Ok(path)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let manifest: RunManifest = serde_json::from_str(&text)?;
        if manifest.manifest_version != MANIFEST_VERSION {
            return Err(Error::InvalidParams(format!(
                "unsupported manifest version {}",
                manifest.manifest_version
            )));
        }
        Ok(manifest)
    }
}
