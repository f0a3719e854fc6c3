//! Library surface of the command-line tool, kept separate from argument
//! parsing so test suites can drive commands directly.

pub mod commands;
pub mod manifest;

pub use commands::{execute, rerun, CommandSpec};
pub use manifest::{Artifact, RunManifest, MANIFEST_FILE};
