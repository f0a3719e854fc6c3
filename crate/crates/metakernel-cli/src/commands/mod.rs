//! Command implementations. Each command executes into one output
//! directory, returns its artifact list, and gets a manifest written by
//! [`execute`]. The [`CommandSpec`] recorded in the manifest carries every
//! resolved parameter (grids and seeds included), so a manifest can be
//! re-executed to reproduce the run.

mod data;
mod geometry_cmd;
mod kernel_shape;
mod model_ops;
mod search;

use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use metakernel::datasets::{load_iris, make_circles, make_moons, Dataset};
use metakernel::{Error, KernelFamily, KernelParams, Result};

use crate::manifest::RunManifest;

/// A fully resolved command: what ran, with which parameters and seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum CommandSpec {
    DataGen {
        dataset: String,
        n: usize,
        noise: f64,
        inner_radius_factor: f64,
        seed: u64,
    },
    DataLoad {
        path: String,
    },
    KernelShape {
        family: String,
        alpha: f64,
        k: f64,
        z: f64,
        gamma: f64,
        resolution: usize,
    },
    Train {
        data: String,
        family: String,
        alpha: f64,
        k: f64,
        z: f64,
        gamma: f64,
        c: f64,
        tolerance: f64,
        max_passes: usize,
        seed: u64,
        scale: bool,
    },
    Evaluate {
        model: String,
        data: String,
    },
    GridSearch {
        dataset: String,
        n: usize,
        noise: f64,
        inner_radius_factor: f64,
        family: String,
        metric: String,
        alphas: Vec<f64>,
        ks: Vec<f64>,
        zs: Vec<f64>,
        cs: Vec<f64>,
        gammas: Vec<f64>,
        train_fraction: f64,
        seed: u64,
        tolerance: f64,
        max_passes: usize,
    },
    Experiment {
        dataset: String,
        n: usize,
        noise: f64,
        inner_radius_factor: f64,
        families: Vec<String>,
        metric: String,
        train_fraction: f64,
        seed: u64,
        tolerance: f64,
        max_passes: usize,
        lc_fractions: Vec<f64>,
        lc_repeats: usize,
    },
    Boundary {
        model: String,
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
        resolution_x: usize,
        resolution_y: usize,
    },
    Geometry {
        family: String,
        alpha: f64,
        k: f64,
        probes: usize,
        mesh_resolution: usize,
    },
}

impl CommandSpec {
    pub fn name(&self) -> &'static str {
        match self {
            CommandSpec::DataGen { .. } => "data-gen",
            CommandSpec::DataLoad { .. } => "data-load",
            CommandSpec::KernelShape { .. } => "kernel-shape",
            CommandSpec::Train { .. } => "train",
            CommandSpec::Evaluate { .. } => "evaluate",
            CommandSpec::GridSearch { .. } => "grid-search",
            CommandSpec::Experiment { .. } => "experiment",
            CommandSpec::Boundary { .. } => "boundary",
            CommandSpec::Geometry { .. } => "geometry",
        }
    }
}

/// Run a command into `out_dir` (created if missing) and write its
/// manifest. Returns the manifest that was written.
pub fn execute(spec: &CommandSpec, out_dir: &Path) -> Result<RunManifest> {
    std::fs::create_dir_all(out_dir)?;
    let started = Instant::now();
    let outputs = match spec {
        CommandSpec::DataGen {
            dataset,
            n,
            noise,
            inner_radius_factor,
            seed,
        } => data::data_gen(out_dir, dataset, *n, *noise, *inner_radius_factor, *seed)?,
        CommandSpec::DataLoad { path } => data::data_load(out_dir, path)?,
        CommandSpec::KernelShape {
            family,
            alpha,
            k,
            z,
            gamma,
            resolution,
        } => kernel_shape::run(out_dir, family, *alpha, *k, *z, *gamma, *resolution)?,
        CommandSpec::Train {
            data,
            family,
            alpha,
            k,
            z,
            gamma,
            c,
            tolerance,
            max_passes,
            seed,
            scale,
        } => model_ops::train(
            out_dir, data, family, *alpha, *k, *z, *gamma, *c, *tolerance, *max_passes, *seed,
            *scale,
        )?,
        CommandSpec::Evaluate { model, data } => model_ops::evaluate(out_dir, model, data)?,
        CommandSpec::GridSearch {
            dataset,
            n,
            noise,
            inner_radius_factor,
            family,
            metric,
            alphas,
            ks,
            zs,
            cs,
            gammas,
            train_fraction,
            seed,
            tolerance,
            max_passes,
        } => search::grid_search_cmd(
            out_dir,
            dataset,
            *n,
            *noise,
            *inner_radius_factor,
            family,
            metric,
            alphas,
            ks,
            zs,
            cs,
            gammas,
            *train_fraction,
            *seed,
            *tolerance,
            *max_passes,
        )?,
        CommandSpec::Experiment {
            dataset,
            n,
            noise,
            inner_radius_factor,
            families,
            metric,
            train_fraction,
            seed,
            tolerance,
            max_passes,
            lc_fractions,
            lc_repeats,
        } => search::experiment_cmd(
            out_dir,
            dataset,
            *n,
            *noise,
            *inner_radius_factor,
            families,
            metric,
            *train_fraction,
            *seed,
            *tolerance,
            *max_passes,
            lc_fractions,
            *lc_repeats,
        )?,
        CommandSpec::Boundary {
            model,
            x_min,
            x_max,
            y_min,
            y_max,
            resolution_x,
            resolution_y,
        } => model_ops::boundary(
            out_dir,
            model,
            (*x_min, *x_max, *y_min, *y_max),
            (*resolution_x, *resolution_y),
        )?,
        CommandSpec::Geometry {
            family,
            alpha,
            k,
            probes,
            mesh_resolution,
        } => geometry_cmd::run(out_dir, family, *alpha, *k, *probes, *mesh_resolution)?,
    };
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;
    let manifest = RunManifest::create(spec.clone(), out_dir, &outputs, wall_ms)?;
    manifest.write(out_dir)?;
    Ok(manifest)
}

/// Re-execute the command recorded in a manifest into a fresh directory.
pub fn rerun(manifest_path: &Path, out_dir: &Path) -> Result<RunManifest> {
    let recorded = RunManifest::read(manifest_path)?;
    execute(&recorded.command, out_dir)
}

/// "moons", "circles", "iris", or a CSV path.
pub(crate) fn resolve_dataset(
    name: &str,
    n: usize,
    noise: f64,
    inner_radius_factor: f64,
    seed: u64,
) -> Result<Dataset> {
    match name {
        "moons" => make_moons(n, noise, seed),
        "circles" => make_circles(n, noise, inner_radius_factor, seed),
        "iris" => load_iris(),
        path if path.ends_with(".csv") => Dataset::read_csv_file(Path::new(path)),
        other => Err(Error::InvalidDataset(format!(
            "unknown dataset '{other}' (expected moons, circles, iris, or a .csv path)"
        ))),
    }
}

pub(crate) fn build_params(
    family: &str,
    alpha: f64,
    k: f64,
    z: f64,
    gamma: f64,
) -> Result<KernelParams> {
    match KernelFamily::parse(family)? {
        KernelFamily::AlphaSU2 => KernelParams::su2(alpha, k, z),
        KernelFamily::AlphaSU11 => KernelParams::su11(alpha, k, z),
        KernelFamily::Rbf => KernelParams::rbf(gamma),
    }
}

pub(crate) fn write_text(out_dir: &Path, name: &str, text: &str) -> Result<()> {
    std::fs::write(out_dir.join(name), text)?;
    Ok(())
}

pub(crate) fn write_json<T: Serialize>(out_dir: &Path, name: &str, value: &T) -> Result<()> {
    write_text(out_dir, name, &serde_json::to_string_pretty(value).map_err(Error::from)?)
}
