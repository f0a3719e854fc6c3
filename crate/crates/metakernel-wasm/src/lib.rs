//! Browser demo bindings: kernel-shape heatmaps, in-browser SVM training
//! with decision boundaries, and the curvature surfaces, all driven from
//! sliders on a single static page.
//!
//! Functions return plain `Vec<f64>` or JSON strings so the JS side stays
//! framework-free, and so everything is unit-testable on the native target.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use metakernel::datasets::{make_circles, make_moons, split, Scaler};
use metakernel::geometry::{curvature, revolution_surface_mesh, CurvatureMethod};
use metakernel::kernels::KernelEvaluator;
use metakernel::svm::{decision_grid, train_multiclass, GridBounds, TrainConfig};
use metakernel::tuning::accuracy;
use metakernel::{Error, KernelFamily, KernelParams};

fn params_from(family: &str, alpha: f64, k: f64, z: f64, gamma: f64) -> Result<KernelParams, Error> {
    match KernelFamily::parse(family)? {
        KernelFamily::AlphaSU2 => KernelParams::su2(alpha, k, z),
        KernelFamily::AlphaSU11 => KernelParams::su11(alpha, k, z),
        KernelFamily::Rbf => KernelParams::rbf(gamma),
    }
}


/// Re K((0,0), x') on a row-major resolution×resolution grid over
/// x' ∈ [−π, π]².
#[wasm_bindgen]
pub fn kernel_shape_grid(
    family: &str,
    alpha: f64,
    k: f64,
    z: f64,
    gamma: f64,
    resolution: usize,
) -> Result<Vec<f64>, String> {
    if resolution < 2 {
        return Err("resolution must be at least 2".to_string());
    }
    let params = params_from(family, alpha, k, z, gamma).map_err(|e| e.to_string())?;
    let evaluator = KernelEvaluator::new(&params);
    let coord = |i: usize| {
        -std::f64::consts::PI + 2.0 * std::f64::consts::PI * i as f64 / (resolution - 1) as f64
    };
    let origin = [0.0, 0.0];
    let mut values = Vec::with_capacity(resolution * resolution);
    for i1 in 0..resolution {
        for i0 in 0..resolution {
            values.push(evaluator.eval(&origin, &[coord(i0), coord(i1)]).re);
        }
    }
    Ok(values)
}

#[derive(Serialize)]
struct BoundaryDemo {
    points: Vec<[f64; 2]>,
    labels: Vec<usize>,
    train_mask: Vec<bool>,
    test_accuracy: f64,
    grid: Vec<f64>,
    grid_resolution: usize,
    bounds: [f64; 4],
}

/// Generate a dataset, train on a 70/30 split, and return the points plus
/// a decision grid as JSON for canvas rendering.
#[wasm_bindgen]
pub fn boundary_demo(
    dataset: &str,
    n: usize,
    noise: f64,
    family: &str,
    alpha: f64,
    k: f64,
    z: f64,
    gamma: f64,
    c: f64,
    seed: u64,
    grid_resolution: usize,
) -> Result<String, String> {
    let ds = match dataset {
        "moons" => make_moons(n, noise, seed),
        "circles" => make_circles(n, noise, 0.5, seed),
        other => Err(Error::InvalidDataset(format!("unknown dataset '{other}'"))),
    }
    .map_err(|e| e.to_string())?;
    let params = params_from(family, alpha, k, z, gamma).map_err(|e| e.to_string())?;
    let (train, test) = split(&ds, 0.7, seed, true).map_err(|e| e.to_string())?;
    let scaler = Scaler::fit(&train).map_err(|e| e.to_string())?;
    let train_scaled = scaler.transform(&train).map_err(|e| e.to_string())?;
    let config = TrainConfig {
        c,
        seed,
        ..TrainConfig::default()
    };
    let model = train_multiclass(&train_scaled.features, &train_scaled.labels, &params, &config)
        .map_err(|e| e.to_string())?
        .with_scaler(scaler);
    let predictions = model.predict_batch(&test.features).map_err(|e| e.to_string())?;
    let test_accuracy = accuracy(&predictions, &test.labels);

    let pad = 0.3;
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in &ds.features {
        for d in 0..2 {
            lo[d] = lo[d].min(p[d]);
            hi[d] = hi[d].max(p[d]);
        }
    }
    let bounds = GridBounds {
        x_min: lo[0] - pad,
        x_max: hi[0] + pad,
        y_min: lo[1] - pad,
        y_max: hi[1] + pad,
    };
    let grid =
        decision_grid(&model, bounds, (grid_resolution, grid_resolution)).map_err(|e| e.to_string())?;

    let mut points = Vec::with_capacity(ds.len());
    let mut labels = Vec::with_capacity(ds.len());
    let mut train_mask = vec![false; 0];
    for (p, &l) in train.features.iter().zip(&train.labels) {
        points.push([p[0], p[1]]);
        labels.push(l);
        train_mask.push(true);
    }
    for (p, &l) in test.features.iter().zip(&test.labels) {
        points.push([p[0], p[1]]);
        labels.push(l);
        train_mask.push(false);
    }
    let demo = BoundaryDemo {
        points,
        labels,
        train_mask,
        test_accuracy,
        grid,
        grid_resolution,
        bounds: [bounds.x_min, bounds.x_max, bounds.y_min, bounds.y_max],
    };
    serde_json::to_string(&demo).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct SurfaceDemo {
    vertices: Vec<[f64; 3]>,
    n_z: usize,
    n_x: usize,
    ricci_closed: f64,
    ricci_fd: f64,
    warning: Option<String>,
}

/// Revolution-surface mesh plus the curvature check at one probe point,
/// as JSON for wireframe rendering.
#[wasm_bindgen]
pub fn surface_demo(family: &str, alpha: f64, k: f64, resolution: usize) -> Result<String, String> {
    let params = params_from(family, alpha, k, 1.0, 0.0).map_err(|e| e.to_string())?;
    if params.family() == KernelFamily::Rbf {
        return Err("the RBF family is flat; pick a deformed family".to_string());
    }
    let freq = (2.0 * alpha).sqrt();
    let z_range = match params.family() {
        KernelFamily::AlphaSU2 => (0.0, std::f64::consts::PI / freq),
        _ => (0.0, 2.2 / freq),
    };
    let mesh = revolution_surface_mesh(
        &params,
        z_range,
        (0.0, 2.0 * std::f64::consts::PI),
        (resolution, resolution),
    )
    .map_err(|e| e.to_string())?;
    let probe = 0.5 * (z_range.0 + z_range.1);
    let closed = curvature(probe, &params, CurvatureMethod::ClosedForm).map_err(|e| e.to_string())?;
    let fd = curvature(probe, &params, CurvatureMethod::FiniteDifference).map_err(|e| e.to_string())?;
    let demo = SurfaceDemo {
        vertices: mesh.vertices().to_vec(),
        n_z: mesh.n_z(),
        n_x: mesh.n_x(),
        ricci_closed: closed.ricci_scalar,
        ricci_fd: fd.ricci_scalar,
        warning: mesh.warning().map(str::to_owned),
    };
    serde_json::to_string(&demo).map_err(|e| e.to_string())
}
