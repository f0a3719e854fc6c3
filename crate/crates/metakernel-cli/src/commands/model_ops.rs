//! `train`, `evaluate`, and `boundary`.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use metakernel::datasets::{Dataset, Scaler};
use metakernel::svm::{decision_grid, train_multiclass, GridBounds, SvmModel, TrainConfig};
use metakernel::tuning::{accuracy, macro_precision, macro_recall};
use metakernel::{Error, Result};

use super::{build_params, write_json};

#[derive(Serialize)]
struct TrainSummary {
    train_accuracy: f64,
    n_samples: usize,
    n_classes: usize,
    support_vectors_per_class: Vec<usize>,
    converged: Vec<bool>,
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn train(
    out_dir: &Path,
    data: &str,
    family: &str,
    alpha: f64,
    k: f64,
    z: f64,
    gamma: f64,
    c: f64,
    tolerance: f64,
    max_passes: usize,
    seed: u64,
    scale: bool,
) -> Result<Vec<(String, bool)>> {
    let ds = Dataset::read_csv_file(Path::new(data))?;
    let params = build_params(family, alpha, k, z, gamma)?;
    let config = TrainConfig {
        c,
        tolerance,
        max_passes,
        seed,
    };
    let (model, train_features) = if scale {
        let scaler = Scaler::fit(&ds)?;
        let scaled = scaler.transform(&ds)?;
        let model =
            train_multiclass(&scaled.features, &scaled.labels, &params, &config)?.with_scaler(scaler);
        (model, ds.features.clone())
    } else {
        let model = train_multiclass(&ds.features, &ds.labels, &params, &config)?;
        (model, ds.features.clone())
    };
    let predictions = model.predict_batch(&train_features)?;
    let summary = TrainSummary {
        train_accuracy: accuracy(&predictions, &ds.labels),
        n_samples: ds.len(),
        n_classes: ds.n_classes(),
        support_vectors_per_class: model
            .binaries
            .iter()
            .map(|b| b.support_vectors.len())
            .collect(),
        converged: model.binaries.iter().map(|b| b.converged).collect(),
    };
    model.write_json_file(&out_dir.join("model.json"))?;
    write_json(out_dir, "train_summary.json", &summary)?;
    println!(
        "trained {family} model on {} samples: train accuracy {:.4}",
        ds.len(),
        summary.train_accuracy
    );
    Ok(vec![
        ("model.json".into(), true),
        ("train_summary.json".into(), true),
    ])
}

#[derive(Serialize)]
struct EvalMetrics {
    accuracy: f64,
    macro_precision: f64,
    macro_recall: f64,
    n_samples: usize,
    confusion: Vec<Vec<usize>>,
}

pub(crate) fn evaluate(out_dir: &Path, model: &str, data: &str) -> Result<Vec<(String, bool)>> {
    let model = SvmModel::read_json_file(Path::new(model))?;
    let ds = Dataset::read_csv_file(Path::new(data))?;
    let predictions = model.predict_batch(&ds.features)?;
    let n_classes = ds.n_classes().max(model.classes.len());
    let mut confusion = vec![vec![0usize; n_classes]; n_classes];
    for (&p, &a) in predictions.iter().zip(&ds.labels) {
        confusion[a][p] += 1;
    }
    let metrics = EvalMetrics {
        accuracy: accuracy(&predictions, &ds.labels),
        macro_precision: macro_precision(&predictions, &ds.labels),
        macro_recall: macro_recall(&predictions, &ds.labels),
        n_samples: ds.len(),
        confusion,
    };
    write_json(out_dir, "metrics.json", &metrics)?;
    println!(
        "accuracy {:.4}, macro precision {:.4}, macro recall {:.4} on {} samples",
        metrics.accuracy, metrics.macro_precision, metrics.macro_recall, metrics.n_samples
    );
    Ok(vec![("metrics.json".into(), true)])
}

pub(crate) fn boundary(
    out_dir: &Path,
    model: &str,
    bounds: (f64, f64, f64, f64),
    resolution: (usize, usize),
) -> Result<Vec<(String, bool)>> {
    let model = SvmModel::read_json_file(Path::new(model))?;
    let (x_min, x_max, y_min, y_max) = bounds;
    let grid_bounds = GridBounds {
        x_min,
        x_max,
        y_min,
        y_max,
    };
    let values = decision_grid(&model, grid_bounds, resolution)?;
    let (nx, ny) = resolution;
    let coord = |lo: f64, hi: f64, n: usize, idx: usize| {
        if n == 1 {
            0.5 * (lo + hi)
        } else {
            lo + (hi - lo) * idx as f64 / (n - 1) as f64
        }
    };
    let mut csv = Vec::new();
    writeln!(csv, "x0,x1,value").map_err(Error::from)?;
    for iy in 0..ny {
        for ix in 0..nx {
            writeln!(
                csv,
                "{},{},{}",
                coord(x_min, x_max, nx, ix),
                coord(y_min, y_max, ny, iy),
                values[iy * nx + ix]
            )
            .map_err(Error::from)?;
        }
    }
    std::fs::write(out_dir.join("boundary.csv"), csv)?;
    let positive = values.iter().filter(|&&v| v > 0.0).count();
    println!(
        "decision grid {nx}x{ny} over [{x_min}, {x_max}] x [{y_min}, {y_max}]: \
         {positive}/{} cells positive",
        values.len()
    );
    Ok(vec![("boundary.csv".into(), true)])
}
