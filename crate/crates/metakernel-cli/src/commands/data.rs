//! `data gen` and `data load`.

use std::path::Path;

use serde::Serialize;

use metakernel::datasets::Dataset;
use metakernel::Result;

use super::{resolve_dataset, write_json};

pub(crate) fn data_gen(
    out_dir: &Path,
    dataset: &str,
    n: usize,
    noise: f64,
    inner_radius_factor: f64,
    seed: u64,
) -> Result<Vec<(String, bool)>> {
    let ds = resolve_dataset(dataset, n, noise, inner_radius_factor, seed)?;
    let file = format!("{dataset}.csv");
    ds.write_csv_file(&out_dir.join(&file))?;
    println!(
        "wrote {} samples ({} features, {} classes) to {file}",
        ds.len(),
        ds.dim(),
        ds.n_classes()
    );
    Ok(vec![(file, true)])
}

#[derive(Serialize)]
struct DataSummary {
    name: String,
    samples: usize,
    features: usize,
    classes: usize,
    class_counts: Vec<usize>,
    feature_min: Vec<f64>,
    feature_max: Vec<f64>,
}

pub(crate) fn data_load(out_dir: &Path, path: &str) -> Result<Vec<(String, bool)>> {
    let ds = Dataset::read_csv_file(Path::new(path))?;
    let dim = ds.dim();
    let mut feature_min = vec![f64::INFINITY; dim];
    let mut feature_max = vec![f64::NEG_INFINITY; dim];
    for row in &ds.features {
        for (d, &v) in row.iter().enumerate() {
            feature_min[d] = feature_min[d].min(v);
            feature_max[d] = feature_max[d].max(v);
        }
    }
    let summary = DataSummary {
        name: ds.name.clone(),
        samples: ds.len(),
        features: dim,
        classes: ds.n_classes(),
        class_counts: ds.class_counts(),
        feature_min,
        feature_max,
    };
    write_json(out_dir, "summary.json", &summary)?;
    println!(
        "{}: {} samples, {} features, {} classes {:?}",
        summary.name, summary.samples, summary.features, summary.classes, summary.class_counts
    );
    Ok(vec![("summary.json".into(), true)])
}
