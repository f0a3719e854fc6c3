//! Synthetic benchmark datasets, the embedded iris table, train/test
//! splitting, and the [0, π] feature scaling the periodic kernels need.
//!
//! All generation is a pure function of (parameters, seed); the generator
//! is ChaCha8 with the bit-level float pipeline from [`crate::rng`], so
//! outputs are reproducible byte-for-byte across platforms.
//!
//! Conventions, frozen: moons class 0 is the upper arc (cos θ, sin θ) for
//! θ ∈ [0, π] and class 1 the shifted lower arc (1 − cos θ, 1/2 − sin θ);
//! circles class 0 is the unit circle and class 1 the inner circle of
//! radius `inner_radius_factor` (default 0.5). Gaussian noise of standard
//! deviation `noise` is added to both coordinates, one Box-Muller pair per
//! point.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::rng;

const IRIS_CSV: &str = include_str!("../data/iris.csv");
const IRIS_SHA256: &str = "4dbc924c5c7df3771f00c2851f68dd136fb797b5cc119851ce1f7a087dc912c1";

/// A labelled feature matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub features: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
    pub generation_seed: u64,
}

impl Dataset {
    pub fn new(
        name: impl Into<String>,
        features: Vec<Vec<f64>>,
        labels: Vec<usize>,
        generation_seed: u64,
    ) -> Result<Self> {
        let ds = Dataset {
            name: name.into(),
            features,
            labels,
            generation_seed,
        };
        ds.validate()?;
        Ok(ds)
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.features.first().map_or(0, Vec::len)
    }

    pub fn n_classes(&self) -> usize {
        self.labels.iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.n_classes()];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    pub fn validate(&self) -> Result<()> {
        if self.features.len() != self.labels.len() {
            return Err(Error::InvalidDataset(format!(
                "{} feature rows vs {} labels",
                self.features.len(),
                self.labels.len()
            )));
        }
        if self.features.is_empty() {
            return Err(Error::InvalidDataset("empty dataset".into()));
        }
        let dim = self.features[0].len();
        if dim == 0 {
            return Err(Error::InvalidDataset("zero-dimensional features".into()));
        }
        for (i, row) in self.features.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidDataset(format!(
                    "row {i} has {} features, expected {dim}",
                    row.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidDataset(format!(
                    "row {i} contains a non-finite feature"
                )));
            }
        }
        let n_classes = self.n_classes();
        let counts = self.class_counts();
        if counts.iter().any(|&c| c == 0) {
            return Err(Error::InvalidDataset(format!(
                "labels must cover 0..{} without gaps, got counts {counts:?}",
                n_classes - 1
            )));
        }
        if self.len() < n_classes {
            return Err(Error::InvalidDataset(
                "fewer samples than classes".into(),
            ));
        }
        Ok(())
    }

    /// CSV with header `f0,...,f{d-1},label` and shortest round-trip
    /// decimal formatting (locale-independent).
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        let dim = self.dim();
        let mut header: Vec<String> = (0..dim).map(|i| format!("f{i}")).collect();
        header.push("label".into());
        wtr.write_record(&header)?;
        for (row, label) in self.features.iter().zip(&self.labels) {
            let mut record: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            record.push(label.to_string());
            wtr.write_record(&record)?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn write_csv_file(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_csv(std::io::BufWriter::new(file))
    }

    pub fn read_csv<R: Read>(name: impl Into<String>, r: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(r);
        let headers = rdr.headers()?.clone();
        let dim = headers.len().saturating_sub(1);
        if dim == 0 || headers.get(dim) != Some("label") {
            return Err(Error::InvalidDataset(
                "expected header f0,...,f{d-1},label".into(),
            ));
        }
        let mut features = Vec::new();
        let mut labels = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let record = record?;
            if record.len() != dim + 1 {
                return Err(Error::InvalidDataset(format!(
                    "row {i} has {} fields, expected {}",
                    record.len(),
                    dim + 1
                )));
            }
            let mut row = Vec::with_capacity(dim);
            for field in record.iter().take(dim) {
                let v: f64 = field.parse().map_err(|_| {
                    Error::InvalidDataset(format!("row {i}: '{field}' is not a number"))
                })?;
                row.push(v);
            }
            let label: usize = record[dim].parse().map_err(|_| {
                Error::InvalidDataset(format!(
                    "row {i}: label '{}' is not a non-negative integer",
                    &record[dim]
                ))
            })?;
            features.push(row);
            labels.push(label);
        }
        Dataset::new(name, features, labels, 0)
    }

    pub fn read_csv_file(path: &Path) -> Result<Self> {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "dataset".into());
        let file = std::fs::File::open(path)?;
        Dataset::read_csv(name, std::io::BufReader::new(file))
    }
}

/// Two interleaving half-circles with Gaussian noise.
pub fn make_moons(n: usize, noise: f64, seed: u64) -> Result<Dataset> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::InvalidDataset(format!(
            "moons needs an even sample count >= 2, got {n}"
        )));
    }
    if !(noise >= 0.0) {
        return Err(Error::InvalidDataset(format!("noise must be >= 0, got {noise}")));
    }
    let m = n / 2;
    let angle = |i: usize| {
        if m == 1 {
            0.0
        } else {
            std::f64::consts::PI * i as f64 / (m - 1) as f64
        }
    };
    let mut features = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..m {
        let th = angle(i);
        features.push(vec![th.cos(), th.sin()]);
        labels.push(0);
    }
    for i in 0..m {
        let th = angle(i);
        features.push(vec![1.0 - th.cos(), 0.5 - th.sin()]);
        labels.push(1);
    }
    apply_noise(&mut features, noise, seed);
    Dataset::new("moons", features, labels, seed)
}

/// Two concentric circles with Gaussian noise.
pub fn make_circles(n: usize, noise: f64, inner_radius_factor: f64, seed: u64) -> Result<Dataset> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::InvalidDataset(format!(
            "circles needs an even sample count >= 2, got {n}"
        )));
    }
    if !(noise >= 0.0) {
        return Err(Error::InvalidDataset(format!("noise must be >= 0, got {noise}")));
    }
    if !(inner_radius_factor > 0.0 && inner_radius_factor < 1.0) {
        return Err(Error::InvalidDataset(format!(
            "inner radius factor must lie in (0, 1), got {inner_radius_factor}"
        )));
    }
    let m = n / 2;
    let mut features = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..m {
        let th = 2.0 * std::f64::consts::PI * i as f64 / m as f64;
        features.push(vec![th.cos(), th.sin()]);
        labels.push(0);
    }
    for i in 0..m {
        let th = 2.0 * std::f64::consts::PI * i as f64 / m as f64;
        features.push(vec![
            inner_radius_factor * th.cos(),
            inner_radius_factor * th.sin(),
        ]);
        labels.push(1);
    }
    apply_noise(&mut features, noise, seed);
    Dataset::new("circles", features, labels, seed)
}

fn apply_noise(features: &mut [Vec<f64>], noise: f64, seed: u64) {
    if noise == 0.0 {
        return;
    }
    let mut rng = rng::seeded(seed);
    for row in features {
        let (gx, gy) = rng::gaussian_pair(&mut rng);
        row[0] += noise * gx;
        row[1] += noise * gy;
    }
}

/// The classical 150-sample iris table, embedded and checksum-pinned.
pub fn load_iris() -> Result<Dataset> {
    let digest = Sha256::digest(IRIS_CSV.as_bytes());
    let actual: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    if actual != IRIS_SHA256 {
        return Err(Error::ChecksumMismatch {
            expected: IRIS_SHA256.into(),
            actual,
        });
    }
    let mut ds = Dataset::read_csv("iris", IRIS_CSV.as_bytes())?;
    ds.generation_seed = 0;
    Ok(ds)
}

/// Seeded shuffle-then-split. In stratified mode the split is done per
/// class, keeping class proportions within one sample of the requested
/// fraction.
pub fn split(
    ds: &Dataset,
    train_fraction: f64,
    seed: u64,
    stratified: bool,
) -> Result<(Dataset, Dataset)> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::InvalidDataset(format!(
            "train fraction must lie in (0, 1), got {train_fraction}"
        )));
    }
    let mut rng = rng::seeded(seed);
    let mut train_idx = Vec::new();
    let mut test_idx = Vec::new();
    if stratified {
        for class in 0..ds.n_classes() {
            let mut idx: Vec<usize> = (0..ds.len()).filter(|&i| ds.labels[i] == class).collect();
            rng::shuffle(&mut rng, &mut idx);
            let n_train = (train_fraction * idx.len() as f64).round() as usize;
            train_idx.extend_from_slice(&idx[..n_train.min(idx.len())]);
            test_idx.extend_from_slice(&idx[n_train.min(idx.len())..]);
        }
    } else {
        let mut idx: Vec<usize> = (0..ds.len()).collect();
        rng::shuffle(&mut rng, &mut idx);
        let n_train = (train_fraction * idx.len() as f64).round() as usize;
        train_idx.extend_from_slice(&idx[..n_train.min(idx.len())]);
        test_idx.extend_from_slice(&idx[n_train.min(idx.len())..]);
    }
    if train_idx.is_empty() || test_idx.is_empty() {
        return Err(Error::InvalidDataset(format!(
            "train fraction {train_fraction} leaves an empty side for {} samples",
            ds.len()
        )));
    }
    let take = |idx: &[usize], suffix: &str| Dataset {
        name: format!("{}-{suffix}", ds.name),
        features: idx.iter().map(|&i| ds.features[i].clone()).collect(),
        labels: idx.iter().map(|&i| ds.labels[i]).collect(),
        generation_seed: ds.generation_seed,
    };
    Ok((take(&train_idx, "train"), take(&test_idx, "test")))
}

/// Per-feature affine map fitted so the training range becomes [0, π].
///
/// The deformed kernels are 2π-periodic in each feature difference;
/// mapping the training range into [0, π] keeps every pairwise delta
/// inside (−π, π) and so out of the aliasing regime. Test data gets the
/// same affine map and may leave [0, π] slightly; it is never clamped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    mins: Vec<f64>,
    maxs: Vec<f64>,
}

impl Scaler {
    pub fn fit(train: &Dataset) -> Result<Self> {
        train.validate()?;
        let dim = train.dim();
        let mut mins = vec![f64::INFINITY; dim];
        let mut maxs = vec![f64::NEG_INFINITY; dim];
        for row in &train.features {
            for (d, &v) in row.iter().enumerate() {
                mins[d] = mins[d].min(v);
                maxs[d] = maxs[d].max(v);
            }
        }
        for d in 0..dim {
            if maxs[d] - mins[d] <= 0.0 {
                return Err(Error::InvalidDataset(format!(
                    "feature {d} is constant ({}); cannot scale",
                    mins[d]
                )));
            }
        }
        Ok(Scaler { mins, maxs })
    }

    pub fn dim(&self) -> usize {
        self.mins.len()
    }

    pub fn transform_point(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: x.len(),
                right: self.dim(),
            });
        }
        Ok(x.iter()
            .enumerate()
            .map(|(d, &v)| (v - self.mins[d]) / (self.maxs[d] - self.mins[d]) * std::f64::consts::PI)
            .collect())
    }

    pub fn inverse_point(&self, y: &[f64]) -> Result<Vec<f64>> {
        if y.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: y.len(),
                right: self.dim(),
            });
        }
        Ok(y.iter()
            .enumerate()
            .map(|(d, &v)| v / std::f64::consts::PI * (self.maxs[d] - self.mins[d]) + self.mins[d])
            .collect())
    }

    pub fn transform(&self, ds: &Dataset) -> Result<Dataset> {
        let features = ds
            .features
            .iter()
            .map(|row| self.transform_point(row))
            .collect::<Result<Vec<_>>>()?;
        Ok(Dataset {
            name: ds.name.clone(),
            features,
            labels: ds.labels.clone(),
            generation_seed: ds.generation_seed,
        })
    }
}
