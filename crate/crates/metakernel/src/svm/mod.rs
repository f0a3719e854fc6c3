//! Soft-margin SVM training on the real projection of the complex kernel
//! Gram matrix, with one-vs-rest multiclass, an independent KKT verifier,
//! and versioned JSON model serialization.

mod smo;

use serde::{Deserialize, Serialize};

use crate::datasets::Scaler;
use crate::error::{Error, Result};
use crate::kernels::{kernel, GramMatrix, KernelParams};

/// Version tag written into serialized models.
pub const MODEL_FORMAT_VERSION: u32 = 1;

/// Solver configuration. `max_passes` caps the number of SMO pair updates;
/// `seed` fixes the order of the solver's second-choice scans, making
/// training deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub c: f64,
    pub tolerance: f64,
    pub max_passes: usize,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            c: 1.0,
            tolerance: 1e-3,
            max_passes: 100_000,
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0) || !self.c.is_finite() {
            return Err(Error::InvalidConfig(format!("c must be > 0, got {}", self.c)));
        }
        if !(self.tolerance > 0.0) || !self.tolerance.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be > 0, got {}",
                self.tolerance
            )));
        }
        if self.max_passes == 0 {
            return Err(Error::InvalidConfig("max_passes must be >= 1".into()));
        }
        Ok(())
    }
}

/// One trained binary problem: the class against the rest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinarySvm {
    pub positive_class: usize,
    pub support_vectors: Vec<Vec<f64>>,
    /// α_i·y_i for each support vector.
    pub dual_coefs: Vec<f64>,
    pub bias: f64,
    pub dual_objective: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl BinarySvm {
    /// Raw decision value Σ_s dual_s·Re K(sv_s, x) + bias.
    pub fn decision(&self, x: &[f64], params: &KernelParams) -> Result<f64> {
        let mut sum = self.bias;
        for (sv, coef) in self.support_vectors.iter().zip(&self.dual_coefs) {
            sum += coef * kernel(sv, x, params)?.re;
        }
        Ok(sum)
    }
}

/// A trained (possibly multiclass) model.
///
/// When a scaler is attached, `predict` and `decision_values` expect raw
/// (unscaled) inputs and apply the transform internally; training always
/// works on already-transformed features.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmModel {
    pub format_version: u32,
    pub kernel_params: KernelParams,
    pub config: TrainConfig,
    pub classes: Vec<usize>,
    pub binaries: Vec<BinarySvm>,
    pub scaler: Option<Scaler>,
}

impl SvmModel {
    pub fn dim(&self) -> usize {
        self.binaries
            .first()
            .and_then(|b| b.support_vectors.first())
            .map_or(0, Vec::len)
    }

    fn scaled(&self, x: &[f64]) -> Result<Vec<f64>> {
        match &self.scaler {
            Some(s) => s.transform_point(x),
            None => Ok(x.to_vec()),
        }
    }

    /// One decision value per class, in `classes` order.
    pub fn decision_values(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: x.len(),
                right: self.dim(),
            });
        }
        let xs = self.scaled(x)?;
        self.binaries
            .iter()
            .map(|b| b.decision(&xs, &self.kernel_params))
            .collect()
    }

    /// Argmax of the decision values; ties go to the lowest class index.
    pub fn predict(&self, x: &[f64]) -> Result<usize> {
        let values = self.decision_values(x)?;
        let mut best = 0usize;
        for (idx, &v) in values.iter().enumerate() {
            if v > values[best] {
                best = idx;
            }
        }
        Ok(self.classes[best])
    }

    pub fn predict_batch(&self, xs: &[Vec<f64>]) -> Result<Vec<usize>> {
        xs.iter().map(|x| self.predict(x)).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let model: SvmModel = serde_json::from_str(text)?;
        model.validate()?;
        Ok(model)
    }

    pub fn write_json_file(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn read_json_file(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.format_version != MODEL_FORMAT_VERSION {
            return Err(Error::ModelMismatch(format!(
                "unsupported model format version {} (expected {})",
                self.format_version, MODEL_FORMAT_VERSION
            )));
        }
        self.kernel_params.validate()?;
        self.config.validate()?;
        if self.binaries.len() != self.classes.len() || self.binaries.is_empty() {
            return Err(Error::ModelMismatch(
                "one binary problem per class is required".into(),
            ));
        }
        let dim = self.dim();
        for b in &self.binaries {
            if b.support_vectors.is_empty() {
                return Err(Error::ModelMismatch("empty support set".into()));
            }
            if b.support_vectors.len() != b.dual_coefs.len() {
                return Err(Error::ModelMismatch(
                    "support vectors and dual coefficients disagree in length".into(),
                ));
            }
            if b.support_vectors.iter().any(|sv| sv.len() != dim) {
                return Err(Error::ModelMismatch("inconsistent support vector dimensions".into()));
            }
        }
        if let Some(s) = &self.scaler {
            if s.dim() != dim {
                return Err(Error::ModelMismatch(format!(
                    "scaler dimension {} does not match support vectors ({dim})",
                    s.dim()
                )));
            }
        }
        Ok(())
    }

    pub fn with_scaler(mut self, scaler: Scaler) -> Self {
        self.scaler = Some(scaler);
        self
    }
}

fn check_binary_labels(ys: &[f64]) -> Result<()> {
    let mut pos = 0usize;
    let mut neg = 0usize;
    for &y in ys {
        if y == 1.0 {
            pos += 1;
        } else if y == -1.0 {
            neg += 1;
        } else {
            return Err(Error::InvalidTrainingData(format!(
                "binary labels must be exactly +1 or -1, got {y}"
            )));
        }
    }
    if pos == 0 || neg == 0 {
        return Err(Error::InvalidTrainingData(
            "both classes must be present".into(),
        ));
    }
    Ok(())
}

/// Train one binary problem on a precomputed Gram matrix.
pub fn train_binary_precomputed(
    features: &[Vec<f64>],
    gram: &GramMatrix,
    ys: &[f64],
    config: &TrainConfig,
) -> Result<BinarySvm> {
    train_binary_indexed(features, gram, ys, config).map(|(binary, _)| binary)
}

/// As [`train_binary_precomputed`], additionally returning the training-set
/// indices of the support vectors (for callers that score against
/// precomputed kernel rows).
pub(crate) fn train_binary_indexed(
    features: &[Vec<f64>],
    gram: &GramMatrix,
    ys: &[f64],
    config: &TrainConfig,
) -> Result<(BinarySvm, Vec<usize>)> {
    config.validate()?;
    if features.len() < 2 {
        return Err(Error::InvalidTrainingData(
            "at least two samples are required".into(),
        ));
    }
    if gram.size() != ys.len() || gram.size() != features.len() {
        return Err(Error::DimensionMismatch {
            left: gram.size(),
            right: ys.len(),
        });
    }
    check_binary_labels(ys)?;
    if gram.real_entries().iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidTrainingData(
            "gram matrix contains non-finite entries".into(),
        ));
    }

    let solution = smo::solve(
        gram,
        ys,
        config.c,
        config.tolerance,
        config.max_passes,
        config.seed,
    );
    let objective = dual_objective(gram, ys, &solution.alpha);

    let sv_cut = 1e-12 * config.c;
    let mut support_vectors = Vec::new();
    let mut dual_coefs = Vec::new();
    let mut support_indices = Vec::new();
    for (idx, &a) in solution.alpha.iter().enumerate() {
        if a > sv_cut {
            support_vectors.push(features[idx].clone());
            dual_coefs.push(a * ys[idx]);
            support_indices.push(idx);
        }
    }
    assert!(
        !support_vectors.is_empty(),
        "a trained model on two-class data always has support vectors"
    );

    Ok((
        BinarySvm {
            positive_class: 1,
            support_vectors,
            dual_coefs,
            bias: solution.bias,
            dual_objective: objective,
            iterations: solution.iterations,
            converged: solution.converged,
        },
        support_indices,
    ))
}

/// Train one binary problem from features and ±1 labels.
pub fn train_binary(
    features: &[Vec<f64>],
    ys: &[f64],
    params: &KernelParams,
    config: &TrainConfig,
) -> Result<BinarySvm> {
    params.validate()?;
    let gram = GramMatrix::from_points(features, params)?;
    train_binary_precomputed(features, &gram, ys, config)
}

/// One-vs-rest training. With exactly two classes a single binary problem
/// is solved and the complementary model is its negation, so the argmax
/// rule coincides exactly with the binary sign rule.
pub fn train_multiclass(
    features: &[Vec<f64>],
    labels: &[usize],
    params: &KernelParams,
    config: &TrainConfig,
) -> Result<SvmModel> {
    params.validate()?;
    config.validate()?;
    if features.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            left: features.len(),
            right: labels.len(),
        });
    }
    let n_classes = labels.iter().copied().max().map_or(0, |m| m + 1);
    if n_classes < 2 {
        return Err(Error::InvalidTrainingData(
            "at least two classes are required".into(),
        ));
    }
    let mut counts = vec![0usize; n_classes];
    for &l in labels {
        counts[l] += 1;
    }
    if let Some(missing) = counts.iter().position(|&c| c == 0) {
        return Err(Error::InvalidTrainingData(format!(
            "class {missing} has no samples"
        )));
    }

    let gram = GramMatrix::from_points(features, params)?;
    let classes: Vec<usize> = (0..n_classes).collect();

    let binaries = if n_classes == 2 {
        let ys: Vec<f64> = labels.iter().map(|&l| if l == 1 { 1.0 } else { -1.0 }).collect();
        let positive = BinarySvm {
            positive_class: 1,
            ..train_binary_precomputed(features, &gram, &ys, config)?
        };
        let negative = BinarySvm {
            positive_class: 0,
            support_vectors: positive.support_vectors.clone(),
            dual_coefs: positive.dual_coefs.iter().map(|c| -c).collect(),
            bias: -positive.bias,
            dual_objective: positive.dual_objective,
            iterations: positive.iterations,
            converged: positive.converged,
        };
        vec![negative, positive]
    } else {
        classes
            .iter()
            .map(|&class| {
                let ys: Vec<f64> = labels
                    .iter()
                    .map(|&l| if l == class { 1.0 } else { -1.0 })
                    .collect();
                Ok(BinarySvm {
                    positive_class: class,
                    ..train_binary_precomputed(features, &gram, &ys, config)?
                })
            })
            .collect::<Result<Vec<_>>>()?
    };

    Ok(SvmModel {
        format_version: MODEL_FORMAT_VERSION,
        kernel_params: *params,
        config: *config,
        classes,
        binaries,
        scaler: None,
    })
}

/// Dual objective W(α) = Σα_i − ½ ΣΣ α_i α_j y_i y_j K_ij.
pub fn dual_objective(gram: &GramMatrix, ys: &[f64], alpha: &[f64]) -> f64 {
    let n = ys.len();
    let mut quad = 0.0;
    for i in 0..n {
        if alpha[i] == 0.0 {
            continue;
        }
        let row = gram.real_row(i);
        for j in 0..n {
            quad += alpha[i] * alpha[j] * ys[i] * ys[j] * row[j];
        }
    }
    alpha.iter().sum::<f64>() - 0.5 * quad
}

/// Result of the independent optimality check.
#[derive(Debug, Clone, Copy)]
pub struct KktReport {
    /// Worst violation of the margin conditions across samples.
    pub max_violation: f64,
    /// |Σ α_i y_i|
    pub equality_residual: f64,
    pub ok: bool,
}

/// Check the KKT conditions of a dual solution directly from the Gram
/// matrix, labels, and raw dual variables. This deliberately shares no
/// state with the solver: margins are recomputed from scratch.
///
/// Conditions, with f_i = Σ_j α_j y_j K_ij + bias:
/// α_i = 0 ⇒ y_i f_i ≥ 1 − tol; α_i = C ⇒ y_i f_i ≤ 1 + tol;
/// 0 < α_i < C ⇒ |y_i f_i − 1| ≤ tol.
pub fn verify_kkt(
    gram: &GramMatrix,
    ys: &[f64],
    alpha: &[f64],
    bias: f64,
    c: f64,
    tolerance: f64,
) -> KktReport {
    let n = ys.len();
    let boundary = 1e-9 * c;
    let mut max_violation: f64 = 0.0;
    for i in 0..n {
        let row = gram.real_row(i);
        let f: f64 = (0..n).map(|j| alpha[j] * ys[j] * row[j]).sum::<f64>() + bias;
        let margin = ys[i] * f;
        let violation = if alpha[i] <= boundary {
            (1.0 - margin).max(0.0)
        } else if alpha[i] >= c - boundary {
            (margin - 1.0).max(0.0)
        } else {
            (margin - 1.0).abs()
        };
        max_violation = max_violation.max(violation);
    }
    let equality_residual = ys
        .iter()
        .zip(alpha)
        .map(|(y, a)| y * a)
        .sum::<f64>()
        .abs();
    KktReport {
        max_violation,
        equality_residual,
        ok: max_violation <= tolerance && equality_residual <= 1e-8,
    }
}

/// Axis-aligned bounds for decision grids over 2-d feature space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridBounds {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

/// Raw decision values on a row-major (ny rows × nx columns) grid, for
/// contour plots. Binary models emit the signed decision value of the
/// positive class; models with three or more classes emit the predicted
/// class index. A 1×1 grid samples the bounds' center.
pub fn decision_grid(
    model: &SvmModel,
    bounds: GridBounds,
    resolution: (usize, usize),
) -> Result<Vec<f64>> {
    if model.dim() != 2 {
        return Err(Error::ModelMismatch(format!(
            "decision grids need a 2-d feature space, model has {}",
            model.dim()
        )));
    }
    let (nx, ny) = resolution;
    if nx == 0 || ny == 0 {
        return Err(Error::InvalidParams("grid resolution must be >= 1".into()));
    }
    if !(bounds.x_max > bounds.x_min) || !(bounds.y_max > bounds.y_min) {
        return Err(Error::InvalidParams(format!("invalid grid bounds {bounds:?}")));
    }
    let coord = |lo: f64, hi: f64, n: usize, idx: usize| {
        if n == 1 {
            0.5 * (lo + hi)
        } else {
            lo + (hi - lo) * idx as f64 / (n - 1) as f64
        }
    };
    let binary = model.classes.len() == 2;
    let mut values = Vec::with_capacity(nx * ny);
    for iy in 0..ny {
        let y = coord(bounds.y_min, bounds.y_max, ny, iy);
        for ix in 0..nx {
            let x = coord(bounds.x_min, bounds.x_max, nx, ix);
            let point = [x, y];
            if binary {
                let d = model.decision_values(&point)?;
                values.push(d[1]);
            } else {
                values.push(model.predict(&point)? as f64);
            }
        }
    }
    Ok(values)
}
