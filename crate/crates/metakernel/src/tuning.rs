//! Exhaustive grid search over kernel and SVM hyperparameters with
//! held-out evaluation, plus learning curves over seeded resplits.

use std::time::Instant;

use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::datasets::{split, Dataset, Scaler};
use crate::error::{Error, Result};
use crate::kernels::{GramMatrix, KernelFamily, KernelParams};
use crate::svm::{SvmModel, TrainConfig};

/// Score used to select the winning grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Metric {
    Accuracy,
    MacroPrecision,
}

impl Metric {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "accuracy" => Ok(Metric::Accuracy),
            "macro-precision" | "macroprecision" | "precision" => Ok(Metric::MacroPrecision),
            other => Err(Error::InvalidGrid(format!(
                "unknown metric '{other}' (expected accuracy or macro-precision)"
            ))),
        }
    }
}

pub fn accuracy(predicted: &[usize], actual: &[usize]) -> f64 {
    if actual.is_empty() {
        return 0.0;
    }
    let hits = predicted
        .iter()
        .zip(actual)
        .filter(|(p, a)| p == a)
        .count();
    hits as f64 / actual.len() as f64
}

fn per_class_rates(predicted: &[usize], actual: &[usize]) -> Vec<(usize, usize, usize)> {
    let n_classes = actual
        .iter()
        .chain(predicted)
        .copied()
        .max()
        .map_or(0, |m| m + 1);
    // (true positives, predicted positives, actual positives) per class
    let mut rates = vec![(0usize, 0usize, 0usize); n_classes];
    for (&p, &a) in predicted.iter().zip(actual) {
        rates[p].1 += 1;
        rates[a].2 += 1;
        if p == a {
            rates[p].0 += 1;
        }
    }
    rates
}

/// Mean over classes of TP / predicted-positive; classes never predicted
/// contribute zero.
pub fn macro_precision(predicted: &[usize], actual: &[usize]) -> f64 {
    let rates = per_class_rates(predicted, actual);
    if rates.is_empty() {
        return 0.0;
    }
    let sum: f64 = rates
        .iter()
        .map(|&(tp, pp, _)| if pp == 0 { 0.0 } else { tp as f64 / pp as f64 })
        .sum();
    sum / rates.len() as f64
}

/// Mean over classes of TP / actual-positive.
pub fn macro_recall(predicted: &[usize], actual: &[usize]) -> f64 {
    let rates = per_class_rates(predicted, actual);
    if rates.is_empty() {
        return 0.0;
    }
    let sum: f64 = rates
        .iter()
        .map(|&(tp, _, ap)| if ap == 0 { 0.0 } else { tp as f64 / ap as f64 })
        .sum();
    sum / rates.len() as f64
}

/// Value lists for the Cartesian hyperparameter grid of one family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub family: KernelFamily,
    pub alphas: Vec<f64>,
    pub ks: Vec<f64>,
    pub zs: Vec<f64>,
    pub cs: Vec<f64>,
    pub gammas: Vec<f64>,
    pub metric: Metric,
}

impl GridSpec {
    /// The default grids: deformed families sweep the favorable region
    /// α ≤ 2, 0.5 ≤ k ≤ 2, 0.2 ≤ z ≤ 4.6 (k at half-integer steps, from 1.0
    /// for the compact family whose 2k must stay integer); the RBF baseline
    /// sweeps a decade of widths. C spans {0.1, 1, 10, 100} everywhere.
    pub fn default_for(family: KernelFamily) -> Self {
        let cs = vec![0.1, 1.0, 10.0, 100.0];
        match family {
            KernelFamily::AlphaSU2 => GridSpec {
                family,
                alphas: vec![0.1, 0.5, 1.0, 2.0],
                ks: vec![1.0, 1.5, 2.0],
                zs: vec![0.2, 1.0, 2.0, 3.0, 4.6],
                cs,
                gammas: vec![],
                metric: Metric::Accuracy,
            },
            KernelFamily::AlphaSU11 => GridSpec {
                family,
                alphas: vec![0.1, 0.5, 1.0, 2.0],
                ks: vec![0.5, 1.0, 1.5, 2.0],
                zs: vec![0.2, 1.0, 2.0, 3.0, 4.6],
                cs,
                gammas: vec![],
                metric: Metric::Accuracy,
            },
            KernelFamily::Rbf => GridSpec {
                family,
                alphas: vec![],
                ks: vec![],
                zs: vec![],
                cs,
                gammas: vec![0.1, 0.5, 1.0, 2.0, 5.0, 10.0],
                metric: Metric::Accuracy,
            },
        }
    }

    /// Kernel-parameter combinations in canonical (sorted ascending)
    /// lexicographic order. C values are handled per combination.
    fn kernel_combos(&self) -> Result<Vec<std::result::Result<KernelParams, String>>> {
        let sorted = |v: &[f64]| {
            let mut v = v.to_vec();
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            v
        };
        match self.family {
            KernelFamily::Rbf => {
                if self.gammas.is_empty() || self.cs.is_empty() {
                    return Err(Error::InvalidGrid(
                        "rbf grids need non-empty gamma and c lists".into(),
                    ));
                }
                Ok(sorted(&self.gammas)
                    .iter()
                    .map(|&g| KernelParams::rbf(g).map_err(|e| e.to_string()))
                    .collect())
            }
            KernelFamily::AlphaSU2 | KernelFamily::AlphaSU11 => {
                if self.alphas.is_empty() || self.ks.is_empty() || self.zs.is_empty() || self.cs.is_empty()
                {
                    return Err(Error::InvalidGrid(
                        "deformed-family grids need non-empty alpha, k, z, and c lists".into(),
                    ));
                }
                let mut combos = Vec::new();
                for &alpha in &sorted(&self.alphas) {
                    for &k in &sorted(&self.ks) {
                        for &z in &sorted(&self.zs) {
                            let params = match self.family {
                                KernelFamily::AlphaSU2 => KernelParams::su2(alpha, k, z),
                                KernelFamily::AlphaSU11 => KernelParams::su11(alpha, k, z),
                                KernelFamily::Rbf => unreachable!(),
                            };
                            combos.push(params.map_err(|e| e.to_string()));
                        }
                    }
                }
                Ok(combos)
            }
        }
    }
}

/// One evaluated grid cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridCell {
    pub family: KernelFamily,
    pub alpha: f64,
    pub k: f64,
    pub z: f64,
    pub gamma: f64,
    pub c: f64,
    pub train_accuracy: f64,
    pub eval_accuracy: f64,
    pub eval_macro_precision: f64,
    pub eval_macro_recall: f64,
    pub wall_ms: f64,
    pub error: Option<String>,
}

impl GridCell {
    pub fn score(&self, metric: Metric) -> f64 {
        if self.error.is_some() {
            return f64::NEG_INFINITY;
        }
        match metric {
            Metric::Accuracy => self.eval_accuracy,
            Metric::MacroPrecision => self.eval_macro_precision,
        }
    }

    /// Canonical tuple for the deterministic tie rule.
    fn key(&self) -> [f64; 5] {
        [self.alpha, self.k, self.z, self.gamma, self.c]
    }

    pub fn params(&self) -> Result<KernelParams> {
        match self.family {
            KernelFamily::AlphaSU2 => KernelParams::su2(self.alpha, self.k, self.z),
            KernelFamily::AlphaSU11 => KernelParams::su11(self.alpha, self.k, self.z),
            KernelFamily::Rbf => KernelParams::rbf(self.gamma),
        }
    }
}

/// Grid-search outcome: the winning cell plus the full table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuneResult {
    pub best: GridCell,
    pub metric: Metric,
    pub table: Vec<GridCell>,
}

/// Deterministic summary of a search (no wall times), for JSON persistence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuneSummary {
    pub family: KernelFamily,
    pub metric: Metric,
    pub n_cells: usize,
    pub n_failed: usize,
    pub best_alpha: f64,
    pub best_k: f64,
    pub best_z: f64,
    pub best_gamma: f64,
    pub best_c: f64,
    pub best_train_accuracy: f64,
    pub best_eval_accuracy: f64,
    pub best_eval_macro_precision: f64,
    pub best_eval_macro_recall: f64,
}

impl TuneResult {
    pub fn summary(&self) -> TuneSummary {
        TuneSummary {
            family: self.best.family,
            metric: self.metric,
            n_cells: self.table.len(),
            n_failed: self.table.iter().filter(|c| c.error.is_some()).count(),
            best_alpha: self.best.alpha,
            best_k: self.best.k,
            best_z: self.best.z,
            best_gamma: self.best.gamma,
            best_c: self.best.c,
            best_train_accuracy: self.best.train_accuracy,
            best_eval_accuracy: self.best.eval_accuracy,
            best_eval_macro_precision: self.best.eval_macro_precision,
            best_eval_macro_recall: self.best.eval_macro_recall,
        }
    }

    /// One row per cell, scores only: byte-identical across reruns.
    pub fn write_table_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record([
            "family",
            "alpha",
            "k",
            "z",
            "gamma",
            "c",
            "train_accuracy",
            "eval_accuracy",
            "eval_macro_precision",
            "eval_macro_recall",
            "error",
        ])?;
        for cell in &self.table {
            wtr.write_record([
                cell.family.name().to_string(),
                cell.alpha.to_string(),
                cell.k.to_string(),
                cell.z.to_string(),
                cell.gamma.to_string(),
                cell.c.to_string(),
                cell.train_accuracy.to_string(),
                cell.eval_accuracy.to_string(),
                cell.eval_macro_precision.to_string(),
                cell.eval_macro_recall.to_string(),
                cell.error.clone().unwrap_or_default(),
            ])?;
        }
        wtr.flush()?;
        Ok(())
    }

    /// Per-cell wall times; informational, not expected to reproduce.
    pub fn write_timings_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["family", "alpha", "k", "z", "gamma", "c", "wall_ms"])?;
        for cell in &self.table {
            wtr.write_record([
                cell.family.name().to_string(),
                cell.alpha.to_string(),
                cell.k.to_string(),
                cell.z.to_string(),
                cell.gamma.to_string(),
                cell.c.to_string(),
                cell.wall_ms.to_string(),
            ])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

/// Per-combination kernel matrices: the training Gram plus the eval×train
/// cross matrix (real parts), shared across the C sweep.
struct ComboMatrices {
    gram: GramMatrix,
    cross: Vec<f64>,
    n_train: usize,
}

impl ComboMatrices {
    fn build(train: &Dataset, eval: &Dataset, params: &KernelParams) -> Result<Self> {
        let gram = GramMatrix::from_points(&train.features, params)?;
        let evaluator = crate::kernels::KernelEvaluator::new(params);
        let n_train = train.len();
        let mut cross = Vec::with_capacity(eval.len() * n_train);
        for e in &eval.features {
            for t in &train.features {
                cross.push(evaluator.eval(e, t).re);
            }
        }
        Ok(ComboMatrices {
            gram,
            cross,
            n_train,
        })
    }
}

/// Train every one-vs-rest problem for one C value and predict both sides
/// straight from the precomputed matrices.
fn predictions_for_c(
    train: &Dataset,
    n_eval: usize,
    matrices: &ComboMatrices,
    config: &TrainConfig,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let n_classes = train.n_classes();
    let n = train.len();
    // decision values per class; for two classes one problem suffices
    let solve_classes: Vec<usize> = if n_classes == 2 { vec![1] } else { (0..n_classes).collect() };
    let mut train_decisions = vec![vec![0.0f64; n_classes]; n];
    let mut eval_decisions = vec![vec![0.0f64; n_classes]; n_eval];
    for &class in &solve_classes {
        let ys: Vec<f64> = train
            .labels
            .iter()
            .map(|&l| if l == class { 1.0 } else { -1.0 })
            .collect();
        let (binary, support_indices) =
            crate::svm::train_binary_indexed(&train.features, &matrices.gram, &ys, config)?;
        // dual weights indexed over the full training set
        let mut weights = vec![0.0f64; n];
        for (&idx, &coef) in support_indices.iter().zip(&binary.dual_coefs) {
            weights[idx] = coef;
        }
        for i in 0..n {
            let row = matrices.gram.real_row(i);
            let d: f64 = weights
                .iter()
                .zip(row)
                .map(|(w, k)| w * k)
                .sum::<f64>()
                + binary.bias;
            train_decisions[i][class] = d;
            if n_classes == 2 {
                train_decisions[i][0] = -d;
            }
        }
        for e in 0..n_eval {
            let row = &matrices.cross[e * matrices.n_train..(e + 1) * matrices.n_train];
            let d: f64 = weights
                .iter()
                .zip(row)
                .map(|(w, k)| w * k)
                .sum::<f64>()
                + binary.bias;
            eval_decisions[e][class] = d;
            if n_classes == 2 {
                eval_decisions[e][0] = -d;
            }
        }
    }
    let argmax = |values: &[f64]| -> usize {
        let mut best = 0usize;
        for (idx, &v) in values.iter().enumerate() {
            if v > values[best] {
                best = idx;
            }
        }
        best
    };
    Ok((
        train_decisions.iter().map(|v| argmax(v)).collect(),
        eval_decisions.iter().map(|v| argmax(v)).collect(),
    ))
}

/// Train on already-scaled data and score both sides. The kernel matrices
/// are built once per kernel-parameter combination and shared across the
/// C sweep.
fn evaluate_combo(
    train: &Dataset,
    eval: &Dataset,
    params: &KernelParams,
    cs: &[f64],
    base: &TrainConfig,
) -> Vec<GridCell> {
    let mut cells = Vec::with_capacity(cs.len());
    let matrices_started = Instant::now();
    let matrices = ComboMatrices::build(train, eval, params);
    let matrices_ms = matrices_started.elapsed().as_secs_f64() * 1e3;
    for &c in cs {
        let cell_start = Instant::now();
        let config = TrainConfig { c, ..*base };
        let outcome = matrices
            .as_ref()
            .map_err(|e| e.to_string())
            .and_then(|matrices| {
                predictions_for_c(train, eval.len(), matrices, &config).map_err(|e| e.to_string())
            });
        // the shared matrix construction time is charged to every C cell
        let wall_ms = matrices_ms + cell_start.elapsed().as_secs_f64() * 1e3;
        let mut cell = GridCell {
            family: params.family(),
            alpha: params.alpha(),
            k: params.k(),
            z: params.z(),
            gamma: params.gamma(),
            c,
            train_accuracy: f64::NAN,
            eval_accuracy: f64::NAN,
            eval_macro_precision: f64::NAN,
            eval_macro_recall: f64::NAN,
            wall_ms,
            error: None,
        };
        match outcome {
            Ok((train_pred, eval_pred)) => {
                cell.train_accuracy = accuracy(&train_pred, &train.labels);
                cell.eval_accuracy = accuracy(&eval_pred, &eval.labels);
                cell.eval_macro_precision = macro_precision(&eval_pred, &eval.labels);
                cell.eval_macro_recall = macro_recall(&eval_pred, &eval.labels);
            }
            Err(e) => cell.error = Some(e),
        }
        cells.push(cell);
    }
    cells
}

/// Exhaustive search over the grid. Cells are evaluated independently
/// (in parallel when the `parallel` feature is on, with identical
/// results); failed cells are recorded with −∞ score and the search
/// continues. Ties on the selection metric go to the lexicographically
/// smallest (alpha, k, z, gamma, c) tuple regardless of enumeration order.
pub fn grid_search(
    train: &Dataset,
    eval: &Dataset,
    spec: &GridSpec,
    base: &TrainConfig,
) -> Result<TuneResult> {
    train.validate()?;
    eval.validate()?;
    base.validate()?;
    if train.dim() != eval.dim() {
        return Err(Error::DimensionMismatch {
            left: train.dim(),
            right: eval.dim(),
        });
    }
    let combos = spec.kernel_combos()?;
    let mut cs = spec.cs.clone();
    cs.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let run = |combo: &std::result::Result<KernelParams, String>| -> Vec<GridCell> {
        match combo {
            Ok(params) => evaluate_combo(train, eval, params, &cs, base),
            Err(msg) => cs
                .iter()
                .map(|&c| GridCell {
                    family: spec.family,
                    alpha: f64::NAN,
                    k: f64::NAN,
                    z: f64::NAN,
                    gamma: f64::NAN,
                    c,
                    train_accuracy: f64::NAN,
                    eval_accuracy: f64::NAN,
                    eval_macro_precision: f64::NAN,
                    eval_macro_recall: f64::NAN,
                    wall_ms: 0.0,
                    error: Some(msg.clone()),
                })
                .collect(),
        }
    };

    #[cfg(feature = "parallel")]
    let per_combo: Vec<Vec<GridCell>> = combos.par_iter().map(run).collect();
    #[cfg(not(feature = "parallel"))]
    let per_combo: Vec<Vec<GridCell>> = combos.iter().map(run).collect();

    let table: Vec<GridCell> = per_combo.into_iter().flatten().collect();
    let best = table
        .iter()
        .filter(|cell| cell.error.is_none())
        .max_by(|a, b| {
            let (sa, sb) = (a.score(spec.metric), b.score(spec.metric));
            sa.partial_cmp(&sb)
                .unwrap()
                // on equal score, prefer the lexicographically smaller tuple
                .then_with(|| b.key().partial_cmp(&a.key()).unwrap())
        })
        .cloned()
        .ok_or_else(|| Error::InvalidGrid("every grid cell failed".into()))?;

    Ok(TuneResult {
        best,
        metric: spec.metric,
        table,
    })
}

/// Fit the in-range scaler on the training side, train, and score both
/// sides. This is the single path every protocol evaluation goes through.
pub fn fit_and_score(
    train: &Dataset,
    test: &Dataset,
    params: &KernelParams,
    config: &TrainConfig,
) -> Result<(SvmModel, f64, f64)> {
    let scaler = Scaler::fit(train)?;
    let train_scaled = scaler.transform(train)?;
    let test_scaled = scaler.transform(test)?;
    let model = crate::svm::train_multiclass(
        &train_scaled.features,
        &train_scaled.labels,
        params,
        config,
    )?;
    let train_acc = accuracy(&model.predict_batch(&train_scaled.features)?, &train.labels);
    let test_acc = accuracy(&model.predict_batch(&test_scaled.features)?, &test.labels);
    Ok((model.with_scaler(scaler), train_acc, test_acc))
}

/// One learning-curve row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub fraction: f64,
    pub train_mean: f64,
    pub train_std: f64,
    pub test_mean: f64,
    pub test_std: f64,
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Stratified subsample of the training side; every class must survive.
fn take_fraction(ds: &Dataset, fraction: f64, seed: u64) -> Result<Dataset> {
    if fraction >= 1.0 {
        return Ok(ds.clone());
    }
    let mut rng = crate::rng::seeded(seed);
    let mut keep = Vec::new();
    for class in 0..ds.n_classes() {
        let mut idx: Vec<usize> = (0..ds.len()).filter(|&i| ds.labels[i] == class).collect();
        crate::rng::shuffle(&mut rng, &mut idx);
        let n = (fraction * idx.len() as f64).round().max(0.0) as usize;
        if n == 0 {
            return Err(Error::InvalidDataset(format!(
                "fraction {fraction} leaves class {class} empty"
            )));
        }
        keep.extend_from_slice(&idx[..n]);
    }
    keep.sort_unstable();
    Ok(Dataset {
        name: ds.name.clone(),
        features: keep.iter().map(|&i| ds.features[i].clone()).collect(),
        labels: keep.iter().map(|&i| ds.labels[i]).collect(),
        generation_seed: ds.generation_seed,
    })
}

/// Learning curve: for each fraction, mean ± std of train/test accuracy
/// over `repeats` seeded 70/30 resplits.
pub fn learning_curve(
    ds: &Dataset,
    params: &KernelParams,
    config: &TrainConfig,
    fractions: &[f64],
    repeats: usize,
    seed: u64,
) -> Result<Vec<CurvePoint>> {
    if repeats == 0 {
        return Err(Error::InvalidGrid("repeats must be >= 1".into()));
    }
    if fractions.is_empty() || fractions.iter().any(|&f| !(f > 0.0 && f <= 1.0)) {
        return Err(Error::InvalidGrid(
            "fractions must be a non-empty subset of (0, 1]".into(),
        ));
    }

    let jobs: Vec<(usize, usize)> = (0..fractions.len())
        .flat_map(|fi| (0..repeats).map(move |r| (fi, r)))
        .collect();
    let run = |&(fi, r): &(usize, usize)| -> Result<(usize, f64, f64)> {
        let fraction = fractions[fi];
        let resplit_seed = seed.wrapping_add(r as u64);
        let (train, test) = split(ds, 0.7, resplit_seed, true)?;
        let sub = take_fraction(&train, fraction, resplit_seed.wrapping_add(0x9e37_79b9))?;
        let (_, train_acc, test_acc) = fit_and_score(&sub, &test, params, config)?;
        Ok((fi, train_acc, test_acc))
    };

    #[cfg(feature = "parallel")]
    let outcomes: Vec<Result<(usize, f64, f64)>> = jobs.par_iter().map(run).collect();
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<Result<(usize, f64, f64)>> = jobs.iter().map(run).collect();

    let mut train_accs = vec![Vec::new(); fractions.len()];
    let mut test_accs = vec![Vec::new(); fractions.len()];
    for outcome in outcomes {
        let (fi, train_acc, test_acc) = outcome?;
        train_accs[fi].push(train_acc);
        test_accs[fi].push(test_acc);
    }

    Ok(fractions
        .iter()
        .enumerate()
        .map(|(fi, &fraction)| {
            let (train_mean, train_std) = mean_std(&train_accs[fi]);
            let (test_mean, test_std) = mean_std(&test_accs[fi]);
            CurvePoint {
                fraction,
                train_mean,
                train_std,
                test_mean,
                test_std,
            }
        })
        .collect())
}
