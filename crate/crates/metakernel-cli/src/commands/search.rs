//! `grid-search` and `experiment`.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use metakernel::datasets::{split, Dataset, Scaler};
use metakernel::svm::TrainConfig;
use metakernel::tuning::{
    grid_search, learning_curve, fit_and_score, CurvePoint, GridSpec, Metric, TuneResult,
    TuneSummary,
};
use metakernel::{Error, KernelFamily, Result};

use super::{resolve_dataset, write_json};

pub(crate) struct PreparedSplit {
    pub train_raw: Dataset,
    pub eval_raw: Dataset,
    pub train_scaled: Dataset,
    pub eval_scaled: Dataset,
}

pub(crate) fn prepare_split(ds: &Dataset, train_fraction: f64, seed: u64) -> Result<PreparedSplit> {
    let (train_raw, eval_raw) = split(ds, train_fraction, seed, true)?;
    let scaler = Scaler::fit(&train_raw)?;
    Ok(PreparedSplit {
        train_scaled: scaler.transform(&train_raw)?,
        eval_scaled: scaler.transform(&eval_raw)?,
        train_raw,
        eval_raw,
    })
}

fn spec_with_overrides(
    family: KernelFamily,
    metric: Metric,
    alphas: &[f64],
    ks: &[f64],
    zs: &[f64],
    cs: &[f64],
    gammas: &[f64],
) -> GridSpec {
    let mut spec = GridSpec::default_for(family);
    spec.metric = metric;
    if !alphas.is_empty() {
        spec.alphas = alphas.to_vec();
    }
    if !ks.is_empty() {
        spec.ks = ks.to_vec();
    }
    if !zs.is_empty() {
        spec.zs = zs.to_vec();
    }
    if !cs.is_empty() {
        spec.cs = cs.to_vec();
    }
    if !gammas.is_empty() {
        spec.gammas = gammas.to_vec();
    }
    spec
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn grid_search_cmd(
    out_dir: &Path,
    dataset: &str,
    n: usize,
    noise: f64,
    inner_radius_factor: f64,
    family: &str,
    metric: &str,
    alphas: &[f64],
    ks: &[f64],
    zs: &[f64],
    cs: &[f64],
    gammas: &[f64],
    train_fraction: f64,
    seed: u64,
    tolerance: f64,
    max_passes: usize,
) -> Result<Vec<(String, bool)>> {
    let ds = resolve_dataset(dataset, n, noise, inner_radius_factor, seed)?;
    let family = KernelFamily::parse(family)?;
    let metric = Metric::parse(metric)?;
    let prepared = prepare_split(&ds, train_fraction, seed)?;
    let spec = spec_with_overrides(family, metric, alphas, ks, zs, cs, gammas);
    let config = TrainConfig {
        tolerance,
        max_passes,
        seed,
        ..TrainConfig::default()
    };
    let result = grid_search(&prepared.train_scaled, &prepared.eval_scaled, &spec, &config)?;
    write_tune_artifacts(out_dir, family, &result)?;
    let summary = result.summary();
    println!(
        "{family}: best eval accuracy {:.4} at alpha={} k={} z={} gamma={} c={} ({} cells, {} failed)",
        summary.best_eval_accuracy,
        summary.best_alpha,
        summary.best_k,
        summary.best_z,
        summary.best_gamma,
        summary.best_c,
        summary.n_cells,
        summary.n_failed
    );
    write_json(out_dir, &format!("summary_{family}.json"), &summary)?;
    Ok(vec![
        (format!("grid_{family}.csv"), true),
        (format!("timings_{family}.csv"), false),
        (format!("summary_{family}.json"), true),
    ])
}

fn write_tune_artifacts(out_dir: &Path, family: KernelFamily, result: &TuneResult) -> Result<()> {
    let mut table = Vec::new();
    result.write_table_csv(&mut table)?;
    std::fs::write(out_dir.join(format!("grid_{family}.csv")), table)?;
    let mut timings = Vec::new();
    result.write_timings_csv(&mut timings)?;
    std::fs::write(out_dir.join(format!("timings_{family}.csv")), timings)?;
    Ok(())
}

fn write_curve_csv(out_dir: &Path, name: &str, curve: &[CurvePoint]) -> Result<()> {
    let mut csv = Vec::new();
    writeln!(csv, "fraction,train_mean,train_std,test_mean,test_std").map_err(Error::from)?;
    for p in curve {
        writeln!(
            csv,
            "{},{},{},{},{}",
            p.fraction, p.train_mean, p.train_std, p.test_mean, p.test_std
        )
        .map_err(Error::from)?;
    }
    std::fs::write(out_dir.join(name), csv)?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub family: KernelFamily,
    pub best: TuneSummary,
    pub final_train_accuracy: f64,
    pub final_test_accuracy: f64,
    /// |final test accuracy − RBF final test accuracy|, when RBF ran.
    pub abs_accuracy_minus_rbf: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub dataset: String,
    pub n: usize,
    pub noise: f64,
    pub train_fraction: f64,
    pub seed: u64,
    pub families: Vec<FamilyReport>,
}

/// Full protocol for one dataset: per family, grid search on a held-out
/// split, final fit with the winning cell, and a learning curve; plus a
/// consolidated report with the gap to the RBF baseline.
#[allow(clippy::too_many_arguments)]
pub(crate) fn experiment_cmd(
    out_dir: &Path,
    dataset: &str,
    n: usize,
    noise: f64,
    inner_radius_factor: f64,
    families: &[String],
    metric: &str,
    train_fraction: f64,
    seed: u64,
    tolerance: f64,
    max_passes: usize,
    lc_fractions: &[f64],
    lc_repeats: usize,
) -> Result<Vec<(String, bool)>> {
    let ds = resolve_dataset(dataset, n, noise, inner_radius_factor, seed)?;
    let metric = Metric::parse(metric)?;
    let families: Vec<KernelFamily> = families
        .iter()
        .map(|f| KernelFamily::parse(f))
        .collect::<Result<_>>()?;
    if families.is_empty() {
        return Err(Error::InvalidParams("at least one family is required".into()));
    }
    let prepared = prepare_split(&ds, train_fraction, seed)?;
    let config = TrainConfig {
        tolerance,
        max_passes,
        seed,
        ..TrainConfig::default()
    };

    let mut artifacts: Vec<(String, bool)> = Vec::new();
    let mut reports: Vec<FamilyReport> = Vec::new();
    for &family in &families {
        let spec = spec_with_overrides(family, metric, &[], &[], &[], &[], &[]);
        let result = grid_search(&prepared.train_scaled, &prepared.eval_scaled, &spec, &config)?;
        write_tune_artifacts(out_dir, family, &result)?;
        artifacts.push((format!("grid_{family}.csv"), true));
        artifacts.push((format!("timings_{family}.csv"), false));

        let best_params = result.best.params()?;
        let best_config = TrainConfig {
            c: result.best.c,
            ..config
        };
        let (model, final_train_accuracy, final_test_accuracy) = fit_and_score(
            &prepared.train_raw,
            &prepared.eval_raw,
            &best_params,
            &best_config,
        )?;
        model.write_json_file(&out_dir.join(format!("model_{family}.json")))?;
        artifacts.push((format!("model_{family}.json"), true));

        let curve = learning_curve(
            &ds,
            &best_params,
            &best_config,
            lc_fractions,
            lc_repeats,
            seed.wrapping_add(1),
        )?;
        write_curve_csv(out_dir, &format!("learning_curve_{family}.csv"), &curve)?;
        artifacts.push((format!("learning_curve_{family}.csv"), true));

        println!(
            "{family}: grid best eval {:.4}; final train {:.4}, test {:.4} \
             (alpha={} k={} z={} gamma={} c={})",
            result.best.eval_accuracy,
            final_train_accuracy,
            final_test_accuracy,
            result.best.alpha,
            result.best.k,
            result.best.z,
            result.best.gamma,
            result.best.c
        );
        reports.push(FamilyReport {
            family,
            best: result.summary(),
            final_train_accuracy,
            final_test_accuracy,
            abs_accuracy_minus_rbf: None,
        });
    }

    let rbf_accuracy = reports
        .iter()
        .find(|r| r.family == KernelFamily::Rbf)
        .map(|r| r.final_test_accuracy);
    if let Some(rbf_acc) = rbf_accuracy {
        for report in &mut reports {
            report.abs_accuracy_minus_rbf = Some((report.final_test_accuracy - rbf_acc).abs());
        }
    }

    let mut csv = Vec::new();
    writeln!(
        csv,
        "family,alpha,k,z,gamma,c,train_accuracy,test_accuracy,abs_accuracy_minus_rbf"
    )
    .map_err(Error::from)?;
    for r in &reports {
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{}",
            r.family,
            r.best.best_alpha,
            r.best.best_k,
            r.best.best_z,
            r.best.best_gamma,
            r.best.best_c,
            r.final_train_accuracy,
            r.final_test_accuracy,
            r.abs_accuracy_minus_rbf
                .map(|v| v.to_string())
                .unwrap_or_default()
        )
        .map_err(Error::from)?;
    }
    std::fs::write(out_dir.join("report.csv"), csv)?;
    artifacts.push(("report.csv".into(), true));

    let report = ExperimentReport {
        dataset: dataset.to_string(),
        n: ds.len(),
        noise,
        train_fraction,
        seed,
        families: reports,
    };
    write_json(out_dir, "report.json", &report)?;
    artifacts.push(("report.json".into(), true));
    Ok(artifacts)
}
