//! The SMO solver against an exhaustive pairwise coordinate-ascent oracle,
//! plus solver-independent optimality checks.

mod common;

use common::*;
use metakernel::kernels::GramMatrix;
use metakernel::reference::pairwise_coordinate_ascent;
use metakernel::svm::{
    dual_objective, train_binary, train_binary_precomputed, verify_kkt, TrainConfig,
};
use metakernel::{KernelFamily, KernelParams};
use rand_core::RngCore;
use std::f64::consts::PI;

struct SmallProblem {
    points: Vec<Vec<f64>>,
    ys: Vec<f64>,
    params: KernelParams,
    c: f64,
}

fn random_problem(r: &mut rand_chacha::ChaCha8Rng, trial: usize) -> SmallProblem {
    let n = 4 + (r.next_u64() % 9) as usize; // 4..=12
    let points: Vec<Vec<f64>> = (0..n)
        .map(|_| vec![uniform(r, 0.0, PI), uniform(r, 0.0, PI)])
        .collect();
    let mut ys: Vec<f64> = (0..n)
        .map(|_| if r.next_u64() % 2 == 0 { 1.0 } else { -1.0 })
        .collect();
    // both classes must appear
    ys[0] = 1.0;
    ys[1] = -1.0;
    let params = sample_family(r, KernelFamily::ALL[trial % 3]);
    let c = [0.1, 1.0, 10.0][(r.next_u64() % 3) as usize];
    SmallProblem { points, ys, params, c }
}

#[test]
fn smo_matches_the_coordinate_ascent_oracle_on_small_problems() {
    let mut r = rng(0x5111_0001);
    for trial in 0..50 {
        let p = random_problem(&mut r, trial);
        let gram = GramMatrix::from_points(&p.points, &p.params).unwrap();
        let config = TrainConfig {
            c: p.c,
            tolerance: 1e-8,
            max_passes: 1_000_000,
            seed: 42,
        };
        let model = train_binary_precomputed(&p.points, &gram, &p.ys, &config).unwrap();

        // reconstruct the full alpha vector for objective and KKT checks
        let mut alpha = vec![0.0; p.points.len()];
        let mut s = 0usize;
        for (i, x) in p.points.iter().enumerate() {
            if s < model.support_vectors.len() && model.support_vectors[s] == *x {
                alpha[i] = model.dual_coefs[s] * p.ys[i];
                s += 1;
            }
        }

        let reference_alpha = pairwise_coordinate_ascent(&gram, &p.ys, p.c);
        let smo_obj = dual_objective(&gram, &p.ys, &alpha);
        let ref_obj = dual_objective(&gram, &p.ys, &reference_alpha);
        assert!(
            (smo_obj - ref_obj).abs() <= 1e-6,
            "trial {trial}: smo {smo_obj:.12} vs reference {ref_obj:.12} \
             (n = {}, c = {}, family = {})",
            p.points.len(),
            p.c,
            p.params.family()
        );

        let report = verify_kkt(&gram, &p.ys, &alpha, model.bias, p.c, 1e-3);
        assert!(
            report.ok,
            "trial {trial}: KKT violation {:e}, equality residual {:e}",
            report.max_violation, report.equality_residual
        );
    }
}

#[test]
fn ten_point_rbf_problem_matches_reference_objective() {
    let mut r = rng(0x5111_0002);
    let points: Vec<Vec<f64>> = (0..10)
        .map(|_| vec![uniform(&mut r, -1.0, 1.0), uniform(&mut r, -1.0, 1.0)])
        .collect();
    let ys: Vec<f64> = (0..10).map(|i| if i < 5 { 1.0 } else { -1.0 }).collect();
    let params = KernelParams::rbf(1.0).unwrap();
    let gram = GramMatrix::from_points(&points, &params).unwrap();
    let config = TrainConfig {
        c: 1.0,
        tolerance: 1e-8,
        max_passes: 1_000_000,
        seed: 0,
    };
    let model = train_binary_precomputed(&points, &gram, &ys, &config).unwrap();
    let mut alpha = vec![0.0; 10];
    let mut s = 0usize;
    for (i, x) in points.iter().enumerate() {
        if s < model.support_vectors.len() && model.support_vectors[s] == *x {
            alpha[i] = model.dual_coefs[s] * ys[i];
            s += 1;
        }
    }
    let reference = pairwise_coordinate_ascent(&gram, &ys, 1.0);
    let gap = (dual_objective(&gram, &ys, &alpha) - dual_objective(&gram, &ys, &reference)).abs();
    assert!(gap <= 1e-6, "objective gap {gap:e}");
}

#[test]
fn training_order_permutation_leaves_predictions_unchanged() {
    let ds = metakernel::datasets::make_moons(40, 0.15, 12).unwrap();
    let ys: Vec<f64> = ds
        .labels
        .iter()
        .map(|&l| if l == 1 { 1.0 } else { -1.0 })
        .collect();
    let params = KernelParams::su11(0.5, 1.0, 1.0).unwrap();
    let config = TrainConfig {
        c: 1.0,
        tolerance: 1e-8,
        max_passes: 1_000_000,
        seed: 7,
    };
    let direct = train_binary(&ds.features, &ys, &params, &config).unwrap();

    // deterministic permutation: reverse
    let perm_features: Vec<Vec<f64>> = ds.features.iter().rev().cloned().collect();
    let perm_ys: Vec<f64> = ys.iter().rev().copied().collect();
    let permuted = train_binary(&perm_features, &perm_ys, &params, &config).unwrap();

    let mut probe_rng = rng(0x5111_0003);
    for _ in 0..50 {
        let x = vec![
            uniform(&mut probe_rng, -1.5, 2.5),
            uniform(&mut probe_rng, -1.0, 1.5),
        ];
        let a = direct.decision(&x, &params).unwrap();
        let b = permuted.decision(&x, &params).unwrap();
        assert!(
            (a - b).abs() < 1e-5,
            "decision drift {:e} at {x:?}",
            (a - b).abs()
        );
        assert_eq!(a > 0.0, b > 0.0);
    }
}
