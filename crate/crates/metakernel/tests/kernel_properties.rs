//! Property and oracle checks for the closed-form kernels.

mod common;

use common::*;
use metakernel::kernels::{
    contraction_limit_kernel, kernel, su11_kernel_1d, su2_kernel_1d, GramMatrix,
};
use metakernel::{KernelFamily, KernelParams};
use proptest::prelude::*;
use rand_core::RngCore;
use std::f64::consts::PI;

fn closed_1d(delta: f64, params: &KernelParams) -> num_complex::Complex64 {
    match params.family() {
        KernelFamily::AlphaSU2 => su2_kernel_1d(delta, params),
        KernelFamily::AlphaSU11 => su11_kernel_1d(delta, params),
        KernelFamily::Rbf => unreachable!(),
    }
}

#[test]
fn closed_forms_match_the_fock_oracle() {
    let mut r = rng(0x5eed_0001);
    for _ in 0..200 {
        let params = sample_su2(&mut r);
        let delta = uniform(&mut r, -2.0 * PI, 2.0 * PI);
        let x_base = uniform(&mut r, -3.0, 3.0);
        let closed = su2_kernel_1d(delta, &params);
        let oracle = fock_kernel_1d(delta, &params, x_base);
        assert!(
            (closed - oracle).norm() <= 1e-12,
            "su2 mismatch {:e} at delta {delta}, params {params:?}",
            (closed - oracle).norm()
        );
    }
    for _ in 0..200 {
        let params = sample_su11(&mut r);
        let delta = uniform(&mut r, -2.0 * PI, 2.0 * PI);
        let x_base = uniform(&mut r, -3.0, 3.0);
        let closed = su11_kernel_1d(delta, &params);
        let oracle = fock_kernel_1d(delta, &params, x_base);
        assert!(
            (closed - oracle).norm() <= 1e-8,
            "su11 mismatch {:e} at delta {delta}, params {params:?}",
            (closed - oracle).norm()
        );
    }
}

#[test]
fn hermitian_symmetry_unit_diagonal_modulus_and_periodicity() {
    let mut r = rng(0x5eed_0002);
    for family in [KernelFamily::AlphaSU2, KernelFamily::AlphaSU11] {
        for _ in 0..300 {
            let params = sample_family(&mut r, family);
            let delta = uniform(&mut r, -2.0 * PI, 2.0 * PI);
            let v = closed_1d(delta, &params);
            let v_conj = closed_1d(-delta, &params);
            assert!((v - v_conj.conj()).norm() <= 1e-12, "hermitian defect");
            assert!(v.norm() <= 1.0 + 1e-12, "modulus {} > 1", v.norm());
            let shifted = closed_1d(delta + 2.0 * PI, &params);
            assert!((v - shifted).norm() <= 1e-12, "period defect");
            let diag = closed_1d(0.0, &params);
            assert!((diag - num_complex::Complex64::new(1.0, 0.0)).norm() <= 1e-14);
        }
    }
}

#[test]
fn multi_dimensional_kernel_factorizes() {
    let mut r = rng(0x5eed_0003);
    for family in [KernelFamily::AlphaSU2, KernelFamily::AlphaSU11] {
        for _ in 0..100 {
            let params = sample_family(&mut r, family);
            let x: Vec<f64> = (0..3).map(|_| uniform(&mut r, -PI, PI)).collect();
            let y: Vec<f64> = (0..3).map(|_| uniform(&mut r, -PI, PI)).collect();
            let full = kernel(&x, &y, &params).unwrap();
            let product: num_complex::Complex64 = x
                .iter()
                .zip(&y)
                .map(|(a, b)| closed_1d(a - b, &params))
                .product();
            assert!((full - product).norm() <= 1e-13);
        }
    }
}

#[test]
fn real_gram_projection_is_psd_across_random_sets() {
    let mut r = rng(0x5eed_0004);
    for trial in 0..100 {
        let family = KernelFamily::ALL[trial % 3];
        let params = sample_family(&mut r, family);
        let n = 2 + (r.next_u64() % 19) as usize;
        let dim = 1 + (r.next_u64() % 4) as usize;
        let points: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..dim).map(|_| uniform(&mut r, 0.0, PI)).collect())
            .collect();
        let g = GramMatrix::from_points(&points, &params).unwrap();
        let (min, max) = g.real_eigen_bounds();
        assert!(
            min >= -1e-8 * max.max(1.0),
            "trial {trial} family {family}: min {min:e}, max {max:e}"
        );
    }
}

#[test]
fn contraction_limit_decays_like_one_over_k() {
    for &lambda_sq in &[0.25, 1.0, 4.0] {
        for &delta in &[0.1, 1.0, PI - 0.1] {
            let target = contraction_limit_kernel(delta, lambda_sq);

            // hold lambda_sq = 2k tan^2(z sqrt(alpha/2)) fixed with z = 1
            let su2_diff = |k: f64| {
                let arg = (lambda_sq / (2.0 * k)).sqrt().atan();
                let alpha = 2.0 * arg * arg;
                let p = KernelParams::su2(alpha, k, 1.0).unwrap();
                (su2_kernel_1d(delta, &p) - target).norm()
            };
            let diffs: Vec<f64> = [1.0, 10.0, 100.0, 1000.0].iter().map(|&k| su2_diff(k)).collect();
            assert!(
                diffs.windows(2).all(|w| w[1] < w[0]),
                "su2 diffs not decreasing: {diffs:?}"
            );
            // empirical O(1/k): three decades of k buy at least 1e2 decay
            assert!(
                diffs[3] <= diffs[0] / 100.0,
                "su2 decay too slow for lambda_sq {lambda_sq}, delta {delta}: {diffs:?}"
            );

            // tanh side: s^2 = lambda_sq / 2k must stay below 1, so the
            // baseline k starts at ceil of lambda_sq / 1.8
            let k_base = (lambda_sq / 1.8).ceil().max(1.0);
            let su11_diff = |k: f64| {
                let arg = (lambda_sq / (2.0 * k)).sqrt().atanh();
                let alpha = 2.0 * arg * arg;
                let p = KernelParams::su11(alpha, k, 1.0).unwrap();
                (su11_kernel_1d(delta, &p) - target).norm()
            };
            let base = su11_diff(k_base);
            let far = su11_diff(1000.0);
            assert!(
                far <= base * (k_base / 1000.0) * 10.0,
                "su11 decay too slow for lambda_sq {lambda_sq}, delta {delta}: {base:e} -> {far:e}"
            );
            assert!(far <= base / 100.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rbf_matches_product_structure(
        x0 in -3.0f64..3.0,
        x1 in -3.0f64..3.0,
        y0 in -3.0f64..3.0,
        y1 in -3.0f64..3.0,
        gamma in 0.05f64..5.0,
    ) {
        let params = KernelParams::rbf(gamma).unwrap();
        let full = kernel(&[x0, x1], &[y0, y1], &params).unwrap();
        prop_assert!(full.im == 0.0);
        let d0 = metakernel::kernels::rbf_kernel(&[x0], &[y0], gamma).unwrap();
        let d1 = metakernel::kernels::rbf_kernel(&[x1], &[y1], gamma).unwrap();
        prop_assert!((full.re - d0 * d1).abs() < 1e-14);
        prop_assert!(full.re > 0.0 && full.re <= 1.0);
    }

    #[test]
    fn su11_modulus_bounded_for_fractional_k(
        delta in -7.0f64..7.0,
        alpha in 0.0f64..2.5,
        k in 0.5f64..3.0,
        z in 0.2f64..4.6,
    ) {
        let params = KernelParams::su11(alpha, k, z).unwrap();
        let v = su11_kernel_1d(delta, &params);
        prop_assert!(v.norm() <= 1.0 + 1e-12);
    }
}
