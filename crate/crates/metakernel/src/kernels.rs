//! Closed-form evaluation of the deformed coherent-state kernel family.
//!
//! Three kernels share one parameterization: the compact `AlphaSU2` kernel
//!
//! ```text
//! K(δ) = [(1 + t² e^{iδ}) / (1 + t²)]^{2k},   t = tan(z √(α/2)),
//! ```
//!
//! its hyperbolic counterpart `AlphaSU11`
//!
//! ```text
//! K(δ) = [(1 − s²) / (1 − s² e^{iδ})]^{2k},   s = tanh(z √(α/2)),
//! ```
//!
//! and the flat-space `Rbf` baseline `exp(−γ‖x − x′‖²)`. The deformed
//! kernels act per feature dimension on δ_i = x_i − x′_i and multiply over
//! dimensions; both are 2π-periodic in each δ_i, have unit diagonal, and
//! satisfy |K| ≤ 1.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance from a tangent pole below which `AlphaSU2` parameters are rejected.
pub const TAN_POLE_GUARD: f64 = 1e-6;

/// Tolerance for requiring 2k to be a (positive) integer in the SU(2) family.
const TWO_K_INT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelFamily {
    AlphaSU2,
    AlphaSU11,
    Rbf,
}

impl KernelFamily {
    pub const ALL: [KernelFamily; 3] = [
        KernelFamily::AlphaSU2,
        KernelFamily::AlphaSU11,
        KernelFamily::Rbf,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            KernelFamily::AlphaSU2 => "alpha-su2",
            KernelFamily::AlphaSU11 => "alpha-su11",
            KernelFamily::Rbf => "rbf",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "alpha-su2" | "su2" | "alphasu2" => Ok(KernelFamily::AlphaSU2),
            "alpha-su11" | "su11" | "alphasu11" => Ok(KernelFamily::AlphaSU11),
            "rbf" => Ok(KernelFamily::Rbf),
            other => Err(Error::InvalidParams(format!(
                "unknown kernel family '{other}' (expected alpha-su2, alpha-su11, or rbf)"
            ))),
        }
    }
}

impl std::fmt::Display for KernelFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Validated kernel parameters.
///
/// `alpha` is the deformation strength |α| (the sign lives in the family
/// tag), `k` indexes the feature-space curvature (R = ±4/k), `z` is the
/// radial displacement amplitude, and `gamma` the RBF width. Construction
/// enforces the family-specific domain; deserialized values must be
/// revalidated with [`KernelParams::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    family: KernelFamily,
    alpha: f64,
    k: f64,
    z: f64,
    gamma: f64,
}

impl KernelParams {
    /// Compact-family parameters. Requires alpha ≥ 0, z > 0, 2k a positive
    /// integer, and z√(α/2) at least [`TAN_POLE_GUARD`] away from a tan pole.
    pub fn su2(alpha: f64, k: f64, z: f64) -> Result<Self> {
        let p = KernelParams {
            family: KernelFamily::AlphaSU2,
            alpha,
            k,
            z,
            gamma: 0.0,
        };
        p.validate()?;
        Ok(p)
    }

    /// Hyperbolic-family parameters. Requires alpha ≥ 0, z > 0, and real k ≥ 0.5.
    pub fn su11(alpha: f64, k: f64, z: f64) -> Result<Self> {
        let p = KernelParams {
            family: KernelFamily::AlphaSU11,
            alpha,
            k,
            z,
            gamma: 0.0,
        };
        p.validate()?;
        Ok(p)
    }

    /// Gaussian baseline. Requires gamma > 0.
    pub fn rbf(gamma: f64) -> Result<Self> {
        let p = KernelParams {
            family: KernelFamily::Rbf,
            alpha: 0.0,
            k: 0.0,
            z: 0.0,
            gamma,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn family(&self) -> KernelFamily {
        self.family
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// The combined strength z·√α. For fixed k this product is what shapes
    /// the decision boundary, so it is exposed as a single readout.
    pub fn z_sqrt_alpha(&self) -> f64 {
        self.z * self.alpha.sqrt()
    }

    /// The argument z·√(α/2) fed to tan/tanh.
    pub fn deformation_arg(&self) -> f64 {
        self.z * (self.alpha / 2.0).sqrt()
    }

    /// tan or tanh of the deformation argument, depending on family.
    pub fn deformation(&self) -> f64 {
        match self.family {
            KernelFamily::AlphaSU2 => self.deformation_arg().tan(),
            KernelFamily::AlphaSU11 => self.deformation_arg().tanh(),
            KernelFamily::Rbf => 0.0,
        }
    }

    /// 2k rounded to the nearest integer; only meaningful for `AlphaSU2`.
    pub fn two_k_int(&self) -> i32 {
        (2.0 * self.k).round() as i32
    }

    pub fn validate(&self) -> Result<()> {
        match self.family {
            KernelFamily::AlphaSU2 => {
                if !self.alpha.is_finite() || self.alpha < 0.0 {
                    return Err(Error::InvalidParams(format!(
                        "alpha must be finite and >= 0, got {}",
                        self.alpha
                    )));
                }
                if !self.z.is_finite() || self.z <= 0.0 {
                    return Err(Error::InvalidParams(format!(
                        "z must be finite and > 0, got {}",
                        self.z
                    )));
                }
                let two_k = 2.0 * self.k;
                if !two_k.is_finite()
                    || two_k < 1.0 - TWO_K_INT_TOL
                    || (two_k - two_k.round()).abs() > TWO_K_INT_TOL
                {
                    return Err(Error::InvalidParams(format!(
                        "2k must be a positive integer for the SU(2) family, got k = {}",
                        self.k
                    )));
                }
                let arg = self.deformation_arg();
                // Distance to the nearest pi/2 + n*pi.
                let dist = (arg.rem_euclid(std::f64::consts::PI) - std::f64::consts::FRAC_PI_2)
                    .abs();
                if dist < TAN_POLE_GUARD {
                    return Err(Error::TanPole {
                        arg,
                        guard: TAN_POLE_GUARD,
                    });
                }
                Ok(())
            }
            KernelFamily::AlphaSU11 => {
                if !self.alpha.is_finite() || self.alpha < 0.0 {
                    return Err(Error::InvalidParams(format!(
                        "alpha must be finite and >= 0 (the sign is carried by the family), got {}",
                        self.alpha
                    )));
                }
                if !self.z.is_finite() || self.z <= 0.0 {
                    return Err(Error::InvalidParams(format!(
                        "z must be finite and > 0, got {}",
                        self.z
                    )));
                }
                if !self.k.is_finite() || self.k < 0.5 {
                    return Err(Error::InvalidParams(format!(
                        "k must be real and >= 0.5 for the SU(1,1) family, got {}",
                        self.k
                    )));
                }
                Ok(())
            }
            KernelFamily::Rbf => {
                if !self.gamma.is_finite() || self.gamma <= 0.0 {
                    return Err(Error::InvalidParams(format!(
                        "gamma must be finite and > 0, got {}",
                        self.gamma
                    )));
                }
                Ok(())
            }
        }
    }
}

/// Per-parameter state hoisted out of tight evaluation loops: the
/// tan/tanh deformation and the exponent are fixed once, and integral
/// exponents take the exact integer-power path.
#[derive(Debug, Clone, Copy)]
pub struct KernelEvaluator {
    family: KernelFamily,
    /// t² (compact), s² (hyperbolic), or γ (RBF).
    strength: f64,
    two_k: f64,
    two_k_int: i32,
    integral_exponent: bool,
}

impl KernelEvaluator {
    pub fn new(params: &KernelParams) -> Self {
        let t = params.deformation();
        let two_k = 2.0 * params.k;
        let two_k_int = two_k.round() as i32;
        KernelEvaluator {
            family: params.family,
            strength: if params.family == KernelFamily::Rbf {
                params.gamma
            } else {
                t * t
            },
            two_k,
            two_k_int,
            integral_exponent: (two_k - two_k.round()).abs() < 1e-12,
        }
    }

    /// Single-feature kernel at difference `delta` (deformed families only).
    pub fn eval_1d(&self, delta: f64) -> Complex64 {
        match self.family {
            KernelFamily::AlphaSU2 => {
                let t2 = self.strength;
                let base =
                    (Complex64::new(1.0, 0.0) + t2 * Complex64::cis(delta)) / (1.0 + t2);
                base.powi(self.two_k_int)
            }
            KernelFamily::AlphaSU11 => {
                let s2 = self.strength;
                let base = Complex64::new(1.0 - s2, 0.0)
                    / (Complex64::new(1.0, 0.0) - s2 * Complex64::cis(delta));
                if self.integral_exponent {
                    base.powi(self.two_k_int)
                } else {
                    base.powf(self.two_k)
                }
            }
            KernelFamily::Rbf => unreachable!("RBF has no 1-d phase form"),
        }
    }

    /// Full kernel between two equal-length feature vectors; dimensions are
    /// the caller's responsibility here.
    pub fn eval(&self, x: &[f64], x_prime: &[f64]) -> Complex64 {
        match self.family {
            KernelFamily::Rbf => {
                let sq_dist: f64 = x
                    .iter()
                    .zip(x_prime)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                Complex64::new((-self.strength * sq_dist).exp(), 0.0)
            }
            _ => x
                .iter()
                .zip(x_prime)
                .map(|(a, b)| self.eval_1d(a - b))
                .product(),
        }
    }
}

/// One-dimensional compact-family kernel at feature difference `delta`.
///
/// The exponent 2k is applied as an exact integer power, so no branch
/// choice arises even when the base crosses the negative real axis.
pub fn su2_kernel_1d(delta: f64, params: &KernelParams) -> Complex64 {
    debug_assert_eq!(params.family, KernelFamily::AlphaSU2);
    KernelEvaluator::new(params).eval_1d(delta)
}

/// One-dimensional hyperbolic-family kernel at feature difference `delta`.
///
/// The complex power uses the principal branch, which is smooth here
/// because the base has strictly positive real part
/// (Re(1 − s²e^{iδ}) ≥ 1 − s² > 0); integral exponents 2k are applied as
/// exact integer powers, which coincide with the principal branch on this
/// domain.
pub fn su11_kernel_1d(delta: f64, params: &KernelParams) -> Complex64 {
    debug_assert_eq!(params.family, KernelFamily::AlphaSU11);
    KernelEvaluator::new(params).eval_1d(delta)
}

/// Gaussian kernel exp(−γ‖x − x′‖²).
pub fn rbf_kernel(x: &[f64], x_prime: &[f64], gamma: f64) -> Result<f64> {
    if x.len() != x_prime.len() {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: x_prime.len(),
        });
    }
    let sq_dist: f64 = x
        .iter()
        .zip(x_prime)
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    Ok((-gamma * sq_dist).exp())
}

/// Harmonic-oscillator coherent-state overlap exp(λ²(e^{iδ} − 1)).
///
/// This is the common limit of both deformed kernels as k → ∞ with
/// λ² = 2k·tan²(z√(α/2)) (resp. tanh²) held fixed.
pub fn contraction_limit_kernel(delta: f64, lambda_sq: f64) -> Complex64 {
    (lambda_sq * (Complex64::cis(delta) - 1.0)).exp()
}

/// Multi-dimensional kernel: the product over features of the 1-d kernel at
/// δ_i = x_i − x′_i. For the RBF family the value is real with zero
/// imaginary part.
pub fn kernel(x: &[f64], x_prime: &[f64], params: &KernelParams) -> Result<Complex64> {
    if x.len() != x_prime.len() {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: x_prime.len(),
        });
    }
    if x.is_empty() {
        return Err(Error::InvalidParams("feature dimension must be >= 1".into()));
    }
    Ok(KernelEvaluator::new(params).eval(x, x_prime))
}

/// Pairwise kernel matrix over a point set, kept in both complex form and
/// as its element-wise real part.
///
/// The complex matrix is Hermitian with unit diagonal (for the deformed
/// families); the real part is the symmetric PSD matrix handed to the SVM.
/// Entries are computed independently, so row-parallel construction is
/// bit-identical to sequential construction.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    complex: Vec<Complex64>,
    real: Vec<f64>,
    n: usize,
}

impl GramMatrix {
    pub fn from_points(points: &[Vec<f64>], params: &KernelParams) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParams("empty point set".into()));
        }
        let n = points.len();
        let dim = points[0].len();
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::GramEntry {
                    i,
                    j: 0,
                    source: Box::new(Error::DimensionMismatch {
                        left: p.len(),
                        right: dim,
                    }),
                });
            }
        }
        if dim == 0 {
            return Err(Error::InvalidParams("feature dimension must be >= 1".into()));
        }
        let evaluator = KernelEvaluator::new(params);
        let mut complex = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                complex[i * n + j] = evaluator.eval(&points[i], &points[j]);
            }
        }
        let real = complex.iter().map(|c| c.re).collect();
        Ok(GramMatrix { complex, real, n })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn complex_at(&self, i: usize, j: usize) -> Complex64 {
        self.complex[i * self.n + j]
    }

    pub fn real_at(&self, i: usize, j: usize) -> f64 {
        self.real[i * self.n + j]
    }

    pub fn real_row(&self, i: usize) -> &[f64] {
        &self.real[i * self.n..(i + 1) * self.n]
    }

    pub fn real_entries(&self) -> &[f64] {
        &self.real
    }

    /// (min, max) eigenvalue of the real projection, for PSD checks.
    pub fn real_eigen_bounds(&self) -> (f64, f64) {
        let m = nalgebra::DMatrix::from_row_slice(self.n, self.n, &self.real);
        let eig = m.symmetric_eigen();
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for &ev in eig.eigenvalues.iter() {
            min = min.min(ev);
            max = max.max(ev);
        }
        (min, max)
    }

    /// Largest |K[i][j] − conj(K[j][i])| over all pairs.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                let d = (self.complex_at(i, j) - self.complex_at(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn su2_unit_at_zero_delta() {
        let p = KernelParams::su2(0.7, 1.5, 1.3).unwrap();
        let v = su2_kernel_1d(0.0, &p);
        assert_eq!(v, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn su2_annihilates_at_pi_when_t_is_one() {
        // z*sqrt(alpha/2) = pi/4 gives t = 1, and e^{i pi} = -1 kills the numerator.
        let p = KernelParams::su2(2.0, 1.0, PI / 4.0).unwrap();
        let v = su2_kernel_1d(PI, &p);
        assert!(v.norm() < 1e-15, "expected 0, got {v}");
    }

    #[test]
    fn su2_frozen_regression_value() {
        // Independently computed from the truncated Fock expansion
        // (finite sum over m = 0..2) at 40-digit precision.
        let p = KernelParams::su2(0.1, 1.0, 1.0).unwrap();
        let v = su2_kernel_1d(0.5, &p);
        assert_abs_diff_eq!(v.re, 0.98744141191854053, epsilon = 1e-14);
        assert_abs_diff_eq!(v.im, 0.04686500529391215, epsilon = 1e-14);
    }

    #[test]
    fn su11_unit_at_zero_delta() {
        let p = KernelParams::su11(0.4, 0.75, 2.0).unwrap();
        assert_eq!(su11_kernel_1d(0.0, &p), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn su11_frozen_real_value_at_pi() {
        // ((1 - tanh^2 1) / (1 + tanh^2 1))^2, cross-checked against the
        // series expansion truncated below 1e-12 tail mass.
        let p = KernelParams::su11(2.0, 1.0, 1.0).unwrap();
        let v = su11_kernel_1d(PI, &p);
        assert_abs_diff_eq!(v.re, 0.07065082485316447, epsilon = 1e-14);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn su11_frozen_fractional_exponent_value() {
        let p = KernelParams::su11(0.1, 0.75, 1.0).unwrap();
        let v = su11_kernel_1d(0.5, &p);
        assert_abs_diff_eq!(v.re, 0.98964763879732551, epsilon = 1e-14);
        assert_abs_diff_eq!(v.im, 0.03596672803848590, epsilon = 1e-14);
    }

    #[test]
    fn alpha_zero_degenerates_to_constant_one() {
        let p2 = KernelParams::su2(0.0, 2.0, 1.0).unwrap();
        let p11 = KernelParams::su11(0.0, 1.0, 3.0).unwrap();
        for delta in [-2.0, 0.3, PI, 5.0] {
            assert_eq!(su2_kernel_1d(delta, &p2), Complex64::new(1.0, 0.0));
            assert_eq!(su11_kernel_1d(delta, &p11), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn rbf_known_values() {
        assert_abs_diff_eq!(
            rbf_kernel(&[1.0, 2.0], &[1.0, 2.0], 0.7).unwrap(),
            1.0,
            epsilon = 0.0
        );
        assert_abs_diff_eq!(
            rbf_kernel(&[0.0, 0.0], &[1.0, 0.0], 1.0).unwrap(),
            (-1.0f64).exp(),
            epsilon = 1e-15
        );
        // squared distance 8, gamma 0.5 -> e^{-4}
        assert_abs_diff_eq!(
            rbf_kernel(&[1.0, 2.0], &[3.0, 4.0], 0.5).unwrap(),
            (-4.0f64).exp(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn rbf_dimension_mismatch() {
        assert!(matches!(
            rbf_kernel(&[1.0], &[1.0, 2.0], 1.0),
            Err(Error::DimensionMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn contraction_limit_trivials() {
        assert_eq!(contraction_limit_kernel(0.0, 3.0), Complex64::new(1.0, 0.0));
        assert_eq!(contraction_limit_kernel(1.7, 0.0), Complex64::new(1.0, 0.0));
        let v = contraction_limit_kernel(PI, 1.0);
        assert_abs_diff_eq!(v.re, (-2.0f64).exp(), epsilon = 1e-15);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn product_kernel_matches_factor_product() {
        let p = KernelParams::su11(0.8, 1.25, 1.1).unwrap();
        let x = [0.3, -1.2, 2.5];
        let y = [1.0, 0.4, -0.7];
        let product: Complex64 = x
            .iter()
            .zip(&y)
            .map(|(a, b)| su11_kernel_1d(a - b, &p))
            .product();
        let full = kernel(&x, &y, &p).unwrap();
        assert!((product - full).norm() < 1e-15);
    }

    #[test]
    fn product_kernel_with_one_zero_factor_is_zero() {
        let p = KernelParams::su2(2.0, 1.0, PI / 4.0).unwrap();
        let v = kernel(&[PI, 0.0], &[0.0, 0.0], &p).unwrap();
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn su2_rejects_pole_and_non_integer_2k() {
        // z*sqrt(alpha/2) = pi/2 exactly.
        let z = std::f64::consts::FRAC_PI_2;
        assert!(matches!(
            KernelParams::su2(2.0, 1.0, z),
            Err(Error::TanPole { .. })
        ));
        assert!(KernelParams::su2(2.0, 0.8, 1.0).is_err());
        assert!(KernelParams::su2(2.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn su11_rejects_small_k_and_negative_alpha() {
        assert!(KernelParams::su11(1.0, 0.4, 1.0).is_err());
        assert!(KernelParams::su11(-0.5, 1.0, 1.0).is_err());
        assert!(KernelParams::su11(1.0, 0.5, 1.0).is_ok());
    }

    #[test]
    fn half_integer_k_is_accepted_for_su2() {
        assert!(KernelParams::su2(1.0, 0.5, 1.0).is_ok());
        assert!(KernelParams::su2(1.0, 1.5, 1.0).is_ok());
    }

    #[test]
    fn z_sqrt_alpha_accessor() {
        let p = KernelParams::su2(2.0, 1.0, 0.75).unwrap();
        assert_abs_diff_eq!(p.z_sqrt_alpha(), 0.75 * 2.0f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn gram_single_and_duplicate_points() {
        let p = KernelParams::su11(0.5, 1.0, 1.0).unwrap();
        let g = GramMatrix::from_points(&[vec![0.2, 0.4]], &p).unwrap();
        assert_eq!(g.size(), 1);
        assert_eq!(g.complex_at(0, 0), Complex64::new(1.0, 0.0));

        let g2 = GramMatrix::from_points(&[vec![0.2, 0.4], vec![0.2, 0.4]], &p).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_abs_diff_eq!(g2.real_at(i, j), 1.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn gram_reports_offending_pair() {
        let p = KernelParams::rbf(1.0).unwrap();
        let err = GramMatrix::from_points(&[vec![0.0, 1.0], vec![0.0]], &p).unwrap_err();
        match err {
            Error::GramEntry { i: 1, j: 0, .. } => {}
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn gram_random_su11_is_psd() {
        use rand_core::{RngCore, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut unit = || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        let points: Vec<Vec<f64>> = (0..10)
            .map(|_| vec![unit() * PI, unit() * PI])
            .collect();
        let p = KernelParams::su11(0.1, 1.0, 1.0).unwrap();
        let g = GramMatrix::from_points(&points, &p).unwrap();
        assert!(g.hermitian_defect() < 1e-14);
        let (min, max) = g.real_eigen_bounds();
        assert!(min >= -1e-8 * max.max(1.0), "min {min} max {max}");
    }
}
