//! Truncated Fock-space realization of the coherent states behind the
//! closed-form kernels.
//!
//! A state at data value x is the normalized expansion
//!
//! ```text
//! |x⟩ = Σ_m (−1)^m e^{−imx} w_m |m⟩
//! ```
//!
//! with family-specific weights: for the compact family
//! w_m = (1+t²)^{−k} t^m √(binom(2k, m)) on the finite range m = 0..2k;
//! for the hyperbolic family w_m = (1−s²)^k s^m √(Γ(2k+m)/(m! Γ(2k)))
//! truncated once |c_m|² < 1e−16; and for the harmonic-oscillator limit
//! w_m = e^{−λ²/2} λ^m/√(m!). Overlaps of these states reproduce the
//! closed-form kernels exactly (finite sum) or up to the recorded
//! geometric tail bound, which is what makes them usable as a brute-force
//! oracle.
//!
//! Weights are built by the multiplicative ratio recurrence
//! w_{m+1}/w_m = s·√((2k+m)/(m+1)) (and counterparts), which is the
//! Gamma-ratio in cancelled form: no overflow for m in the hundreds of
//! thousands and no loss from large log-Gamma values.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{KernelFamily, KernelParams};

/// Squared-amplitude threshold below which the infinite expansions stop.
pub const TRUNCATION_THRESHOLD: f64 = 1e-16;

/// Hard cap on expansion length; parameters that need more are rejected.
pub const MAX_COEFFICIENTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StateFamily {
    AlphaSU2,
    AlphaSU11,
    HarmonicOscillator,
}

/// A coherent state as an explicit (truncated) coefficient vector.
#[derive(Debug, Clone)]
pub struct CoherentState {
    family: StateFamily,
    coefficients: Vec<Complex64>,
    k: f64,
    /// Upper bound on the discarded squared-amplitude mass (0 for AlphaSU2).
    truncation_tail: f64,
    // Provenance, so overlaps are only taken between comparable states.
    alpha: f64,
    z: f64,
}

impl CoherentState {
    pub fn family(&self) -> StateFamily {
        self.family
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn truncation_tail(&self) -> f64 {
        self.truncation_tail
    }

    /// Σ_m |c_m|².
    pub fn norm_sq(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum()
    }

    /// |c_m|² per Fock index, e.g. for CSV export of occupation profiles.
    pub fn magnitude_profile(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c.norm_sqr()).collect()
    }

    fn comparable(&self, other: &CoherentState) -> Result<()> {
        if self.family != other.family {
            return Err(Error::StateMismatch(format!(
                "family {:?} vs {:?}",
                self.family, other.family
            )));
        }
        if self.k != other.k || self.alpha != other.alpha || self.z != other.z {
            return Err(Error::StateMismatch(format!(
                "parameter provenance differs: (k, alpha, z) = ({}, {}, {}) vs ({}, {}, {})",
                self.k, self.alpha, self.z, other.k, other.alpha, other.z
            )));
        }
        Ok(())
    }

    /// Harmonic-oscillator coherent state with |amplitude|² = `lambda_sq`,
    /// phased the same way as the deformed families so that overlaps depend
    /// only on x − x′.
    pub fn harmonic_oscillator(x: f64, lambda_sq: f64) -> Result<Self> {
        if !lambda_sq.is_finite() || lambda_sq < 0.0 {
            return Err(Error::InvalidParams(format!(
                "lambda_sq must be finite and >= 0, got {lambda_sq}"
            )));
        }
        let lambda = lambda_sq.sqrt();
        let w0 = (-lambda_sq / 2.0).exp();
        let (coefficients, truncation_tail) = expand(x, w0, |m| lambda / ((m + 1) as f64).sqrt())?;
        Ok(CoherentState {
            family: StateFamily::HarmonicOscillator,
            coefficients,
            k: 0.0,
            truncation_tail,
            alpha: lambda_sq,
            z: 0.0,
        })
    }
}

/// Build the coherent state for data value `x` under deformed-family
/// parameters. RBF parameters have no Fock realization here and are
/// rejected.
pub fn build_state(x: f64, params: &KernelParams) -> Result<CoherentState> {
    params.validate()?;
    match params.family() {
        KernelFamily::AlphaSU2 => {
            let t = params.deformation();
            let two_k = params.two_k_int();
            let norm = (1.0 + t * t).powf(-params.k());
            let mut coefficients = Vec::with_capacity(two_k as usize + 1);
            let mut w = norm;
            for m in 0..=two_k {
                coefficients.push(phase(m, x) * w);
                // w_{m+1}/w_m = t * sqrt((2k - m) / (m + 1))
                w *= t * ((two_k - m) as f64 / (m + 1) as f64).sqrt();
            }
            Ok(CoherentState {
                family: StateFamily::AlphaSU2,
                coefficients,
                k: params.k(),
                truncation_tail: 0.0,
                alpha: params.alpha(),
                z: params.z(),
            })
        }
        KernelFamily::AlphaSU11 => {
            let s = params.deformation();
            let two_k = 2.0 * params.k();
            let w0 = (1.0 - s * s).powf(params.k());
            let (coefficients, truncation_tail) =
                expand(x, w0, |m| s * ((two_k + m as f64) / (m + 1) as f64).sqrt())?;
            Ok(CoherentState {
                family: StateFamily::AlphaSU11,
                coefficients,
                k: params.k(),
                truncation_tail,
                alpha: params.alpha(),
                z: params.z(),
            })
        }
        KernelFamily::Rbf => Err(Error::InvalidParams(
            "the RBF family has no Fock-space realization in this oracle".into(),
        )),
    }
}

/// ⟨a|b⟩ = Σ_m conj(a_m)·b_m for states built from the same parameters.
pub fn overlap(a: &CoherentState, b: &CoherentState) -> Result<Complex64> {
    a.comparable(b)?;
    Ok(a.coefficients
        .iter()
        .zip(&b.coefficients)
        .map(|(ca, cb)| ca.conj() * cb)
        .sum())
}

/// (−1)^m e^{−imx}
fn phase(m: i32, x: f64) -> Complex64 {
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    sign * Complex64::cis(-(m as f64) * x)
}

/// Run a weight recurrence until |w_m|² drops below the truncation
/// threshold, returning phased coefficients and a geometric bound on the
/// dropped squared mass.
fn expand(
    x: f64,
    w0: f64,
    ratio: impl Fn(usize) -> f64,
) -> Result<(Vec<Complex64>, f64)> {
    let mut coefficients = Vec::new();
    let mut w = w0;
    let mut m = 0usize;
    while w * w >= TRUNCATION_THRESHOLD {
        if m >= MAX_COEFFICIENTS {
            return Err(Error::StateOverflow {
                limit: MAX_COEFFICIENTS,
            });
        }
        coefficients.push(phase(m as i32, x) * w);
        w *= ratio(m);
        m += 1;
    }
    // First dropped weight is w at index m. The ratio functions used here
    // are non-increasing in m once below 1, so the tail is bounded by the
    // geometric series with the current ratio.
    let q = ratio(m).powi(2);
    let tail = if q < 1.0 {
        (w * w) / (1.0 - q)
    } else {
        f64::INFINITY
    };
    Ok((coefficients, tail))
}
