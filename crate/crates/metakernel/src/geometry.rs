//! Feature-space geometry of the deformed kernels.
//!
//! Both deformed families induce a two-dimensional diagonal metric on the
//! (z, x) parameter surface:
//!
//! ```text
//! AlphaSU2:  ds² = kα dz² + (k/2) sin²(√(2α) z) dx²     (R = +4/k)
//! AlphaSU11: ds² = kα dz² + (k/2) sinh²(√(2α) z) dx²    (R = −4/k)
//! ```
//!
//! This module evaluates the metric, its Christoffel symbols and Ricci
//! curvature in closed form, re-derives them by central finite differences
//! with Richardson extrapolation as an independent numerical check, and
//! realizes the metrics as surfaces of revolution for plotting.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{KernelFamily, KernelParams};

/// z closer than this (in the rescaled coordinate u = √(2α)z) to a metric
/// degeneracy is rejected as a probe point.
pub const SINGULARITY_GUARD: f64 = 1e-3;

/// Diagonal metric components at a point (the metric depends only on z).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricTensor {
    pub g_zz: f64,
    pub g_xx: f64,
}

/// The nonzero Christoffel symbols of the second kind for these metrics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChristoffelSymbols {
    /// Γ^x_{xz} = Γ^x_{zx}
    pub gamma_x_xz: f64,
    /// Γ^z_{xx}
    pub gamma_z_xx: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurvatureMethod {
    ClosedForm,
    FiniteDifference,
}

/// Ricci data at a probe point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub ricci_xx: f64,
    pub ricci_zz: f64,
    pub ricci_scalar: f64,
    pub probe_z: f64,
    pub method: CurvatureMethod,
}

fn require_deformed(params: &KernelParams) -> Result<()> {
    match params.family() {
        KernelFamily::AlphaSU2 | KernelFamily::AlphaSU11 => Ok(()),
        KernelFamily::Rbf => Err(Error::InvalidParams(
            "the flat RBF family has no curved feature-space metric".into(),
        )),
    }
}

fn require_probe(z: f64, params: &KernelParams) -> Result<()> {
    require_deformed(params)?;
    if !(params.alpha() > 0.0) {
        return Err(Error::InvalidParams(
            "alpha = 0 is the flat degenerate case; the metric is only defined for alpha > 0"
                .into(),
        ));
    }
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::SingularPoint {
            z,
            reason: "probe points require z > 0".into(),
        });
    }
    Ok(())
}

/// √(2α)
fn frequency(params: &KernelParams) -> f64 {
    (2.0 * params.alpha()).sqrt()
}

/// Metric components at z (Rbf and alpha = 0 are rejected as flat).
pub fn metric_at(z: f64, params: &KernelParams) -> Result<MetricTensor> {
    require_probe(z, params)?;
    let u = frequency(params) * z;
    let profile = match params.family() {
        KernelFamily::AlphaSU2 => u.sin(),
        KernelFamily::AlphaSU11 => u.sinh(),
        KernelFamily::Rbf => unreachable!(),
    };
    Ok(MetricTensor {
        g_zz: params.k() * params.alpha(),
        g_xx: 0.5 * params.k() * profile * profile,
    })
}

fn guard_singularity(z: f64, params: &KernelParams) -> Result<f64> {
    let a = frequency(params);
    let u = a * z;
    let dist = match params.family() {
        // sin vanishes at every multiple of pi
        KernelFamily::AlphaSU2 => {
            let r = u.rem_euclid(std::f64::consts::PI);
            r.min(std::f64::consts::PI - r)
        }
        KernelFamily::AlphaSU11 => u.abs(),
        KernelFamily::Rbf => unreachable!(),
    };
    if dist < SINGULARITY_GUARD {
        return Err(Error::SingularPoint {
            z,
            reason: format!("u = sqrt(2 alpha) z = {u} is within {SINGULARITY_GUARD} of a metric degeneracy"),
        });
    }
    Ok(u)
}

/// Closed-form Christoffel symbols:
/// Γ^x_{xz} = √(2α)·cot(√(2α)z) and Γ^z_{xx} = −sin(2√(2α)z)/(2√(2α))
/// for the compact family; cot → coth and sin → sinh for the hyperbolic one.
pub fn christoffel_closed_form(z: f64, params: &KernelParams) -> Result<ChristoffelSymbols> {
    require_probe(z, params)?;
    let u = guard_singularity(z, params)?;
    let a = frequency(params);
    Ok(match params.family() {
        KernelFamily::AlphaSU2 => ChristoffelSymbols {
            gamma_x_xz: a * u.cos() / u.sin(),
            gamma_z_xx: -(2.0 * u).sin() / (2.0 * a),
        },
        KernelFamily::AlphaSU11 => ChristoffelSymbols {
            gamma_x_xz: a * u.cosh() / u.sinh(),
            gamma_z_xx: -(2.0 * u).sinh() / (2.0 * a),
        },
        KernelFamily::Rbf => unreachable!(),
    })
}

/// Central difference with one Richardson extrapolation step: error O(h⁴).
fn richardson_derivative(f: &dyn Fn(f64) -> f64, z: f64, h: f64) -> f64 {
    let d = |h: f64| (f(z + h) - f(z - h)) / (2.0 * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

// Full Christoffel triple for a diagonal metric g(z); Γ^z_zz is zero for
// the closed forms here but the numerical path does not assume it.
struct ChristoffelTriple {
    x_xz: f64,
    z_xx: f64,
    z_zz: f64,
}

fn christoffel_from_metric(z: f64, params: &KernelParams, h: f64) -> Result<ChristoffelTriple> {
    let g = metric_at(z, params)?;
    let g_xx = |z: f64| metric_at(z, params).map(|m| m.g_xx).unwrap_or(f64::NAN);
    let g_zz = |z: f64| metric_at(z, params).map(|m| m.g_zz).unwrap_or(f64::NAN);
    let d_xx = richardson_derivative(&g_xx, z, h);
    let d_zz = richardson_derivative(&g_zz, z, h);
    Ok(ChristoffelTriple {
        x_xz: 0.5 * d_xx / g.g_xx,
        z_xx: -0.5 * d_xx / g.g_zz,
        z_zz: 0.5 * d_zz / g.g_zz,
    })
}

/// Step sizes live in the rescaled coordinate u = √(2α)z, the scale on
/// which the metric actually varies; in z units that is h_u/√(2α).
fn fd_steps(params: &KernelParams) -> (f64, f64) {
    let freq = frequency(params);
    (1e-4 / freq, 1e-3 / freq)
}

/// Christoffel symbols re-derived numerically from [`metric_at`] alone.
pub fn christoffel_finite_difference(z: f64, params: &KernelParams) -> Result<ChristoffelSymbols> {
    require_probe(z, params)?;
    guard_singularity(z, params)?;
    let (h_inner, _) = fd_steps(params);
    let t = christoffel_from_metric(z, params, h_inner)?;
    Ok(ChristoffelSymbols {
        gamma_x_xz: t.x_xz,
        gamma_z_xx: t.z_xx,
    })
}

/// Ricci curvature at a probe point, either from the closed forms or by
/// numerically differentiating the finite-difference Christoffel symbols
/// and contracting with the inverse metric.
pub fn curvature(z: f64, params: &KernelParams, method: CurvatureMethod) -> Result<CurvatureReport> {
    require_probe(z, params)?;
    let u = guard_singularity(z, params)?;
    match method {
        CurvatureMethod::ClosedForm => {
            let (ricci_xx, ricci_zz, sign) = match params.family() {
                KernelFamily::AlphaSU2 => (u.sin().powi(2), 2.0 * params.alpha(), 1.0),
                KernelFamily::AlphaSU11 => (-u.sinh().powi(2), -2.0 * params.alpha(), -1.0),
                KernelFamily::Rbf => unreachable!(),
            };
            Ok(CurvatureReport {
                ricci_xx,
                ricci_zz,
                ricci_scalar: sign * 4.0 / params.k(),
                probe_z: z,
                method,
            })
        }
        CurvatureMethod::FiniteDifference => {
            let (h_inner, h_outer_base) = fd_steps(params);
            let estimate = |h_outer: f64| -> Result<CurvatureReport> {
                let at = |z: f64| -> Result<ChristoffelTriple> {
                    christoffel_from_metric(z, params, h_inner)
                };
                let gamma = at(z)?;
                let x_xz = |z: f64| at(z).map(|t| t.x_xz).unwrap_or(f64::NAN);
                let z_xx = |z: f64| at(z).map(|t| t.z_xx).unwrap_or(f64::NAN);
                let d_x_xz = richardson_derivative(&x_xz, z, h_outer);
                let d_z_xx = richardson_derivative(&z_xx, z, h_outer);
                // Ricci tensor of a diagonal metric depending only on z:
                //   R_zz = −∂_z Γ^x_xz + Γ^z_zz Γ^x_xz − (Γ^x_xz)²
                //   R_xx =  ∂_z Γ^z_xx + Γ^z_xx Γ^z_zz − Γ^z_xx Γ^x_xz
                let ricci_zz = -d_x_xz + gamma.z_zz * gamma.x_xz - gamma.x_xz * gamma.x_xz;
                let ricci_xx = d_z_xx + gamma.z_xx * gamma.z_zz - gamma.z_xx * gamma.x_xz;
                let g = metric_at(z, params)?;
                Ok(CurvatureReport {
                    ricci_xx,
                    ricci_zz,
                    ricci_scalar: ricci_xx / g.g_xx + ricci_zz / g.g_zz,
                    probe_z: z,
                    method,
                })
            };
            let coarse = estimate(h_outer_base)?;
            let fine = estimate(h_outer_base / 2.0)?;
            let drift = (coarse.ricci_scalar - fine.ricci_scalar).abs();
            if !drift.is_finite() || drift > 1e-5 * fine.ricci_scalar.abs().max(1.0) {
                return Err(Error::FdDidNotConverge(format!(
                    "Ricci scalar estimates at steps {h_outer_base:.3e} and {:.3e} differ by {drift:.3e} at z = {z}",
                    h_outer_base / 2.0
                )));
            }
            Ok(fine)
        }
    }
}

/// A revolution-surface realization of the feature-space metric, sampled on
/// a (z, x) grid.
#[derive(Debug, Clone)]
pub struct SurfaceMesh {
    vertices: Vec<[f64; 3]>,
    z_values: Vec<f64>,
    x_values: Vec<f64>,
    warning: Option<String>,
}

impl SurfaceMesh {
    pub fn n_z(&self) -> usize {
        self.z_values.len()
    }

    pub fn n_x(&self) -> usize {
        self.x_values.len()
    }

    pub fn vertex(&self, i_z: usize, i_x: usize) -> [f64; 3] {
        self.vertices[i_z * self.x_values.len() + i_x]
    }

    pub fn vertices(&self) -> &[[f64; 3]] {
        &self.vertices
    }

    pub fn z_values(&self) -> &[f64] {
        &self.z_values
    }

    pub fn x_values(&self) -> &[f64] {
        &self.x_values
    }

    /// Warning emitted when the metric admits no isometric embedding on
    /// (part of) the requested band and the height integrand was clamped.
    pub fn warning(&self) -> Option<&str> {
        self.warning.as_deref()
    }

    /// CSV rows `z_index,x_index,x,y,z`, row-major over the grid.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "z_index,x_index,x,y,z")?;
        for (i, _) in self.z_values.iter().enumerate() {
            for (j, _) in self.x_values.iter().enumerate() {
                let v = self.vertex(i, j);
                writeln!(w, "{},{},{},{},{}", i, j, v[0], v[1], v[2])?;
            }
        }
        Ok(())
    }

    /// Wavefront-style geometry: `v` lines for the vertex grid and `f`
    /// lines triangulating each grid quad (1-based indices).
    pub fn write_obj<W: Write>(&self, mut w: W) -> Result<()> {
        for v in &self.vertices {
            writeln!(w, "v {} {} {}", v[0], v[1], v[2])?;
        }
        let nx = self.x_values.len();
        for i in 0..self.z_values.len() - 1 {
            for j in 0..nx - 1 {
                let a = i * nx + j + 1;
                let b = i * nx + j + 2;
                let c = (i + 1) * nx + j + 2;
                let d = (i + 1) * nx + j + 1;
                writeln!(w, "f {a} {b} {c}")?;
                writeln!(w, "f {a} {c} {d}")?;
            }
        }
        Ok(())
    }
}

/// Embed the metric as a surface of revolution.
///
/// The profile radius is r(z) = √(g_xx(z)) revolved through the angle x;
/// the height is h(z) = ∫ √(max(0, kα − r′(z)²)) dz. Where kα < r′(z)² the
/// metric admits no revolution embedding (always the case for the
/// hyperbolic family away from z = 0); the integrand is clamped to zero
/// there, the radial profile stays exact, and a warning describes the
/// obstruction.
pub fn revolution_surface_mesh(
    params: &KernelParams,
    z_range: (f64, f64),
    x_range: (f64, f64),
    resolution: (usize, usize),
) -> Result<SurfaceMesh> {
    require_deformed(params)?;
    if !(params.alpha() > 0.0) {
        return Err(Error::InvalidParams(
            "alpha = 0 is the flat degenerate case; no revolution surface".into(),
        ));
    }
    let (z_lo, z_hi) = z_range;
    let (x_lo, x_hi) = x_range;
    let (n_z, n_x) = resolution;
    if n_z < 2 || n_x < 2 {
        return Err(Error::InvalidParams(format!(
            "resolution must be at least 2 per axis, got ({n_z}, {n_x})"
        )));
    }
    if !(z_lo >= 0.0 && z_hi > z_lo) || !(x_hi > x_lo) {
        return Err(Error::InvalidParams(format!(
            "invalid ranges z = [{z_lo}, {z_hi}], x = [{x_lo}, {x_hi}]"
        )));
    }
    let a = frequency(params);
    if params.family() == KernelFamily::AlphaSU2 && a * z_hi > std::f64::consts::PI + 1e-12 {
        return Err(Error::InvalidParams(format!(
            "z range must stay inside one profile arch: sqrt(2 alpha) z <= pi, got {}",
            a * z_hi
        )));
    }

    let k = params.k();
    let g_zz = k * params.alpha();
    let radius = |z: f64| -> f64 {
        let u = a * z;
        let p = match params.family() {
            KernelFamily::AlphaSU2 => u.sin().abs(),
            KernelFamily::AlphaSU11 => u.sinh().abs(),
            KernelFamily::Rbf => unreachable!(),
        };
        (0.5 * k).sqrt() * p
    };
    let radius_slope = |z: f64| -> f64 {
        let u = a * z;
        match params.family() {
            KernelFamily::AlphaSU2 => (k * params.alpha()).sqrt() * u.cos(),
            KernelFamily::AlphaSU11 => (k * params.alpha()).sqrt() * u.cosh(),
            KernelFamily::Rbf => unreachable!(),
        }
    };

    let z_values: Vec<f64> = (0..n_z)
        .map(|i| z_lo + (z_hi - z_lo) * i as f64 / (n_z - 1) as f64)
        .collect();
    let x_values: Vec<f64> = (0..n_x)
        .map(|j| x_lo + (x_hi - x_lo) * j as f64 / (n_x - 1) as f64)
        .collect();

    // Height integrand, clamped where the embedding obstruction bites.
    let integrand = |z: f64| (g_zz - radius_slope(z).powi(2)).max(0.0).sqrt();
    let mut clamped = false;
    // Cumulative height by composite Simpson on each mesh interval, with
    // substeps so the integration error does not limit mesh convergence.
    let mut heights = Vec::with_capacity(n_z);
    heights.push(0.0);
    const SUBSTEPS: usize = 32;
    for w in z_values.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let h = (hi - lo) / (2 * SUBSTEPS) as f64;
        let mut sum = integrand(lo) + integrand(hi);
        for s in 1..2 * SUBSTEPS {
            let weight = if s % 2 == 1 { 4.0 } else { 2.0 };
            sum += weight * integrand(lo + s as f64 * h);
        }
        heights.push(heights.last().unwrap() + sum * h / 3.0);
    }
    for &z in &z_values {
        if g_zz < radius_slope(z).powi(2) - 1e-12 {
            clamped = true;
        }
    }

    let mut vertices = Vec::with_capacity(n_z * n_x);
    for (i, &z) in z_values.iter().enumerate() {
        let r = radius(z);
        for &x in &x_values {
            vertices.push([r * x.cos(), r * x.sin(), heights[i]]);
        }
    }

    let warning = if clamped {
        Some(format!(
            "no isometric revolution embedding on part of z in [{z_lo}, {z_hi}] \
             (k*alpha < r'(z)^2); height integrand clamped to 0 there, radial profile exact"
        ))
    } else {
        None
    };

    Ok(SurfaceMesh {
        vertices,
        z_values,
        x_values,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn su2_metric_direct_substitution() {
        let p = KernelParams::su2(2.0, 1.0, 1.0).unwrap();
        let m = metric_at(PI / 4.0, &p).unwrap();
        assert_abs_diff_eq!(m.g_zz, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.g_xx, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn su11_metric_direct_substitution() {
        let p = KernelParams::su11(2.0, 2.0, 1.0).unwrap();
        let m = metric_at(1.0, &p).unwrap();
        assert_abs_diff_eq!(m.g_zz, 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.g_xx, 2.0f64.sinh().powi(2), epsilon = 1e-12);
    }

    #[test]
    fn su11_g_xx_vanishes_toward_zero() {
        let p = KernelParams::su11(2.0, 1.0, 1.0).unwrap();
        let m = metric_at(1e-8, &p).unwrap();
        assert!(m.g_xx < 1e-14);
        assert!(m.g_zz > 0.0);
    }

    #[test]
    fn metric_rejects_flat_cases() {
        let p = KernelParams::su2(0.0, 1.0, 1.0).unwrap();
        assert!(metric_at(0.5, &p).is_err());
        let rbf = KernelParams::rbf(1.0).unwrap();
        assert!(metric_at(0.5, &rbf).is_err());
    }

    #[test]
    fn christoffel_probe_value() {
        // sqrt(2 alpha) = 2, so u = pi/4 at z = pi/8 and cot(pi/4) = 1.
        let p = KernelParams::su2(2.0, 1.0, 1.0).unwrap();
        let c = christoffel_closed_form(PI / 8.0, &p).unwrap();
        assert_abs_diff_eq!(c.gamma_x_xz, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.gamma_z_xx, -(PI / 2.0).sin() / 4.0, epsilon = 1e-12);
    }

    #[test]
    fn su11_gamma_x_xz_positive() {
        let p = KernelParams::su11(1.3, 1.0, 1.0).unwrap();
        for z in [0.1, 0.7, 2.2] {
            let c = christoffel_closed_form(z, &p).unwrap();
            assert!(c.gamma_x_xz > 0.0);
        }
    }

    #[test]
    fn christoffel_rejects_singular_probe() {
        let p = KernelParams::su2(2.0, 1.0, 1.0).unwrap();
        // u = pi at z = pi/2
        assert!(matches!(
            christoffel_closed_form(PI / 2.0, &p),
            Err(Error::SingularPoint { .. })
        ));
    }

    #[test]
    fn closed_form_scalar_is_exactly_plus_minus_four_over_k() {
        let p = KernelParams::su2(1.0, 1.0, 1.0).unwrap();
        let r = curvature(0.5, &p, CurvatureMethod::ClosedForm).unwrap();
        assert_eq!(r.ricci_scalar, 4.0);

        let p = KernelParams::su11(1.0, 2.0, 1.0).unwrap();
        let r = curvature(0.5, &p, CurvatureMethod::ClosedForm).unwrap();
        assert_eq!(r.ricci_scalar, -2.0);
    }

    #[test]
    fn closed_form_ricci_tensor_contracts_to_the_scalar() {
        for p in [
            KernelParams::su2(1.7, 2.0, 1.0).unwrap(),
            KernelParams::su11(0.6, 1.5, 1.0).unwrap(),
        ] {
            let z = 0.4;
            let r = curvature(z, &p, CurvatureMethod::ClosedForm).unwrap();
            let g = metric_at(z, &p).unwrap();
            let contracted = r.ricci_xx / g.g_xx + r.ricci_zz / g.g_zz;
            assert_abs_diff_eq!(contracted, r.ricci_scalar, epsilon = 1e-12);
        }
    }

    #[test]
    fn finite_difference_matches_closed_form_scalar() {
        let p = KernelParams::su2(2.0, 1.0, 1.0).unwrap();
        let r = curvature(0.5, &p, CurvatureMethod::FiniteDifference).unwrap();
        assert_abs_diff_eq!(r.ricci_scalar, 4.0, epsilon = 1e-6);

        let p = KernelParams::su11(2.0, 2.0, 1.0).unwrap();
        let r = curvature(0.8, &p, CurvatureMethod::FiniteDifference).unwrap();
        assert_abs_diff_eq!(r.ricci_scalar, -2.0, epsilon = 1e-6);
    }

    #[test]
    fn sphere_mesh_closes_with_expected_radius() {
        let p = KernelParams::su2(2.0, 1.0, 1.0).unwrap();
        let arch = PI / 2.0; // u = 2z spans [0, pi]
        let mesh =
            revolution_surface_mesh(&p, (0.0, arch), (0.0, 2.0 * PI), (41, 32)).unwrap();
        assert!(mesh.warning().is_none());
        let max_r = mesh
            .vertices()
            .iter()
            .map(|v| (v[0] * v[0] + v[1] * v[1]).sqrt())
            .fold(0.0f64, f64::max);
        assert_abs_diff_eq!(max_r, 0.5f64.sqrt(), epsilon = 1e-3);
        // poles: the profile radius returns to zero at both ends
        let first = mesh.vertex(0, 0);
        let last = mesh.vertex(40, 0);
        assert!(first[0].hypot(first[1]) < 1e-12);
        assert!(last[0].hypot(last[1]) < 1e-9);
    }

    #[test]
    fn smallest_mesh_is_finite() {
        let p = KernelParams::su11(1.0, 1.0, 1.0).unwrap();
        let mesh = revolution_surface_mesh(&p, (0.0, 1.0), (0.0, PI), (2, 2)).unwrap();
        assert_eq!(mesh.vertices().len(), 4);
        assert!(mesh
            .vertices()
            .iter()
            .all(|v| v.iter().all(|c| c.is_finite())));
    }

    #[test]
    fn pseudosphere_band_flares_and_warns() {
        let p = KernelParams::su11(2.0, 1.0, 1.0).unwrap();
        let mesh = revolution_surface_mesh(&p, (0.0, 1.5), (0.0, PI), (24, 8)).unwrap();
        assert!(mesh.warning().is_some());
        // radial profile strictly increasing in z
        let radii: Vec<f64> = (0..mesh.n_z())
            .map(|i| {
                let v = mesh.vertex(i, 0);
                v[0].hypot(v[1])
            })
            .collect();
        assert!(radii.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn su2_mesh_rejects_multi_arch_range() {
        let p = KernelParams::su2(2.0, 1.0, 1.0).unwrap();
        assert!(revolution_surface_mesh(&p, (0.0, 3.0), (0.0, PI), (8, 8)).is_err());
    }

    #[test]
    fn mesh_exports_have_expected_shape() {
        let p = KernelParams::su2(2.0, 1.0, 1.0).unwrap();
        let mesh = revolution_surface_mesh(&p, (0.1, 1.4), (0.0, PI), (5, 4)).unwrap();
        let mut csv = Vec::new();
        mesh.write_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert_eq!(text.lines().count(), 1 + 20);
        assert!(text.starts_with("z_index,x_index,x,y,z"));

        let mut obj = Vec::new();
        mesh.write_obj(&mut obj).unwrap();
        let text = String::from_utf8(obj).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 20);
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 2 * 4 * 3);
    }
}
