//! `geometry`: curvature verification at probe points plus the
//! revolution-surface mesh.

use std::io::Write;
use std::path::Path;

use metakernel::geometry::{curvature, revolution_surface_mesh, CurvatureMethod};
use metakernel::{Error, KernelFamily, Result};

use super::build_params;

pub(crate) fn run(
    out_dir: &Path,
    family: &str,
    alpha: f64,
    k: f64,
    probes: usize,
    mesh_resolution: usize,
) -> Result<Vec<(String, bool)>> {
    let params = build_params(family, alpha, k, 1.0, 0.0)?;
    if params.family() == KernelFamily::Rbf {
        return Err(Error::InvalidParams(
            "the RBF family is flat; geometry reports apply to the deformed families".into(),
        ));
    }
    if probes == 0 || mesh_resolution < 2 {
        return Err(Error::InvalidParams(
            "probes must be >= 1 and mesh resolution >= 2".into(),
        ));
    }
    let freq = (2.0 * alpha).sqrt();
    let (u_lo, u_hi) = match params.family() {
        KernelFamily::AlphaSU2 => (0.2, std::f64::consts::PI - 0.2),
        _ => (0.2, 2.8),
    };

    let mut csv = Vec::new();
    writeln!(csv, "z,method,ricci_xx,ricci_zz,ricci_scalar")?;
    let expected = match params.family() {
        KernelFamily::AlphaSU2 => 4.0 / k,
        _ => -4.0 / k,
    };
    let mut worst_fd = 0.0f64;
    for i in 0..probes {
        let u = u_lo + (u_hi - u_lo) * (i as f64 + 0.5) / probes as f64;
        let z = u / freq;
        for method in [CurvatureMethod::ClosedForm, CurvatureMethod::FiniteDifference] {
            let report = curvature(z, &params, method)?;
            let label = match method {
                CurvatureMethod::ClosedForm => "closed-form",
                CurvatureMethod::FiniteDifference => "finite-difference",
            };
            writeln!(
                csv,
                "{z},{label},{},{},{}",
                report.ricci_xx, report.ricci_zz, report.ricci_scalar
            )?;
            if method == CurvatureMethod::FiniteDifference {
                worst_fd = worst_fd.max((report.ricci_scalar - expected).abs());
            }
        }
    }
    std::fs::write(out_dir.join("curvature.csv"), csv)?;

    // full profile arch for the sphere, a finite band for the pseudo-sphere
    let z_range = match params.family() {
        KernelFamily::AlphaSU2 => (0.0, std::f64::consts::PI / freq),
        _ => (0.0, u_hi / freq),
    };
    let mesh = revolution_surface_mesh(
        &params,
        z_range,
        (0.0, 2.0 * std::f64::consts::PI),
        (mesh_resolution, mesh_resolution),
    )?;
    let mut mesh_csv = Vec::new();
    mesh.write_csv(&mut mesh_csv)?;
    std::fs::write(out_dir.join("mesh.csv"), mesh_csv)?;
    let mut obj = Vec::new();
    mesh.write_obj(&mut obj)?;
    std::fs::write(out_dir.join("mesh.obj"), obj)?;

    println!(
        "{family}: closed-form ricci scalar {expected}, worst finite-difference deviation {worst_fd:.2e} over {probes} probes"
    );
    if let Some(warning) = mesh.warning() {
        println!("note: {warning}");
    }
    Ok(vec![
        ("curvature.csv".into(), true),
        ("mesh.csv".into(), true),
        ("mesh.obj".into(), true),
    ])
}
