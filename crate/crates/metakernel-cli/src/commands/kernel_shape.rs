//! `kernel shape`: Re K((0,0), x′) sampled over x′ ∈ [−π, π]².

use std::io::Write;
use std::path::Path;

use metakernel::kernels::KernelEvaluator;
use metakernel::{Error, Result};

use super::build_params;

pub(crate) fn run(
    out_dir: &Path,
    family: &str,
    alpha: f64,
    k: f64,
    z: f64,
    gamma: f64,
    resolution: usize,
) -> Result<Vec<(String, bool)>> {
    if resolution < 2 {
        return Err(Error::InvalidParams(
            "shape resolution must be at least 2 (odd values include the exact center)".into(),
        ));
    }
    let params = build_params(family, alpha, k, z, gamma)?;
    let evaluator = KernelEvaluator::new(&params);
    let coord = |i: usize| {
        -std::f64::consts::PI
            + 2.0 * std::f64::consts::PI * i as f64 / (resolution - 1) as f64
    };
    let mut csv = Vec::new();
    writeln!(csv, "x0,x1,re_k")?;
    let origin = [0.0, 0.0];
    let mut peak_mass = 0.0f64;
    for i1 in 0..resolution {
        let x1 = coord(i1);
        for i0 in 0..resolution {
            let x0 = coord(i0);
            let value = evaluator.eval(&origin, &[x0, x1]).re;
            if value > 0.5 {
                peak_mass += 1.0;
            }
            writeln!(csv, "{x0},{x1},{value}")?;
        }
    }
    std::fs::write(out_dir.join("shape.csv"), csv)?;
    println!(
        "kernel shape for {family} (alpha={alpha}, k={k}, z={z}, gamma={gamma}): \
         {resolution}x{resolution} grid, {:.1}% of cells above 0.5",
        100.0 * peak_mass / (resolution * resolution) as f64
    );
    Ok(vec![("shape.csv".into(), true)])
}
