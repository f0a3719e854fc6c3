//! Shared helpers for the integration suites: seeded parameter samplers
//! and the Fock-sum kernel oracle.

use metakernel::coherent_states::{build_state, overlap};
use metakernel::{KernelFamily, KernelParams};
use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

pub fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * unit(rng)
}

/// Random valid compact-family parameters (2k in 1..=8); resamples when a
/// draw lands inside the tan-pole guard band.
pub fn sample_su2(rng: &mut ChaCha8Rng) -> KernelParams {
    loop {
        let alpha = uniform(rng, 0.0, 2.5);
        let two_k = 1 + (rng.next_u64() % 8) as i32;
        let z = uniform(rng, 0.2, 4.6);
        if let Ok(p) = KernelParams::su2(alpha, two_k as f64 / 2.0, z) {
            return p;
        }
    }
}

/// Random valid hyperbolic-family parameters with real k in [0.5, 3].
pub fn sample_su11(rng: &mut ChaCha8Rng) -> KernelParams {
    let alpha = uniform(rng, 0.02, 2.5);
    let k = uniform(rng, 0.5, 3.0);
    let z = uniform(rng, 0.2, 4.6);
    KernelParams::su11(alpha, k, z).expect("su11 parameters in range are valid")
}

pub fn sample_family(rng: &mut ChaCha8Rng, family: KernelFamily) -> KernelParams {
    match family {
        KernelFamily::AlphaSU2 => sample_su2(rng),
        KernelFamily::AlphaSU11 => sample_su11(rng),
        KernelFamily::Rbf => KernelParams::rbf(uniform(rng, 0.05, 10.0)).unwrap(),
    }
}

/// Brute-force kernel value: build both states and take their overlap.
/// `x_base` exercises the phase convention; only the difference matters.
pub fn fock_kernel_1d(delta: f64, params: &KernelParams, x_base: f64) -> Complex64 {
    let a = build_state(x_base + delta, params).expect("state construction");
    let b = build_state(x_base, params).expect("state construction");
    overlap(&a, &b).expect("states share parameters")
}
