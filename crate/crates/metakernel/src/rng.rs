//! Seeded randomness with a fully pinned bit-level pipeline.
//!
//! Everything random in this crate flows from ChaCha8 seeded with a u64.
//! Floats and Gaussians are derived from the raw u64 stream by the explicit
//! conversions below, so generated data is reproducible bit-for-bit on any
//! platform (and re-implementable in other languages from this file alone).

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub(crate) fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in [0, 1): top 53 bits of the next u64.
pub(crate) fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// Uniform in (0, 1], for logarithms.
fn unit_f64_open_low(rng: &mut ChaCha8Rng) -> f64 {
    ((rng.next_u64() >> 11) + 1) as f64 / (1u64 << 53) as f64
}

/// One Box-Muller draw: a pair of independent standard normals.
pub(crate) fn gaussian_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let u1 = unit_f64_open_low(rng);
    let u2 = unit_f64(rng);
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = 2.0 * std::f64::consts::PI * u2;
    (r * theta.cos(), r * theta.sin())
}

/// Uniform integer in [0, bound) by rejection, bias-free.
pub(crate) fn below(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    let zone = u64::MAX - (u64::MAX - bound + 1) % bound;
    loop {
        let v = rng.next_u64();
        if v <= zone {
            return v % bound;
        }
    }
}

/// Fisher-Yates shuffle driven by [`below`].
pub(crate) fn shuffle<T>(rng: &mut ChaCha8Rng, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = below(rng, (i + 1) as u64) as usize;
        items.swap(i, j);
    }
}
