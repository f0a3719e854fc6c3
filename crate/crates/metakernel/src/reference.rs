//! Slow-but-sure reference solvers, compiled only for test suites (feature
//! `reference`). These share no state or bookkeeping with the production
//! solver: every quantity is recomputed from scratch.

use crate::kernels::GramMatrix;

/// Maximize the soft-margin dual W(α) = Σα − ½ αᵀQα over the box [0, C]ⁿ
/// and the hyperplane Σ y_i α_i = 0 by exhaustive pairwise coordinate
/// ascent: sweep every ordered pair, solve its one-dimensional subproblem
/// exactly (with projection onto the box), and repeat until a full sweep
/// no longer moves the objective. Deterministic; O(n³) per sweep.
pub fn pairwise_coordinate_ascent(gram: &GramMatrix, ys: &[f64], c: f64) -> Vec<f64> {
    let n = ys.len();
    let mut alpha = vec![0.0; n];
    // (Qα)_i recomputed fresh per pair: no incremental gradient to trust.
    let q_alpha_at = |alpha: &[f64], i: usize| -> f64 {
        let row = gram.real_row(i);
        (0..n).map(|t| ys[i] * ys[t] * row[t] * alpha[t]).sum()
    };
    let objective = |alpha: &[f64]| -> f64 {
        let mut quad = 0.0;
        for i in 0..n {
            if alpha[i] == 0.0 {
                continue;
            }
            quad += alpha[i] * q_alpha_at(alpha, i);
        }
        alpha.iter().sum::<f64>() - 0.5 * quad
    };

    let mut current = objective(&alpha);
    for _sweep in 0..100_000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                // feasible direction d = y_i e_i − y_j e_j scaled by δ
                let slope = ys[i] * (1.0 - q_alpha_at(&alpha, i))
                    - ys[j] * (1.0 - q_alpha_at(&alpha, j));
                let eta = gram.real_at(i, i) + gram.real_at(j, j) - 2.0 * gram.real_at(i, j);

                let (lo_i, hi_i) = if ys[i] > 0.0 {
                    (-alpha[i], c - alpha[i])
                } else {
                    (alpha[i] - c, alpha[i])
                };
                let (lo_j, hi_j) = if ys[j] > 0.0 {
                    (alpha[j] - c, alpha[j])
                } else {
                    (-alpha[j], c - alpha[j])
                };
                let lo = lo_i.max(lo_j);
                let hi = hi_i.min(hi_j);
                if !(hi > lo) {
                    continue;
                }

                let delta = if eta > 1e-12 {
                    (slope / eta).clamp(lo, hi)
                } else {
                    // degenerate direction: evaluate the true objective at
                    // both endpoints and keep the better one
                    let probe = |d: f64| {
                        let mut trial = alpha.clone();
                        trial[i] = (trial[i] + ys[i] * d).clamp(0.0, c);
                        trial[j] = (trial[j] - ys[j] * d).clamp(0.0, c);
                        objective(&trial)
                    };
                    if probe(hi) >= probe(lo) {
                        hi
                    } else {
                        lo
                    }
                };
                if delta == 0.0 {
                    continue;
                }
                let old_i = alpha[i];
                let old_j = alpha[j];
                alpha[i] = (alpha[i] + ys[i] * delta).clamp(0.0, c);
                alpha[j] = (alpha[j] - ys[j] * delta).clamp(0.0, c);
                moved = moved.max((alpha[i] - old_i).abs() + (alpha[j] - old_j).abs());
            }
        }
        let next = objective(&alpha);
        if next - current < 1e-13 && moved < 1e-12 {
            break;
        }
        current = next;
    }
    alpha
}
