//! Sequential minimal optimization for the soft-margin dual on a
//! precomputed kernel matrix.
//!
//! Minimizes f(α) = ½ αᵀQα − eᵀα over 0 ≤ α_i ≤ C, Σ y_i α_i = 0, with
//! Q_ij = y_i y_j K_ij. Pairs are chosen by the maximal-violating-pair
//! rule on the gradient; when a chosen pair cannot move (degenerate
//! kernel rows), second choices are scanned in a seeded order, which is
//! the only use of randomness. Identical inputs and seed give identical
//! iterates bit for bit.

use crate::kernels::GramMatrix;
use crate::rng;

pub(crate) struct Solution {
    pub alpha: Vec<f64>,
    pub bias: f64,
    pub iterations: usize,
    pub converged: bool,
}

struct State<'a> {
    gram: &'a GramMatrix,
    labels: &'a [f64],
    c: f64,
    alpha: Vec<f64>,
    /// G_i = (Qα)_i − 1
    grad: Vec<f64>,
}

impl<'a> State<'a> {
    /// v_t = −y_t G_t; the KKT gap is max_{I_up} v − min_{I_low} v.
    fn violation(&self, t: usize) -> f64 {
        -self.labels[t] * self.grad[t]
    }

    fn in_up(&self, t: usize) -> bool {
        (self.labels[t] > 0.0 && self.alpha[t] < self.c)
            || (self.labels[t] < 0.0 && self.alpha[t] > 0.0)
    }

    fn in_low(&self, t: usize) -> bool {
        (self.labels[t] > 0.0 && self.alpha[t] > 0.0)
            || (self.labels[t] < 0.0 && self.alpha[t] < self.c)
    }

    /// Maximal violating pair: argmax v over I_up and argmin v over I_low.
    /// First index wins ties, so selection is order-deterministic.
    fn select(&self) -> Option<(usize, usize, f64)> {
        let n = self.labels.len();
        let mut up: Option<(usize, f64)> = None;
        let mut low: Option<(usize, f64)> = None;
        for t in 0..n {
            let v = self.violation(t);
            if self.in_up(t) && up.map_or(true, |(_, best)| v > best) {
                up = Some((t, v));
            }
            if self.in_low(t) && low.map_or(true, |(_, best)| v < best) {
                low = Some((t, v));
            }
        }
        let ((i, vi), (j, vj)) = (up?, low?);
        Some((i, j, vi - vj))
    }

    /// Optimize the pair along the feasible direction α_i += y_i δ,
    /// α_j −= y_j δ. Returns the realized |δ|.
    fn step(&mut self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let (yi, yj) = (self.labels[i], self.labels[j]);
        let slope = self.violation(i) - self.violation(j);

        // Box constraints on δ from both coordinates.
        let (lo_i, hi_i) = if yi > 0.0 {
            (-self.alpha[i], self.c - self.alpha[i])
        } else {
            (self.alpha[i] - self.c, self.alpha[i])
        };
        let (lo_j, hi_j) = if yj > 0.0 {
            (self.alpha[j] - self.c, self.alpha[j])
        } else {
            (-self.alpha[j], self.c - self.alpha[j])
        };
        let lo = lo_i.max(lo_j);
        let hi = hi_i.min(hi_j);
        if !(hi > lo) {
            return 0.0;
        }

        let k_ii = self.gram.real_at(i, i);
        let k_jj = self.gram.real_at(j, j);
        let k_ij = self.gram.real_at(i, j);
        let eta = k_ii + k_jj - 2.0 * k_ij;

        let delta = if eta > 1e-12 {
            (slope / eta).clamp(lo, hi)
        } else {
            // Objective is linear (or degenerate) along the direction;
            // the minimum sits at an endpoint.
            let obj = |d: f64| -slope * d + 0.5 * eta * d * d;
            if obj(hi) <= obj(lo) {
                hi
            } else {
                lo
            }
        };
        if delta == 0.0 {
            return 0.0;
        }

        let old_i = self.alpha[i];
        let old_j = self.alpha[j];
        self.alpha[i] = (old_i + yi * delta).clamp(0.0, self.c);
        self.alpha[j] = (old_j - yj * delta).clamp(0.0, self.c);
        let d_i = self.alpha[i] - old_i;
        let d_j = self.alpha[j] - old_j;
        if d_i == 0.0 && d_j == 0.0 {
            return 0.0;
        }

        let row_i = self.gram.real_row(i);
        let row_j = self.gram.real_row(j);
        for t in 0..self.labels.len() {
            self.grad[t] += self.labels[t] * (yi * d_i * row_i[t] + yj * d_j * row_j[t]);
        }
        delta.abs()
    }

    fn bias(&self) -> f64 {
        let n = self.labels.len();
        let mut free_sum = 0.0;
        let mut free_count = 0usize;
        let mut up_max = f64::NEG_INFINITY;
        let mut low_min = f64::INFINITY;
        for t in 0..n {
            let v = self.violation(t);
            if self.alpha[t] > 0.0 && self.alpha[t] < self.c {
                free_sum += v;
                free_count += 1;
            }
            if self.in_up(t) {
                up_max = up_max.max(v);
            }
            if self.in_low(t) {
                low_min = low_min.min(v);
            }
        }
        if free_count > 0 {
            free_sum / free_count as f64
        } else if up_max.is_finite() && low_min.is_finite() {
            0.5 * (up_max + low_min)
        } else {
            0.0
        }
    }
}

pub(crate) fn solve(
    gram: &GramMatrix,
    labels: &[f64],
    c: f64,
    tolerance: f64,
    max_iterations: usize,
    seed: u64,
) -> Solution {
    let n = labels.len();
    let mut state = State {
        gram,
        labels,
        c,
        alpha: vec![0.0; n],
        grad: vec![-1.0; n],
    };
    let mut scan_order: Vec<usize> = (0..n).collect();
    rng::shuffle(&mut rng::seeded(seed), &mut scan_order);

    let mut iterations = 0usize;
    let mut converged = false;
    while iterations < max_iterations {
        let Some((i, j, gap)) = state.select() else {
            break;
        };
        if gap <= tolerance {
            converged = true;
            break;
        }
        let mut moved = state.step(i, j);
        if moved == 0.0 {
            // Second choice: scan the seeded order for any low-side
            // partner that lets the top violator move.
            for &cand in &scan_order {
                if cand != i && state.in_low(cand) && state.violation(cand) < state.violation(i) {
                    moved = state.step(i, cand);
                    if moved > 0.0 {
                        break;
                    }
                }
            }
        }
        if moved == 0.0 {
            break;
        }
        iterations += 1;
    }
    if !converged {
        if let Some((_, _, gap)) = state.select() {
            converged = gap <= tolerance;
        } else {
            converged = true;
        }
    }

    let bias = state.bias();
    Solution {
        alpha: state.alpha,
        bias,
        iterations,
        converged,
    }
}
