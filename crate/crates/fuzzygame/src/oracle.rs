//! Dense-grid reference evaluators for the fuzzy integrals.
//!
//! These walk a fine `t` grid instead of reducing to the distinct values of
//! the integrand, so they share no code path with the closed evaluators in
//! [`crate::integral`]. They exist for the test suites; production code
//! should use the exact evaluators.

use crate::capacity::Capacity;
use crate::integral::{level_set, FiniteFunction};
use crate::tnorm::TNorm;

/// Midpoint Riemann sum of `t -> v(f_t)` over `[0, max f]` with the given
/// step. The integrand is a step function with at most `n` jumps of height
/// at most 1, so the error is bounded by `n * step`.
pub fn riemann_choquet(f: &FiniteFunction, cap: &Capacity, step: f64) -> f64 {
    let hi = f.max_value();
    if hi <= 0.0 {
        return 0.0;
    }
    let cells = (hi / step).ceil() as usize;
    let h = hi / cells as f64;
    let mut total = 0.0;
    for j in 0..cells {
        let t = (j as f64 + 0.5) * h;
        total += h * cap.value(level_set(f, t));
    }
    total
}

/// Brute-force maximum of `t -> v(f_t) * t` over the grid
/// `{0, step, 2*step, ..., 1}`. Underestimates the supremum by at most one
/// step because the norm is 1-Lipschitz-bounded in its second argument on
/// the relevant scale.
pub fn grid_t_normed(f: &FiniteFunction, cap: &Capacity, tnorm: &TNorm, step: f64) -> f64 {
    let cells = (1.0 / step).ceil() as usize;
    let mut best = 0.0f64;
    for j in 0..=cells {
        let t = (j as f64 / cells as f64).min(1.0);
        let v = cap.value(level_set(f, t));
        best = best.max(tnorm.apply(v, t).expect("grid point in [0,1]"));
    }
    best
}

/// Brute-force Sugeno evaluation, i.e. [`grid_t_normed`] with the minimum.
pub fn grid_sugeno(f: &FiniteFunction, cap: &Capacity, step: f64) -> f64 {
    grid_t_normed(f, cap, &TNorm::Min, step)
}
