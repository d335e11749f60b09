//! Seeded generators for capacities, densities and functions.
//!
//! All generated values live on a dyadic grid (multiples of 1/1024) so that
//! the algebra of the built-in t-norms stays exact in f64: sums, products
//! and complements of such values round to nothing. Used by the axiom
//! checker, the quasiconvexity sampler and the test suites.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::capacity::{Capacity, Density};
use crate::integral::FiniteFunction;
use crate::space::{mask_points, FiniteSpace};

/// Denominator of the dyadic value grid.
pub const DYADIC_DENOM: u32 = 1024;

/// Deterministic generator for a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from {0, 1/1024, ..., 1}.
pub fn dyadic_unit(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(0..=DYADIC_DENOM) as f64 / DYADIC_DENOM as f64
}

/// Random density: dyadic entries with one entry forced to 1.
pub fn random_density(space: &FiniteSpace, rng: &mut ChaCha8Rng) -> Density {
    let mut d: Vec<f64> = space.points().map(|_| dyadic_unit(rng)).collect();
    let top = rng.random_range(0..d.len());
    d[top] = 1.0;
    Density::new(space.clone(), d).expect("generated density is valid")
}

/// Random capacity: dyadic raw values closed under subset maxima, with the
/// endpoints pinned to 0 and 1.
pub fn random_capacity(space: &FiniteSpace, rng: &mut ChaCha8Rng) -> Capacity {
    let count = space.subset_count();
    let mut values = vec![0.0; count];
    for mask in 1..count {
        let mut v = dyadic_unit(rng);
        for i in mask_points(mask) {
            v = v.max(values[mask & !(1 << i)]);
        }
        values[mask] = v;
    }
    values[count - 1] = 1.0;
    Capacity::new(space.clone(), values).expect("generated capacity is valid")
}

/// Random possibility capacity.
pub fn random_possibility(space: &FiniteSpace, rng: &mut ChaCha8Rng) -> Capacity {
    Capacity::from_density(&random_density(space, rng))
}

/// Random function with dyadic values in `[0,1]`.
pub fn random_unit_function(space: &FiniteSpace, rng: &mut ChaCha8Rng) -> FiniteFunction {
    let v = space.points().map(|_| dyadic_unit(rng)).collect();
    FiniteFunction::new(space.clone(), v).expect("generated function is valid")
}

/// Random nonnegative function with values on the grid `{0, .., scale}`
/// in steps of `scale/1024`.
pub fn random_function(space: &FiniteSpace, scale: f64, rng: &mut ChaCha8Rng) -> FiniteFunction {
    let v = space.points().map(|_| scale * dyadic_unit(rng)).collect();
    FiniteFunction::new(space.clone(), v).expect("generated function is valid")
}

/// A weakly increasing piecewise-linear map of `[0,1]` into itself.
#[derive(Debug, Clone)]
pub struct MonotoneMap {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl MonotoneMap {
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.clamp(0.0, 1.0);
        let mut seg = self.xs.len() - 2;
        for i in 0..self.xs.len() - 1 {
            if x <= self.xs[i + 1] {
                seg = i;
                break;
            }
        }
        let (x0, x1) = (self.xs[seg], self.xs[seg + 1]);
        let (y0, y1) = (self.ys[seg], self.ys[seg + 1]);
        if x1 == x0 {
            return y1;
        }
        y0 + (x - x0) * (y1 - y0) / (x1 - x0)
    }
}

/// Random monotone map with a few dyadic breakpoints.
pub fn random_monotone_map(rng: &mut ChaCha8Rng) -> MonotoneMap {
    let mut xs = vec![0.0, dyadic_unit(rng), dyadic_unit(rng), 1.0];
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup();
    let mut ys: Vec<f64> = (0..xs.len()).map(|_| dyadic_unit(rng)).collect();
    ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    MonotoneMap { xs, ys }
}

/// A comonotone pair: both members are monotone reparametrizations of one
/// random base function, so they are never oppositely ordered.
pub fn comonotone_pair(
    space: &FiniteSpace,
    rng: &mut ChaCha8Rng,
) -> (FiniteFunction, FiniteFunction) {
    let base = random_unit_function(space, rng);
    let alpha = random_monotone_map(rng);
    let beta = random_monotone_map(rng);
    let f = base.map(|v| alpha.eval(v));
    let g = base.map(|v| beta.eval(v));
    (f, g)
}
