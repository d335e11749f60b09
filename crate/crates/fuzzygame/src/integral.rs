//! Choquet, Sugeno and t-normed integrals of finite functions against
//! capacities, and the functional-representation machinery.
//!
//! On a finite space the capacity of the level set `f_t = {f >= t}` is a
//! step function of `t` with steps at the values of `f`, and the map
//! `t -> v(f_t) * t` increases between steps because t-norms are monotone
//! in the second argument. The integrals are therefore evaluated exactly
//! over the distinct values of `f`; the dense-grid evaluators in
//! [`crate::oracle`] exist only to cross-check this reduction.

use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::capacity::{Capacity, CapacityError};
use crate::sample;
use crate::space::{FiniteSpace, Mask};
use crate::tnorm::TNorm;
use crate::ARITHMETIC_TOL;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntegralError {
    #[error("function value at point {index} is {value}, negative values are not integrable")]
    NegativeValue { index: usize, value: f64 },
    #[error("function value at point {index} is {value}, must lie in [0,1]")]
    RangeError { index: usize, value: f64 },
    #[error("function and capacity live on different spaces")]
    SpaceMismatch,
}

/// A real-valued function on the points of a finite space. Values must be
/// nonnegative; operations over `[0,1]` validate the upper bound themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteFunction {
    space: FiniteSpace,
    v: Vec<f64>,
}

impl FiniteFunction {
    pub fn new(space: FiniteSpace, v: Vec<f64>) -> Result<Self, IntegralError> {
        if v.len() != space.len() {
            return Err(IntegralError::SpaceMismatch);
        }
        for (index, &value) in v.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(IntegralError::NegativeValue { index, value });
            }
        }
        Ok(FiniteFunction { space, v })
    }

    pub fn constant(space: FiniteSpace, c: f64) -> Result<Self, IntegralError> {
        let n = space.len();
        Self::new(space, vec![c; n])
    }

    /// Indicator function of a subset.
    pub fn indicator(space: FiniteSpace, mask: Mask) -> Self {
        let v = space
            .points()
            .map(|i| f64::from(u8::from(mask & (1 << i) != 0)))
            .collect();
        FiniteFunction { space, v }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.v
    }

    pub fn value(&self, point: usize) -> f64 {
        self.v[point]
    }

    pub fn min_value(&self) -> f64 {
        self.v.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.v.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Pointwise transform. The result must again be nonnegative.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> FiniteFunction {
        let v = self.v.iter().map(|&x| f(x)).collect();
        FiniteFunction::new(self.space.clone(), v).expect("mapped function must stay nonnegative")
    }

    pub fn pointwise_max(&self, other: &FiniteFunction) -> FiniteFunction {
        assert_eq!(self.space, other.space);
        let v = self.v.iter().zip(&other.v).map(|(&a, &b)| a.max(b)).collect();
        FiniteFunction {
            space: self.space.clone(),
            v,
        }
    }

    pub fn pointwise_min(&self, other: &FiniteFunction) -> FiniteFunction {
        assert_eq!(self.space, other.space);
        let v = self.v.iter().zip(&other.v).map(|(&a, &b)| a.min(b)).collect();
        FiniteFunction {
            space: self.space.clone(),
            v,
        }
    }

    fn check_unit_range(&self) -> Result<(), IntegralError> {
        for (index, &value) in self.v.iter().enumerate() {
            if value > 1.0 + ARITHMETIC_TOL {
                return Err(IntegralError::RangeError { index, value });
            }
        }
        Ok(())
    }

    /// Sorted distinct values.
    fn distinct_values(&self) -> Vec<f64> {
        let mut w = self.v.clone();
        w.sort_by(|a, b| a.partial_cmp(b).unwrap());
        w.dedup();
        w
    }
}

/// Bitmask of the closed upper level set `{i : f(i) >= t}`. At `t = 0` this
/// is the whole space.
pub fn level_set(f: &FiniteFunction, t: f64) -> Mask {
    let mut mask = 0;
    for (i, &v) in f.values().iter().enumerate() {
        if v >= t {
            mask |= 1 << i;
        }
    }
    mask
}

/// Choquet integral: the area under `t -> v(f_t)`, evaluated as
/// `sum (w_i - w_{i-1}) * v(f_{w_i})` over the sorted distinct values of
/// `f` with `w_0 = 0`.
pub fn choquet(f: &FiniteFunction, cap: &Capacity) -> Result<f64, IntegralError> {
    if f.space() != cap.space() {
        return Err(IntegralError::SpaceMismatch);
    }
    for (index, &value) in f.values().iter().enumerate() {
        if value < 0.0 {
            return Err(IntegralError::NegativeValue { index, value });
        }
    }
    let mut total = 0.0;
    let mut prev = 0.0;
    for w in f.distinct_values() {
        if w <= 0.0 {
            continue;
        }
        total += (w - prev) * cap.value(level_set(f, w));
        prev = w;
    }
    Ok(total)
}

/// Sugeno integral: `max over t of min(v(f_t), t)`. Coincides with the
/// t-normed integral for the minimum norm.
pub fn sugeno(f: &FiniteFunction, cap: &Capacity) -> Result<f64, IntegralError> {
    t_normed(f, cap, &TNorm::Min)
}

/// t-normed integral: `max over t in [0,1] of v(f_t) * t` for a continuous
/// t-norm `*`.
pub fn t_normed(f: &FiniteFunction, cap: &Capacity, tnorm: &TNorm) -> Result<f64, IntegralError> {
    if f.space() != cap.space() {
        return Err(IntegralError::SpaceMismatch);
    }
    f.check_unit_range()?;
    let mut best = 0.0f64;
    for w in f.distinct_values() {
        let t = w.min(1.0);
        best = best.max(tnorm.eval(cap.value(level_set(f, t)), t));
    }
    Ok(best)
}

/// True iff `f` and `g` are never oppositely ordered:
/// `(f(x) - f(y)) * (g(x) - g(y)) >= 0` for every pair of points.
pub fn are_comonotone(f: &FiniteFunction, g: &FiniteFunction) -> Result<bool, IntegralError> {
    if f.space() != g.space() {
        return Err(IntegralError::SpaceMismatch);
    }
    let n = f.space().len();
    for x in 0..n {
        for y in (x + 1)..n {
            if (f.value(x) - f.value(y)) * (g.value(x) - g.value(y)) < 0.0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A functional from `[0,1]`-valued finite functions to `[0,1]`, the raw
/// material of the representation theorem. No axioms are assumed at
/// construction; [`check_axioms`] probes them.
#[derive(Clone)]
pub struct Functional {
    eval: Arc<dyn Fn(&FiniteFunction) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for Functional {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("Functional(..)")
    }
}

impl Functional {
    pub fn new(eval: impl Fn(&FiniteFunction) -> f64 + Send + Sync + 'static) -> Self {
        Functional {
            eval: Arc::new(eval),
        }
    }

    /// The t-normed integral against a fixed capacity.
    pub fn t_normed(cap: Capacity, tnorm: TNorm) -> Self {
        Functional::new(move |f| t_normed(f, &cap, &tnorm).expect("function in [0,1]"))
    }

    /// The Sugeno integral against a fixed capacity.
    pub fn sugeno(cap: Capacity) -> Self {
        Functional::t_normed(cap, TNorm::Min)
    }

    /// The Choquet integral against a fixed capacity.
    pub fn choquet(cap: Capacity) -> Self {
        Functional::new(move |f| choquet(f, &cap).expect("function is nonnegative"))
    }

    pub fn eval(&self, f: &FiniteFunction) -> f64 {
        (self.eval)(f)
    }
}

/// Witness payloads for [`check_axioms`] violations.
#[derive(Debug, Clone)]
pub enum FunctionalViolation {
    /// `mu(1_X)` is not 1.
    Normalization { value: f64 },
    /// `phi <= psi` pointwise but `mu(phi) > mu(psi)`.
    Monotonicity {
        lower: Vec<f64>,
        upper: Vec<f64>,
        lower_value: f64,
        upper_value: f64,
    },
    /// Comonotone `phi`, `psi` with `mu(phi v psi) != mu(phi) v mu(psi)`.
    ComonotoneMaxitivity {
        f: Vec<f64>,
        g: Vec<f64>,
        joint: f64,
        separate: f64,
    },
    /// `mu(c * phi) != c * mu(phi)`.
    Homogeneity {
        c: f64,
        f: Vec<f64>,
        scaled_value: f64,
        expected: f64,
    },
}

#[derive(Debug, Clone)]
pub struct FunctionalAxiomReport {
    pub samples: u32,
    pub violations: Vec<FunctionalViolation>,
}

impl FunctionalAxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Probes the four representation axioms on pseudo-random samples:
/// normalization, monotonicity on ordered pairs, maxitivity on comonotone
/// pairs, and homogeneity `mu(c * phi) = c * mu(phi)` with the scalar `c`
/// drawn from `[0,1]`. Violations are reported with witnesses.
pub fn check_axioms(
    mu: &Functional,
    space: &FiniteSpace,
    tnorm: &TNorm,
    samples: u32,
    seed: u64,
) -> FunctionalAxiomReport {
    let mut rng = sample::rng(seed);
    let mut violations = Vec::new();

    let one = FiniteFunction::constant(space.clone(), 1.0).unwrap();
    let v1 = mu.eval(&one);
    if (v1 - 1.0).abs() > ARITHMETIC_TOL {
        violations.push(FunctionalViolation::Normalization { value: v1 });
    }

    for _ in 0..samples {
        let g = sample::random_unit_function(space, &mut rng);
        let h = sample::random_unit_function(space, &mut rng);
        let lower = g.pointwise_min(&h);
        let upper = g.pointwise_max(&h);
        let (lv, uv) = (mu.eval(&lower), mu.eval(&upper));
        if lv > uv + ARITHMETIC_TOL {
            violations.push(FunctionalViolation::Monotonicity {
                lower: lower.values().to_vec(),
                upper: upper.values().to_vec(),
                lower_value: lv,
                upper_value: uv,
            });
        }

        let (f, g) = sample::comonotone_pair(space, &mut rng);
        let joint = mu.eval(&f.pointwise_max(&g));
        let separate = mu.eval(&f).max(mu.eval(&g));
        if (joint - separate).abs() > ARITHMETIC_TOL {
            violations.push(FunctionalViolation::ComonotoneMaxitivity {
                f: f.values().to_vec(),
                g: g.values().to_vec(),
                joint,
                separate,
            });
        }

        let phi = sample::random_unit_function(space, &mut rng);
        let c = rng.random_range(0..=8) as f64 / 8.0;
        let scaled = phi.map(|v| tnorm.eval(c, v));
        let scaled_value = mu.eval(&scaled);
        let expected = tnorm.eval(c, mu.eval(&phi));
        if (scaled_value - expected).abs() > ARITHMETIC_TOL {
            violations.push(FunctionalViolation::Homogeneity {
                c,
                f: phi.values().to_vec(),
                scaled_value,
                expected,
            });
        }
    }

    FunctionalAxiomReport {
        samples,
        violations,
    }
}

/// Recovers the capacity represented by a functional: `v(A) = mu(1_A)` for
/// nonempty `A` and `v(empty) = 0`. On a finite space the indicator of `A`
/// is the pointwise-least function that is 1 on `A`, and a monotone
/// functional attains its infimum over that family there, so no
/// approximation is involved. Fails if the recovered table is not a
/// capacity, which signals that the functional is outside the represented
/// class.
pub fn recover_capacity(mu: &Functional, space: &FiniteSpace) -> Result<Capacity, CapacityError> {
    let count = space.subset_count();
    let mut values = vec![0.0; count];
    for (mask, v) in values.iter_mut().enumerate().skip(1) {
        *v = mu.eval(&FiniteFunction::indicator(space.clone(), mask));
    }
    Capacity::from_computed(space.clone(), values)
}
