//! Capacities on finite spaces, possibility/necessity subclasses, duality
//! and the density correspondence.
//!
//! A capacity is a set function `v` with `v(empty) = 0`, `v(X) = 1` that is
//! monotone under inclusion. A possibility capacity additionally satisfies
//! `v(A u B) = max(v(A), v(B))` and is determined by its density, the vector
//! of singleton values. Necessity capacities are the duals of possibility
//! capacities.

use crate::space::{mask_points, FiniteSpace, Mask};
use crate::ARITHMETIC_TOL;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CapacityError {
    #[error("expected one value per subset ({expected}), got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("not normalized: value on {which} is {value}")]
    NotNormalized { which: &'static str, value: f64 },
    #[error("not monotone: v({small:#b}) = {small_value} exceeds v({large:#b}) = {large_value}")]
    NotMonotone {
        small: Mask,
        large: Mask,
        small_value: f64,
        large_value: f64,
    },
    #[error("not a possibility capacity: v({mask:#b}) = {value} but the singleton maximum is {singleton_max}")]
    NotPossibility {
        mask: Mask,
        value: f64,
        singleton_max: f64,
    },
    #[error("density entry {index} is {value}, outside [0,1]")]
    ValueOutOfRange { index: usize, value: f64 },
    #[error("density maximum is {max}, must be 1")]
    DensityNotNormalized { max: f64 },
    #[error("operands live on different spaces")]
    SpaceMismatch,
}

/// Classification of a capacity. A capacity that is both a possibility and
/// a necessity capacity (for example a point mass) is tagged `Possibility`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapacityClass {
    General,
    Possibility,
    Necessity,
}

/// Per-point possibility values in `[0,1]` with maximum exactly 1. The
/// canonical representation of a possibility capacity.
#[derive(Debug, Clone, PartialEq)]
pub struct Density {
    space: FiniteSpace,
    d: Vec<f64>,
}

impl Density {
    /// Validates the entries and snaps the maximal ones to exactly 1.
    /// Entries may drift from grid arithmetic by up to 1e-12.
    pub fn new(space: FiniteSpace, d: Vec<f64>) -> Result<Self, CapacityError> {
        if d.len() != space.len() {
            return Err(CapacityError::WrongLength {
                expected: space.len(),
                got: d.len(),
            });
        }
        for (i, &v) in d.iter().enumerate() {
            if !v.is_finite() || !(-ARITHMETIC_TOL..=1.0 + ARITHMETIC_TOL).contains(&v) {
                return Err(CapacityError::ValueOutOfRange { index: i, value: v });
            }
        }
        let max = d.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if (max - 1.0).abs() > ARITHMETIC_TOL {
            return Err(CapacityError::DensityNotNormalized { max });
        }
        let d = d
            .into_iter()
            .map(|v| if v == max { 1.0 } else { v.clamp(0.0, 1.0) })
            .collect();
        Ok(Density { space, d })
    }

    /// Density that is 1 at `point` and 0 elsewhere.
    pub fn point_mass(space: FiniteSpace, point: usize) -> Self {
        let d = space.points().map(|i| f64::from(u8::from(i == point))).collect();
        Density { space, d }
    }

    /// The all-ones density, i.e. the greatest element of the possibility
    /// capacities.
    pub fn all_ones(space: FiniteSpace) -> Self {
        let d = vec![1.0; space.len()];
        Density { space, d }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.d
    }

    pub fn value(&self, point: usize) -> f64 {
        self.d[point]
    }
}

/// A normalized monotone set function on all subsets of a finite space.
/// Values are stored densely, indexed by subset bitmask.
#[derive(Debug, Clone, PartialEq)]
pub struct Capacity {
    space: FiniteSpace,
    values: Vec<f64>,
}

fn validate(space: &FiniteSpace, values: &[f64], tol: f64) -> Result<(), CapacityError> {
    let count = space.subset_count();
    if values.len() != count {
        return Err(CapacityError::WrongLength {
            expected: count,
            got: values.len(),
        });
    }
    if values[0].is_nan() || values[0].abs() > tol {
        return Err(CapacityError::NotNormalized {
            which: "the empty set",
            value: values[0],
        });
    }
    // One-point-removed comparisons cover all inclusion pairs by transitivity.
    for mask in 1..count {
        for i in mask_points(mask) {
            let sub = mask & !(1 << i);
            if values[sub] > values[mask] + tol {
                return Err(CapacityError::NotMonotone {
                    small: sub,
                    large: mask,
                    small_value: values[sub],
                    large_value: values[mask],
                });
            }
        }
    }
    let full = space.full_mask();
    if values[full].is_nan() || (values[full] - 1.0).abs() > tol {
        return Err(CapacityError::NotNormalized {
            which: "the whole space",
            value: values[full],
        });
    }
    for (mask, &v) in values.iter().enumerate() {
        if !v.is_finite() || !(-tol..=1.0 + tol).contains(&v) {
            return Err(CapacityError::NotMonotone {
                small: mask,
                large: mask,
                small_value: v,
                large_value: v,
            });
        }
    }
    Ok(())
}

impl Capacity {
    /// Validates directly constructed values. Comparisons are exact: the
    /// empty set must map to 0, the whole space to 1, and no inclusion pair
    /// may be out of order.
    pub fn new(space: FiniteSpace, values: Vec<f64>) -> Result<Self, CapacityError> {
        validate(&space, &values, 0.0)?;
        Ok(Capacity { space, values })
    }

    /// Validates arithmetic-derived values with tolerance 1e-12 and snaps
    /// the endpoints.
    pub fn from_computed(space: FiniteSpace, values: Vec<f64>) -> Result<Self, CapacityError> {
        Self::from_computed_tol(space, values, ARITHMETIC_TOL)
    }

    pub(crate) fn from_computed_tol(
        space: FiniteSpace,
        mut values: Vec<f64>,
        tol: f64,
    ) -> Result<Self, CapacityError> {
        validate(&space, &values, tol)?;
        values[0] = 0.0;
        let full = space.full_mask();
        values[full] = 1.0;
        for v in values.iter_mut() {
            *v = v.clamp(0.0, 1.0);
        }
        Ok(Capacity { space, values })
    }

    /// The possibility capacity generated by a density:
    /// `v(F) = max of the density over F`.
    pub fn from_density(d: &Density) -> Self {
        let space = d.space().clone();
        let count = space.subset_count();
        let mut values = vec![0.0f64; count];
        for mask in 1..count {
            let low = mask & (mask - 1);
            let i = (mask ^ low).trailing_zeros() as usize;
            values[mask] = values[low].max(d.value(i));
        }
        Capacity { space, values }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, mask: Mask) -> f64 {
        self.values[mask]
    }

    /// The density of a possibility capacity, i.e. its restriction to
    /// singletons. Fails with `NotPossibility` otherwise.
    pub fn density(&self) -> Result<Density, CapacityError> {
        self.check_possibility()?;
        let d: Vec<f64> = self
            .space
            .points()
            .map(|i| self.values[self.space.singleton(i)])
            .collect();
        Density::new(self.space.clone(), d)
    }

    /// True iff `v(A u B) = max(v(A), v(B))` for every pair of subsets.
    /// Checked pair-exhaustively on small spaces; on larger spaces the
    /// equivalent singleton characterization `v(F) = max of v on the
    /// singletons of F` is used.
    pub fn is_possibility(&self) -> bool {
        self.check_possibility().is_ok()
    }

    fn check_possibility(&self) -> Result<(), CapacityError> {
        let count = self.space.subset_count();
        if self.space.len() <= 12 {
            for a in 0..count {
                for b in 0..count {
                    let u = a | b;
                    if self.values[u] != self.values[a].max(self.values[b]) {
                        return Err(self.possibility_witness(u));
                    }
                }
            }
        } else {
            for mask in 1..count {
                let smax = mask_points(mask)
                    .map(|i| self.values[self.space.singleton(i)])
                    .fold(f64::NEG_INFINITY, f64::max);
                if self.values[mask] != smax {
                    return Err(self.possibility_witness(mask));
                }
            }
        }
        Ok(())
    }

    fn possibility_witness(&self, mask: Mask) -> CapacityError {
        let singleton_max = mask_points(mask)
            .map(|i| self.values[self.space.singleton(i)])
            .fold(0.0, f64::max);
        CapacityError::NotPossibility {
            mask,
            value: self.values[mask],
            singleton_max,
        }
    }

    /// True iff `v(A n B) = min(v(A), v(B))` for every pair of subsets.
    pub fn is_necessity(&self) -> bool {
        let count = self.space.subset_count();
        if self.space.len() <= 12 {
            for a in 0..count {
                for b in 0..count {
                    if self.values[a & b] != self.values[a].min(self.values[b]) {
                        return false;
                    }
                }
            }
            true
        } else {
            self.dual().is_possibility()
        }
    }

    /// The dual (conjugate) capacity `F -> 1 - v(X \ F)`. An involution
    /// exchanging the possibility and necessity classes.
    pub fn dual(&self) -> Capacity {
        let full = self.space.full_mask();
        let values = (0..=full).map(|m| 1.0 - self.values[full ^ m]).collect();
        Capacity {
            space: self.space.clone(),
            values,
        }
    }

    pub fn classify(&self) -> CapacityClass {
        if self.is_possibility() {
            CapacityClass::Possibility
        } else if self.is_necessity() {
            CapacityClass::Necessity
        } else {
            CapacityClass::General
        }
    }
}
