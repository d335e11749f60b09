//! Tensor products of capacities generated by a t-norm.
//!
//! For possibility capacities the joint density is the coordinate-wise
//! t-norm of the factor densities. For arbitrary capacities the general
//! construction takes, for each product subset `B`, the supremum over `t`
//! of `v1({x : v2(B_x) >= t}) * t` where `B_x` is the slice of `B` at `x`.
//! Both constructions coincide on possibility capacities.

use thiserror::Error;

use crate::capacity::{Capacity, CapacityError, Density};
use crate::space::{FiniteSpace, Mask, MAX_POINTS};
use crate::tnorm::TNorm;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TensorError {
    #[error("product of factor sizes is {got}, the subset-table cap allows at most {MAX_POINTS} points")]
    SizeError { got: usize },
    #[error("tensor product needs exactly two factors here, got {0}")]
    NotBinary(usize),
    #[error("operands live on different spaces")]
    SpaceMismatch,
    #[error("joint values do not form a capacity: {0}")]
    JointNotCapacity(CapacityError),
    #[error(transparent)]
    Space(#[from] crate::space::SpaceError),
}

/// Product of finitely many strategy spaces. Points are tuples of factor
/// points, flattened row-major with the first factor most significant, and
/// subsets of the product are bitmasks over the flattened points.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductSpace {
    factors: Vec<FiniteSpace>,
    flat: FiniteSpace,
}

impl ProductSpace {
    pub fn new(factors: Vec<FiniteSpace>) -> Result<Self, TensorError> {
        assert!(!factors.is_empty(), "at least one factor required");
        let total: usize = factors.iter().map(FiniteSpace::len).product();
        if total > MAX_POINTS {
            return Err(TensorError::SizeError { got: total });
        }
        if factors.len() == 1 {
            let flat = factors[0].clone();
            return Ok(ProductSpace { factors, flat });
        }
        let mut labels = Vec::with_capacity(total);
        let mut idx = vec![0usize; factors.len()];
        loop {
            let parts: Vec<&str> = idx
                .iter()
                .zip(&factors)
                .map(|(&i, s)| s.label(i))
                .collect();
            labels.push(format!("({})", parts.join(",")));
            // increment mixed-radix counter, last factor fastest
            let mut pos = factors.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < factors[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
        let flat = FiniteSpace::new(labels)?;
        Ok(ProductSpace { factors, flat })
    }

    pub fn factors(&self) -> &[FiniteSpace] {
        &self.factors
    }

    /// The product as a plain space; capacities and functions on the
    /// product live here.
    pub fn flat(&self) -> &FiniteSpace {
        &self.flat
    }

    /// Flat index of a tuple of factor points.
    pub fn flat_index(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.factors.len());
        let mut idx = 0;
        for (i, &c) in coords.iter().enumerate() {
            debug_assert!(c < self.factors[i].len());
            idx = idx * self.factors[i].len() + c;
        }
        idx
    }

    /// Tuple of factor points for a flat index.
    pub fn coords(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (i, s) in self.factors.iter().enumerate().rev() {
            out[i] = flat % s.len();
            flat /= s.len();
        }
        out
    }

    /// Preimage of a factor subset under the projection, as a subset of the
    /// product.
    pub fn cylinder(&self, factor: usize, subset: Mask) -> Mask {
        let mut out = 0;
        for flat in self.flat.points() {
            if subset & (1 << self.coords(flat)[factor]) != 0 {
                out |= 1 << flat;
            }
        }
        out
    }

    /// For a two-factor product: the slice `{y : (x, y) in B}` as a subset
    /// of the second factor.
    pub fn slice_at(&self, b: Mask, x: usize) -> Mask {
        debug_assert_eq!(self.factors.len(), 2);
        let n2 = self.factors[1].len();
        (b >> (x * n2)) & ((1 << n2) - 1)
    }
}

/// Joint density on a prebuilt product space: the entry at a tuple is the
/// t-norm of the factor entries. The maximum 1 is attained where every
/// factor attains 1.
pub fn joint_density(
    product: &ProductSpace,
    densities: &[Density],
    tnorm: &TNorm,
) -> Result<Density, TensorError> {
    if densities.len() != product.factors().len() {
        return Err(TensorError::SpaceMismatch);
    }
    for (d, s) in densities.iter().zip(product.factors()) {
        if d.space() != s {
            return Err(TensorError::SpaceMismatch);
        }
    }
    let flat = product.flat().clone();
    let mut entries = Vec::with_capacity(flat.len());
    for idx in flat.points() {
        let coords = product.coords(idx);
        let mut e = densities[0].value(coords[0]);
        for (d, &c) in densities.iter().zip(&coords).skip(1) {
            e = tnorm.eval(e, d.value(c));
        }
        entries.push(e);
    }
    Density::new(flat, entries).map_err(TensorError::JointNotCapacity)
}

/// Tensor product of two densities.
pub fn tensor_density(d1: &Density, d2: &Density, tnorm: &TNorm) -> Result<Density, TensorError> {
    let product = ProductSpace::new(vec![d1.space().clone(), d2.space().clone()])?;
    joint_density(&product, &[d1.clone(), d2.clone()], tnorm)
}

/// n-fold tensor product of densities, the left-associated iteration of
/// [`tensor_density`]. A single factor is returned unchanged. Associativity
/// of the norm makes the result independent of the association order.
pub fn tensor_nfold(densities: &[Density], tnorm: &TNorm) -> Result<Density, TensorError> {
    assert!(!densities.is_empty(), "at least one factor required");
    if densities.len() == 1 {
        return Ok(densities[0].clone());
    }
    let product = ProductSpace::new(densities.iter().map(|d| d.space().clone()).collect())?;
    joint_density(&product, densities, tnorm)
}

/// General tensor product of two capacities: for every product subset `B`
/// the value is the supremum over `t` of `v1(A_t) * t` with
/// `A_t = {x : v2(slice of B at x) >= t}`. The slice capacities step only
/// at finitely many values, and between steps the objective increases in
/// `t`, so the supremum is attained on the finite candidate set of slice
/// values together with 0 and 1.
pub fn tensor_general(
    cap1: &Capacity,
    cap2: &Capacity,
    tnorm: &TNorm,
) -> Result<Capacity, TensorError> {
    let product = ProductSpace::new(vec![cap1.space().clone(), cap2.space().clone()])?;
    let n1 = cap1.space().len();
    let count = product.flat().subset_count();
    let mut values = vec![0.0; count];
    let mut slice_values = vec![0.0; n1];
    for (b, value) in values.iter_mut().enumerate() {
        for (x, sv) in slice_values.iter_mut().enumerate() {
            *sv = cap2.value(product.slice_at(b, x));
        }
        let mut best = 0.0f64;
        for &t in slice_values.iter().chain([0.0, 1.0].iter()) {
            let mut a_mask = 0;
            for (x, &sv) in slice_values.iter().enumerate() {
                if sv >= t {
                    a_mask |= 1 << x;
                }
            }
            best = best.max(tnorm.eval(cap1.value(a_mask), t));
        }
        *value = best;
    }
    let tol = match tnorm {
        TNorm::Custom(_) => 1e-9,
        _ => crate::ARITHMETIC_TOL,
    };
    Capacity::from_computed_tol(product.flat().clone(), values, tol)
        .map_err(TensorError::JointNotCapacity)
}

/// Pushforward of a product capacity along the projection onto one factor:
/// the value on a factor subset `A` is the capacity of the cylinder over
/// `A`. For a tensor product this recovers the factor capacity.
pub fn marginal(
    cap: &Capacity,
    product: &ProductSpace,
    factor: usize,
) -> Result<Capacity, TensorError> {
    if cap.space() != product.flat() {
        return Err(TensorError::SpaceMismatch);
    }
    let space = product.factors()[factor].clone();
    let values = (0..space.subset_count())
        .map(|a| cap.value(product.cylinder(factor, a)))
        .collect();
    Capacity::new(space, values).map_err(TensorError::JointNotCapacity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    fn d(space: &FiniteSpace, v: Vec<f64>) -> Density {
        Density::new(space.clone(), v).unwrap()
    }

    fn s2(l: [&str; 2]) -> FiniteSpace {
        FiniteSpace::new(l).unwrap()
    }

    #[test]
    fn product_layout() {
        let p = ProductSpace::new(vec![s2(["a", "b"]), s2(["x", "y"])]).unwrap();
        assert_eq!(p.flat().labels(), ["(a,x)", "(a,y)", "(b,x)", "(b,y)"]);
        assert_eq!(p.flat_index(&[1, 0]), 2);
        assert_eq!(p.coords(2), vec![1, 0]);
        assert_eq!(p.slice_at(0b1001, 0), 0b01);
        assert_eq!(p.slice_at(0b1001, 1), 0b10);
        assert_eq!(p.cylinder(0, 0b01), 0b0011);
        assert_eq!(p.cylinder(1, 0b10), 0b1010);
    }

    #[test]
    fn density_product_example() {
        let d1 = d(&s2(["a", "b"]), vec![1.0, 0.6]);
        let d2 = d(&s2(["x", "y"]), vec![0.7, 1.0]);
        let joint = tensor_density(&d1, &d2, &TNorm::Product).unwrap();
        let got = joint.values();
        assert!((got[0] - 0.7).abs() < 1e-12);
        assert_eq!(got[1], 1.0);
        assert!((got[2] - 0.42).abs() < 1e-12);
        assert!((got[3] - 0.6).abs() < 1e-12);
    }

    #[test]
    fn point_masses_tensor_to_a_point_mass() {
        let sa = s2(["a", "b"]);
        let sb = s2(["x", "y"]);
        let joint = tensor_density(
            &Density::point_mass(sa, 0),
            &Density::point_mass(sb, 0),
            &TNorm::Min,
        )
        .unwrap();
        assert_eq!(joint.values(), &[1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn all_ones_tensor_to_all_ones() {
        for t in [TNorm::Min, TNorm::Product, TNorm::Lukasiewicz] {
            let joint = tensor_density(
                &Density::all_ones(s2(["a", "b"])),
                &Density::all_ones(s2(["x", "y"])),
                &t,
            )
            .unwrap();
            assert!(joint.values().iter().all(|&v| v == 1.0));
        }
    }

    #[test]
    fn general_tensor_on_singletons_multiplies() {
        let mut rng = sample::rng(3);
        let sa = FiniteSpace::of_size(3).unwrap();
        let sb = FiniteSpace::of_size(2).unwrap();
        for t in [TNorm::Min, TNorm::Product, TNorm::Lukasiewicz] {
            let c1 = sample::random_capacity(&sa, &mut rng);
            let c2 = sample::random_capacity(&sb, &mut rng);
            let joint = tensor_general(&c1, &c2, &t).unwrap();
            let p = ProductSpace::new(vec![sa.clone(), sb.clone()]).unwrap();
            for x in sa.points() {
                for y in sb.points() {
                    let b = 1usize << p.flat_index(&[x, y]);
                    let expect = t
                        .apply(c1.value(sa.singleton(x)), c2.value(sb.singleton(y)))
                        .unwrap();
                    assert_eq!(joint.value(b), expect, "{t} at ({x},{y})");
                }
            }
        }
    }

    #[test]
    fn general_tensor_of_whole_product_is_one() {
        let mut rng = sample::rng(9);
        let s = FiniteSpace::of_size(2).unwrap();
        let c1 = sample::random_capacity(&s, &mut rng);
        let c2 = sample::random_capacity(&s, &mut rng);
        let joint = tensor_general(&c1, &c2, &TNorm::Min).unwrap();
        assert_eq!(joint.value(joint.space().full_mask()), 1.0);
        assert_eq!(joint.value(0), 0.0);
    }

    #[test]
    fn general_tensor_diagonal_example() {
        let d1 = d(&s2(["a", "b"]), vec![1.0, 0.6]);
        let d2 = d(&s2(["x", "y"]), vec![0.7, 1.0]);
        let c1 = Capacity::from_density(&d1);
        let c2 = Capacity::from_density(&d2);
        let joint = tensor_general(&c1, &c2, &TNorm::Min).unwrap();
        // B = {(a,x),(b,y)}: max of the joint densities 0.7 and 0.6.
        let b = 0b1001;
        assert_eq!(joint.value(b), 0.7);
    }

    #[test]
    fn nfold_identity_and_triples() {
        let da = d(&s2(["a", "b"]), vec![1.0, 0.5]);
        let single = tensor_nfold(std::slice::from_ref(&da), &TNorm::Product).unwrap();
        assert_eq!(single, da);

        let joint = tensor_nfold(&[da.clone(), da.clone(), da], &TNorm::Product).unwrap();
        assert_eq!(joint.space().len(), 8);
        assert_eq!(joint.value(7), 0.125); // (b,b,b) = 0.5^3
        assert_eq!(joint.value(0), 1.0);

        let s = s2(["a", "b"]);
        let pm = Density::point_mass(s, 1);
        let triple = tensor_nfold(&[pm.clone(), pm.clone(), pm], &TNorm::Min).unwrap();
        for (i, &v) in triple.values().iter().enumerate() {
            assert_eq!(v, f64::from(u8::from(i == 7)));
        }
    }

    #[test]
    fn nfold_size_cap() {
        let s = FiniteSpace::of_size(3).unwrap();
        let ds: Vec<Density> = (0..3).map(|_| Density::all_ones(s.clone())).collect();
        assert!(matches!(
            tensor_nfold(&ds, &TNorm::Min),
            Err(TensorError::SizeError { got: 27 })
        ));
    }

    #[test]
    fn marginals_recover_factors() {
        let mut rng = sample::rng(31);
        let sa = FiniteSpace::of_size(3).unwrap();
        let sb = FiniteSpace::of_size(2).unwrap();
        for t in [TNorm::Min, TNorm::Product, TNorm::Lukasiewicz] {
            let d1 = sample::random_density(&sa, &mut rng);
            let d2 = sample::random_density(&sb, &mut rng);
            let joint = Capacity::from_density(&tensor_density(&d1, &d2, &t).unwrap());
            let p = ProductSpace::new(vec![sa.clone(), sb.clone()]).unwrap();
            assert_eq!(
                marginal(&joint, &p, 0).unwrap(),
                Capacity::from_density(&d1),
                "{t}"
            );
            assert_eq!(
                marginal(&joint, &p, 1).unwrap(),
                Capacity::from_density(&d2),
                "{t}"
            );
        }
    }

    #[test]
    fn marginal_of_point_mass_and_greatest() {
        let sa = s2(["a", "b"]);
        let sb = s2(["x", "y"]);
        let p = ProductSpace::new(vec![sa.clone(), sb.clone()]).unwrap();

        let pm = tensor_density(
            &Density::point_mass(sa.clone(), 0),
            &Density::point_mass(sb.clone(), 1),
            &TNorm::Min,
        )
        .unwrap();
        let m0 = marginal(&Capacity::from_density(&pm), &p, 0).unwrap();
        assert_eq!(
            m0,
            Capacity::from_density(&Density::point_mass(sa.clone(), 0))
        );

        let ones = tensor_density(
            &Density::all_ones(sa.clone()),
            &Density::all_ones(sb),
            &TNorm::Min,
        )
        .unwrap();
        let m1 = marginal(&Capacity::from_density(&ones), &p, 0).unwrap();
        assert_eq!(m1, Capacity::from_density(&Density::all_ones(sa)));
    }
}
