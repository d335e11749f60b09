//! Finite games whose mixed strategies are possibility capacities.
//!
//! The crate provides:
//!
//! - capacities (normalized monotone set functions) on finite spaces, with
//!   the possibility / necessity subclasses, duality and densities
//!   ([`capacity`]),
//! - continuous triangular norms as first-class values ([`tnorm`]),
//! - Choquet, Sugeno and t-normed integrals of finite functions together
//!   with the functional-representation machinery ([`integral`]),
//! - t-norm tensor products of capacities and densities ([`tensor`]),
//! - normal-form games, mixed profiles of possibility densities and
//!   expected payoffs through fuzzy integrals ([`game`]),
//! - grid-discretized best response and min/max equilibrium search
//!   ([`equilibrium`]), including a built-in 2x2 game whose Choquet-payoff
//!   minimization admits no stable profile ([`counterexample`]).
//!
//! Subsets of a finite space are addressed by bitmask throughout: bit `i`
//! set means point `i` is in the subset.

pub mod capacity;
pub mod counterexample;
pub mod equilibrium;
pub mod game;
pub mod integral;
pub mod oracle;
pub mod sample;
pub mod space;
pub mod tensor;
pub mod tnorm;

pub use capacity::{Capacity, CapacityClass, CapacityError, Density};
pub use equilibrium::{
    density_grid, find_equilibrium, improvement_landscape, DensityGrid, EquilibriumError,
    EquilibriumResult, Mode, SearchConfig,
};
pub use game::{Game, GameError, MixedProfile, PayoffKind};
pub use integral::{
    are_comonotone, check_axioms, choquet, level_set, recover_capacity, sugeno, t_normed,
    FiniteFunction, Functional, IntegralError,
};
pub use space::{FiniteSpace, Mask, SpaceError, MAX_POINTS};
pub use tensor::{tensor_density, tensor_general, tensor_nfold, ProductSpace, TensorError};
pub use tnorm::{verify_axioms, TNorm, TNormError};

/// Tolerance for values produced by floating-point arithmetic, as opposed
/// to values constructed directly.
pub const ARITHMETIC_TOL: f64 = 1e-12;
