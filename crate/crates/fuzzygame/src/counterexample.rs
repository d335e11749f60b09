//! The built-in 2x2 reference game whose Choquet-payoff minimization
//! admits no stable profile, together with its closed-form case analysis.
//!
//! Player densities are written `(a_i, b_i)`: the weight on strategy `a`
//! and on strategy `b`, with `max(a_i, b_i) = 1`. The documented
//! closed-form payoffs for the min-norm tensor are
//!
//! ```text
//! cu1 = (b1 ^ a2) + 2 (b1 ^ b2) + 3 (a1 ^ a2)
//! cu2 = 2 (b1 ^ a2) + (b1 ^ b2) + 3 (a1 ^ b2)
//! ```
//!
//! and the case analysis below exhibits, for every profile on the
//! constraint set, a unilateral deviation that strictly lowers the
//! deviating player's closed-form payoff. The four cases split on which
//! coordinates sit at 1.

use thiserror::Error;

use crate::game::Game;
use crate::space::FiniteSpace;
use crate::ARITHMETIC_TOL;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CounterexampleError {
    #[error("density constraint violated: max({0}, {1}) must be 1")]
    ConstraintError(f64, f64),
}

/// The 2x2 reference game: payoff tensors `u1 = (3,0,1,2)` and
/// `u2 = (0,3,2,1)` in profile order `(a,a), (a,b), (b,a), (b,b)`.
pub fn reference_game() -> Game {
    let s = FiniteSpace::new(["a", "b"]).unwrap();
    Game::new(
        vec![s.clone(), s],
        vec![vec![3.0, 0.0, 1.0, 2.0], vec![0.0, 3.0, 2.0, 1.0]],
    )
    .unwrap()
}

/// The reference game with payoffs divided by 3, for the `[0,1]`-valued
/// integrals.
pub fn reference_game_unit() -> Game {
    reference_game().rescaled_unit()
}

/// Closed-form payoff of `player` (0 or 1) at densities `(a1,b1)`, `(a2,b2)`.
pub fn closed_form_payoff(player: usize, a1: f64, b1: f64, a2: f64, b2: f64) -> f64 {
    match player {
        0 => b1.min(a2) + 2.0 * b1.min(b2) + 3.0 * a1.min(a2),
        1 => 2.0 * b1.min(a2) + b1.min(b2) + 3.0 * a1.min(b2),
        _ => panic!("reference game has two players"),
    }
}

/// Which face of the constraint set a profile falls on, in dispatch order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseId {
    /// a1 = 1 = a2
    BothA,
    /// a1 = 1 = b2 (with a2 < 1)
    AThenB,
    /// b1 = 1 = b2 (with a1 < 1)
    BothB,
    /// b1 = 1 = a2 (with a1 < 1, b2 < 1)
    BThenA,
}

/// One case of the deviation analysis: the prescribed deviation and the
/// strict drop it produces in the deviating player's closed-form payoff.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseReport {
    pub case: CaseId,
    /// 0-based index of the player who deviates.
    pub deviating_player: usize,
    /// The deviation density `(a, b)`.
    pub deviation: (f64, f64),
    pub incumbent_payoff: f64,
    pub deviation_payoff: f64,
    /// `incumbent_payoff - deviation_payoff`, strictly positive in every case.
    pub gap: f64,
}

fn snap_one(x: f64) -> f64 {
    if (x - 1.0).abs() <= ARITHMETIC_TOL {
        1.0
    } else {
        x
    }
}

/// Classifies a constrained profile into one of the four cases, evaluates
/// the prescribed deviation, and reports the payoff drop. Every case,
/// including the `a1 = 0` corner of the fourth one (where the other player
/// deviates instead), yields a strictly positive gap, so no profile on the
/// constraint set is stable for the closed-form payoffs.
pub fn verify_counterexample_cases(
    a1: f64,
    b1: f64,
    a2: f64,
    b2: f64,
) -> Result<CaseReport, CounterexampleError> {
    let (a1, b1, a2, b2) = (snap_one(a1), snap_one(b1), snap_one(a2), snap_one(b2));
    if a1.max(b1) != 1.0 {
        return Err(CounterexampleError::ConstraintError(a1, b1));
    }
    if a2.max(b2) != 1.0 {
        return Err(CounterexampleError::ConstraintError(a2, b2));
    }

    let report = |case, player: usize, dev: (f64, f64)| {
        let incumbent = closed_form_payoff(player, a1, b1, a2, b2);
        let deviated = if player == 0 {
            closed_form_payoff(0, dev.0, dev.1, a2, b2)
        } else {
            closed_form_payoff(1, a1, b1, dev.0, dev.1)
        };
        CaseReport {
            case,
            deviating_player: player,
            deviation: dev,
            incumbent_payoff: incumbent,
            deviation_payoff: deviated,
            gap: incumbent - deviated,
        }
    };

    let r = if a1 == 1.0 && a2 == 1.0 {
        if b2 == 1.0 {
            report(CaseId::BothA, 1, (1.0, 0.0))
        } else {
            report(CaseId::BothA, 0, (0.0, 1.0))
        }
    } else if a1 == 1.0 && b2 == 1.0 {
        report(CaseId::AThenB, 1, (1.0, 0.0))
    } else if b1 == 1.0 && b2 == 1.0 {
        if a2 == 1.0 {
            report(CaseId::BothB, 1, (0.0, 1.0))
        } else {
            report(CaseId::BothB, 0, (1.0, 0.0))
        }
    } else {
        // b1 = 1 = a2 with a1 < 1 and b2 < 1
        if a1 > 0.0 {
            report(CaseId::BThenA, 0, (0.0, 1.0))
        } else {
            report(CaseId::BThenA, 1, (0.0, 1.0))
        }
    };
    Ok(r)
}

/// All profiles of the constraint set `max(a1,b1) = 1 = max(a2,b2)` with
/// coordinates on the `{0, 1/k, ..., 1}` grid. Each player contributes
/// `2k + 1` density pairs, enumerated with the `a = 1` face first.
pub fn face_grid(k: u32) -> Vec<(f64, f64, f64, f64)> {
    let pairs = face_pairs(k);
    let mut out = Vec::with_capacity(pairs.len() * pairs.len());
    for &(a1, b1) in &pairs {
        for &(a2, b2) in &pairs {
            out.push((a1, b1, a2, b2));
        }
    }
    out
}

/// The `2k + 1` grid densities of one player: `(1, i/k)` for all `i`, then
/// `(i/k, 1)` for `i < k`.
pub fn face_pairs(k: u32) -> Vec<(f64, f64)> {
    let at = |i: u32| f64::from(i) / f64::from(k);
    let mut pairs = Vec::with_capacity(2 * k as usize + 1);
    for i in 0..=k {
        pairs.push((1.0, at(i)));
    }
    for i in 0..k {
        pairs.push((at(i), 1.0));
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_both_a_with_b2_one() {
        let r = verify_counterexample_cases(1.0, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(r.case, CaseId::BothA);
        assert_eq!(r.deviating_player, 1);
        assert_eq!(r.deviation, (1.0, 0.0));
        assert_eq!(r.incumbent_payoff, 3.0);
        assert_eq!(r.deviation_payoff, 0.0);
        assert_eq!(r.gap, 3.0);
    }

    #[test]
    fn case_both_a_with_b2_below_one() {
        let r = verify_counterexample_cases(1.0, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(r.case, CaseId::BothA);
        assert_eq!(r.deviating_player, 0);
        assert_eq!(r.deviation, (0.0, 1.0));
        assert_eq!(r.incumbent_payoff, 3.0);
        assert_eq!(r.deviation_payoff, 1.0);
        assert_eq!(r.gap, 2.0);
    }

    #[test]
    fn case_b_then_a_corner() {
        // a1 = 0 switches the deviating player to the second one; the
        // incumbent closed-form payoff is 2 + b2.
        let r = verify_counterexample_cases(0.0, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(r.case, CaseId::BThenA);
        assert_eq!(r.deviating_player, 1);
        assert_eq!(r.deviation, (0.0, 1.0));
        assert_eq!(r.incumbent_payoff, 2.0);
        assert_eq!(r.deviation_payoff, 1.0);
        assert_eq!(r.gap, 1.0);
    }

    #[test]
    fn constraint_checked() {
        assert!(verify_counterexample_cases(0.5, 0.5, 1.0, 0.0).is_err());
        assert!(verify_counterexample_cases(1.0, 0.0, 0.9, 0.9).is_err());
    }

    #[test]
    fn every_face_point_has_a_positive_gap() {
        for k in [1, 4, 20] {
            for (a1, b1, a2, b2) in face_grid(k) {
                let r = verify_counterexample_cases(a1, b1, a2, b2).unwrap();
                assert!(
                    r.gap > 0.0,
                    "no strict improvement at ({a1},{b1},{a2},{b2}): {r:?}"
                );
            }
        }
    }

    #[test]
    fn face_grid_count() {
        assert_eq!(face_pairs(20).len(), 41);
        assert_eq!(face_grid(20).len(), 41 * 41);
    }

    #[test]
    fn closed_forms_at_pure_profiles_match_the_game() {
        let g = reference_game();
        let pure = [
            ((1.0, 0.0), (1.0, 0.0), [0, 0]),
            ((1.0, 0.0), (0.0, 1.0), [0, 1]),
            ((0.0, 1.0), (1.0, 0.0), [1, 0]),
            ((0.0, 1.0), (0.0, 1.0), [1, 1]),
        ];
        for ((a1, b1), (a2, b2), coords) in pure {
            for player in 0..2 {
                assert_eq!(
                    closed_form_payoff(player, a1, b1, a2, b2),
                    g.pure_payoff(player, &coords)
                );
            }
        }
    }
}
