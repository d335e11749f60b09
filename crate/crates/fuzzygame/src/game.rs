//! Normal-form games, mixed profiles of possibility densities, and
//! expected payoffs through fuzzy integrals.
//!
//! A mixed profile assigns one possibility density per player. The expected
//! payoff of a player routes through the explicit joint density of the
//! profile (tensor product under the chosen norm), the induced possibility
//! capacity, and then the chosen integral of the player's payoff tensor.
//! Keeping the composition explicit keeps the tensor stage independently
//! testable.

use rand::Rng;
use thiserror::Error;

use crate::capacity::{Capacity, CapacityError, Density};
use crate::integral::{choquet, t_normed, FiniteFunction, IntegralError};
use crate::sample;
use crate::space::FiniteSpace;
use crate::tensor::{joint_density, ProductSpace, TensorError};
use crate::tnorm::TNorm;
use crate::ARITHMETIC_TOL;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GameError {
    #[error("need at least one player")]
    NoPlayers,
    #[error("expected one payoff tensor per player ({players}), got {got}")]
    WrongPlayerCount { players: usize, got: usize },
    #[error("payoff tensor of player {player} has {got} entries, expected {expected}")]
    WrongTensorShape {
        player: usize,
        expected: usize,
        got: usize,
    },
    #[error("payoff of player {player} at flat profile {index} is {value}, must be nonnegative")]
    NegativePayoff {
        player: usize,
        index: usize,
        value: f64,
    },
    #[error("payoff of player {player} at flat profile {index} is {value}, t-normed payoffs need values in [0,1]")]
    PayoffOutOfRange {
        player: usize,
        index: usize,
        value: f64,
    },
    #[error("profile does not match the game's strategy spaces")]
    SpaceMismatch,
    #[error("player index {0} out of range")]
    BadPlayer(usize),
    #[error("scalar {0} outside [0,1]")]
    BadScalar(f64),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Integral(#[from] IntegralError),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
}

/// Which integral turns pure payoffs into expected payoffs.
#[derive(Debug, Clone)]
pub enum PayoffKind {
    /// Choquet integral; payoffs may exceed 1.
    Choquet,
    /// t-normed integral with the given norm; payoffs must lie in [0,1].
    /// `TNormed(TNorm::Min)` is the Sugeno integral.
    TNormed(TNorm),
}

impl PayoffKind {
    pub fn name(&self) -> String {
        match self {
            PayoffKind::Choquet => "choquet".to_string(),
            PayoffKind::TNormed(TNorm::Min) => "sugeno".to_string(),
            PayoffKind::TNormed(t) => format!("tnorm:{t}"),
        }
    }
}

/// A game in pure strategies: one finite strategy space and one nonnegative
/// payoff tensor per player. Tensors are flattened row-major with player
/// 1's strategy most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct Game {
    spaces: Vec<FiniteSpace>,
    payoffs: Vec<Vec<f64>>,
}

impl Game {
    pub fn new(spaces: Vec<FiniteSpace>, payoffs: Vec<Vec<f64>>) -> Result<Self, GameError> {
        if spaces.is_empty() {
            return Err(GameError::NoPlayers);
        }
        if payoffs.len() != spaces.len() {
            return Err(GameError::WrongPlayerCount {
                players: spaces.len(),
                got: payoffs.len(),
            });
        }
        let expected: usize = spaces.iter().map(FiniteSpace::len).product();
        for (player, tensor) in payoffs.iter().enumerate() {
            if tensor.len() != expected {
                return Err(GameError::WrongTensorShape {
                    player,
                    expected,
                    got: tensor.len(),
                });
            }
            for (index, &value) in tensor.iter().enumerate() {
                if !value.is_finite() || value < 0.0 {
                    return Err(GameError::NegativePayoff {
                        player,
                        index,
                        value,
                    });
                }
            }
        }
        Ok(Game { spaces, payoffs })
    }

    pub fn players(&self) -> usize {
        self.spaces.len()
    }

    pub fn spaces(&self) -> &[FiniteSpace] {
        &self.spaces
    }

    pub fn payoff_tensor(&self, player: usize) -> &[f64] {
        &self.payoffs[player]
    }

    /// Pure payoff at a strategy tuple.
    pub fn pure_payoff(&self, player: usize, coords: &[usize]) -> f64 {
        let p = self.product_space().expect("game shape already validated");
        self.payoffs[player][p.flat_index(coords)]
    }

    pub fn product_space(&self) -> Result<ProductSpace, TensorError> {
        ProductSpace::new(self.spaces.clone())
    }

    /// The game with every payoff tensor divided by its own maximum entry,
    /// mapping payoffs into `[0,1]` for the t-normed integrals. Tensors
    /// that are identically zero are kept as they are.
    pub fn rescaled_unit(&self) -> Game {
        let payoffs = self
            .payoffs
            .iter()
            .map(|tensor| {
                let max = tensor.iter().cloned().fold(0.0, f64::max);
                if max > 0.0 {
                    tensor.iter().map(|&v| v / max).collect()
                } else {
                    tensor.clone()
                }
            })
            .collect();
        Game {
            spaces: self.spaces.clone(),
            payoffs,
        }
    }

    /// Expected payoff of `player` under a mixed profile: the chosen
    /// integral of the payoff tensor against the possibility capacity of
    /// the joint profile density formed with `tensor_tnorm`.
    pub fn expected_payoff(
        &self,
        profile: &MixedProfile,
        player: usize,
        payoff: &PayoffKind,
        tensor_tnorm: &TNorm,
    ) -> Result<f64, GameError> {
        if player >= self.players() {
            return Err(GameError::BadPlayer(player));
        }
        profile.check_against(self)?;
        if let PayoffKind::TNormed(_) = payoff {
            for (index, &value) in self.payoffs[player].iter().enumerate() {
                if value > 1.0 + ARITHMETIC_TOL {
                    return Err(GameError::PayoffOutOfRange {
                        player,
                        index,
                        value,
                    });
                }
            }
        }
        let product = self.product_space()?;
        let joint = joint_density(&product, &profile.densities, tensor_tnorm)?;
        let cap = Capacity::from_density(&joint);
        let u = FiniteFunction::new(product.flat().clone(), self.payoffs[player].clone())?;
        let value = match payoff {
            PayoffKind::Choquet => choquet(&u, &cap)?,
            PayoffKind::TNormed(star) => t_normed(&u, &cap, star)?,
        };
        Ok(value)
    }
}

/// One possibility density per player.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedProfile {
    densities: Vec<Density>,
}

impl MixedProfile {
    pub fn new(densities: Vec<Density>) -> Self {
        MixedProfile { densities }
    }

    /// The profile playing pure strategy `coords[i]` for each player.
    pub fn pure(game: &Game, coords: &[usize]) -> Self {
        let densities = game
            .spaces
            .iter()
            .zip(coords)
            .map(|(s, &c)| Density::point_mass(s.clone(), c))
            .collect();
        MixedProfile { densities }
    }

    /// Every player at the greatest element.
    pub fn all_ones(game: &Game) -> Self {
        let densities = game
            .spaces
            .iter()
            .map(|s| Density::all_ones(s.clone()))
            .collect();
        MixedProfile { densities }
    }

    pub fn densities(&self) -> &[Density] {
        &self.densities
    }

    pub fn density(&self, player: usize) -> &Density {
        &self.densities[player]
    }

    /// The profile with `player`'s density replaced.
    pub fn with_density(&self, player: usize, d: Density) -> Self {
        let mut densities = self.densities.clone();
        densities[player] = d;
        MixedProfile { densities }
    }

    fn check_against(&self, game: &Game) -> Result<(), GameError> {
        if self.densities.len() != game.players() {
            return Err(GameError::SpaceMismatch);
        }
        for (d, s) in self.densities.iter().zip(&game.spaces) {
            if d.space() != s {
                return Err(GameError::SpaceMismatch);
            }
        }
        Ok(())
    }
}

/// The combination `(s, d1, d2) -> s * d1 v d2`, taken coordinate-wise. The
/// result is again a density: its maximum is attained where `d2` attains 1.
/// On capacities this is the convex combination `A -> s * v(A) v w(A)`, and
/// it commutes with taking densities.
pub fn b_convex_combine(s: f64, d1: &Density, d2: &Density) -> Result<Density, GameError> {
    if d1.space() != d2.space() {
        return Err(GameError::SpaceMismatch);
    }
    if !(-ARITHMETIC_TOL..=1.0 + ARITHMETIC_TOL).contains(&s) || !s.is_finite() {
        return Err(GameError::BadScalar(s));
    }
    let s = s.clamp(0.0, 1.0);
    let entries = d1
        .values()
        .iter()
        .zip(d2.values())
        .map(|(&a, &b)| (s * a).max(b))
        .collect();
    Ok(Density::new(d1.space().clone(), entries)?)
}

/// A sampled failure of quasiconvexity in the deviating player's variable.
#[derive(Debug, Clone)]
pub struct QuasiconvexityWitness {
    pub s: f64,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
    pub opponents: Vec<Vec<f64>>,
    pub combined_value: f64,
    pub separate_max: f64,
}

#[derive(Debug, Clone)]
pub struct QuasiconvexityReport {
    pub samples: u32,
    pub witnesses: Vec<QuasiconvexityWitness>,
}

impl QuasiconvexityReport {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Samples `(s, d1, d2, opponents)` and checks that the payoff at the
/// combination `s * d1 v d2` never exceeds the larger of the payoffs at
/// `d1` and `d2`. For t-normed payoffs no witness is expected; for Choquet
/// payoffs witnesses may exist and are simply reported.
pub fn quasiconvexity_witness_search(
    game: &Game,
    player: usize,
    payoff: &PayoffKind,
    tensor_tnorm: &TNorm,
    samples: u32,
    seed: u64,
) -> Result<QuasiconvexityReport, GameError> {
    if player >= game.players() {
        return Err(GameError::BadPlayer(player));
    }
    let mut rng = sample::rng(seed);
    let mut witnesses = Vec::new();
    for _ in 0..samples {
        let mut densities: Vec<Density> = game
            .spaces
            .iter()
            .map(|s| sample::random_density(s, &mut rng))
            .collect();
        let d1 = sample::random_density(&game.spaces[player], &mut rng);
        let d2 = sample::random_density(&game.spaces[player], &mut rng);
        let s = rng.random_range(0..=16) as f64 / 16.0;
        let combined = b_convex_combine(s, &d1, &d2)?;

        densities[player] = d1.clone();
        let p1 = MixedProfile::new(densities.clone());
        let v1 = game.expected_payoff(&p1, player, payoff, tensor_tnorm)?;
        densities[player] = d2.clone();
        let v2 = game.expected_payoff(
            &MixedProfile::new(densities.clone()),
            player,
            payoff,
            tensor_tnorm,
        )?;
        densities[player] = combined;
        let vc = game.expected_payoff(
            &MixedProfile::new(densities.clone()),
            player,
            payoff,
            tensor_tnorm,
        )?;

        if vc > v1.max(v2) + ARITHMETIC_TOL {
            let opponents = densities
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != player)
                .map(|(_, d)| d.values().to_vec())
                .collect();
            witnesses.push(QuasiconvexityWitness {
                s,
                d1: d1.values().to_vec(),
                d2: d2.values().to_vec(),
                opponents,
                combined_value: vc,
                separate_max: v1.max(v2),
            });
        }
    }
    Ok(QuasiconvexityReport { samples, witnesses })
}
