//! Serialized input documents and their conversion to library types.
//!
//! Every command reads a single JSON document. Subsets are addressed by
//! bitmask (bit `i` set means point `i` is in the subset), capacity value
//! tables are indexed by that bitmask, and payoff tensors are flattened
//! row-major with player 1's strategy most significant.

use serde::{Deserialize, Serialize};

use fuzzygame::capacity::{Capacity, Density};
use fuzzygame::game::{Game, PayoffKind};
use fuzzygame::space::FiniteSpace;
use fuzzygame::tnorm::TNorm;

use crate::CliError;

/// Capacity specification: either a full subset-indexed value table or the
/// density of a possibility capacity.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapacitySpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density: Option<Vec<f64>>,
}

impl CapacitySpec {
    pub fn build(&self, space: &FiniteSpace) -> Result<Capacity, CliError> {
        match (&self.values, &self.density) {
            (Some(values), None) => Capacity::new(space.clone(), values.clone())
                .map_err(|e| CliError::Validation(e.to_string())),
            (None, Some(density)) => {
                let d = Density::new(space.clone(), density.clone())
                    .map_err(|e| CliError::Validation(e.to_string()))?;
                Ok(Capacity::from_density(&d))
            }
            _ => Err(CliError::Validation(
                "capacity needs exactly one of \"values\" or \"density\"".to_string(),
            )),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegrateSpec {
    pub space: Vec<String>,
    pub capacity: CapacitySpec,
    pub function: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integral: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorSpec {
    pub densities: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tensor_tnorm: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameSpec {
    pub players: usize,
    pub strategies: Vec<Vec<String>>,
    pub payoffs: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integral: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tensor_tnorm: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    /// Per-player density entries; used by the payoff command.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Vec<Vec<f64>>>,
}

impl GameSpec {
    pub fn build_game(&self) -> Result<Game, CliError> {
        if self.players != self.strategies.len() {
            return Err(CliError::Validation(format!(
                "players is {} but {} strategy lists were given",
                self.players,
                self.strategies.len()
            )));
        }
        let spaces: Result<Vec<FiniteSpace>, CliError> = self
            .strategies
            .iter()
            .map(|labels| {
                FiniteSpace::new(labels.clone()).map_err(|e| CliError::Validation(e.to_string()))
            })
            .collect();
        Game::new(spaces?, self.payoffs.clone()).map_err(|e| CliError::Validation(e.to_string()))
    }

    pub fn build_profile(&self, game: &Game) -> Result<fuzzygame::MixedProfile, CliError> {
        let entries = self.profile.as_ref().ok_or_else(|| {
            CliError::Validation("this command needs a \"profile\" field".to_string())
        })?;
        if entries.len() != game.players() {
            return Err(CliError::Validation(format!(
                "profile has {} densities for {} players",
                entries.len(),
                game.players()
            )));
        }
        let densities: Result<Vec<Density>, CliError> = entries
            .iter()
            .zip(game.spaces())
            .map(|(d, s)| {
                Density::new(s.clone(), d.clone()).map_err(|e| CliError::Validation(e.to_string()))
            })
            .collect();
        Ok(fuzzygame::MixedProfile::new(densities?))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct AxiomsSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tnorm: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub capacities: Option<u32>,
}

/// Parses an integral selector: `choquet`, `sugeno` or `tnorm:<name>`.
pub fn parse_integral(name: &str) -> Result<PayoffKind, CliError> {
    match name {
        "choquet" => Ok(PayoffKind::Choquet),
        "sugeno" => Ok(PayoffKind::TNormed(TNorm::Min)),
        other => match other.strip_prefix("tnorm:") {
            Some(tn) => Ok(PayoffKind::TNormed(parse_tnorm(tn)?)),
            None => Err(CliError::Validation(format!(
                "unknown integral {other:?}; use choquet, sugeno or tnorm:<name>"
            ))),
        },
    }
}

pub fn parse_tnorm(name: &str) -> Result<TNorm, CliError> {
    TNorm::by_name(name).map_err(|e| CliError::Validation(e.to_string()))
}

pub fn parse_mode(name: &str) -> Result<fuzzygame::Mode, CliError> {
    match name {
        "min" => Ok(fuzzygame::Mode::Min),
        "max" => Ok(fuzzygame::Mode::Max),
        other => Err(CliError::Validation(format!(
            "unknown mode {other:?}; use min or max"
        ))),
    }
}
