//! Result documents. All output types are plain structs so the JSON field
//! order is fixed by declaration order; identical invocations produce
//! byte-identical documents.

use serde::Serialize;

use fuzzygame::equilibrium::{EquilibriumStatus, ImprovementLandscape};
use fuzzygame::game::MixedProfile;
use fuzzygame::Game;

/// Common envelope around every command's result.
#[derive(Debug, Serialize)]
pub struct Document<I: Serialize, R: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input: I,
    pub result: R,
}

pub fn envelope<I: Serialize, R: Serialize>(
    command: &'static str,
    input: I,
    result: R,
) -> Document<I, R> {
    Document {
        tool: "fuzzygame",
        version: env!("CARGO_PKG_VERSION"),
        command,
        input,
        result,
    }
}

/// A float rendered both as a JSON number (shortest round-trip form) and as
/// a fixed 17-significant-digit string.
pub fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Serialize)]
pub struct IntegrateResult {
    pub integral: String,
    pub value: f64,
    pub value_17sig: String,
}

#[derive(Debug, Serialize)]
pub struct TensorResult {
    pub tensor_tnorm: String,
    pub labels: Vec<String>,
    pub joint_density: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct PayoffResult {
    pub integral: String,
    pub tensor_tnorm: String,
    pub values: Vec<f64>,
    pub values_17sig: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct PlayerDensity {
    pub player: usize,
    pub strategies: Vec<LabeledWeight>,
}

#[derive(Debug, Serialize)]
pub struct LabeledWeight {
    pub label: String,
    pub weight: f64,
}

pub fn profile_doc(game: &Game, profile: &MixedProfile) -> Vec<PlayerDensity> {
    profile
        .densities()
        .iter()
        .enumerate()
        .map(|(player, d)| PlayerDensity {
            player,
            strategies: game.spaces()[player]
                .labels()
                .iter()
                .zip(d.values())
                .map(|(label, &weight)| LabeledWeight {
                    label: label.clone(),
                    weight,
                })
                .collect(),
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct CertificateEntry {
    pub best_gain: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub player: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deviation: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct SolveResult {
    pub integral: String,
    pub tensor_tnorm: String,
    pub mode: String,
    pub grid_k: u32,
    pub epsilon: f64,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Vec<PlayerDensity>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payoffs: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect_profile_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect_profile: Option<Vec<PlayerDensity>>,
    /// Per-profile best improving deviation, in profile enumeration order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<CertificateEntry>>,
}

/// Search settings echoed into a [`SolveResult`].
#[derive(Debug, Clone)]
pub struct SolveMeta {
    pub integral: String,
    pub tensor_tnorm: String,
    pub mode: String,
    pub grid_k: u32,
    pub epsilon: f64,
}

pub fn solve_result(
    game: &Game,
    meta: SolveMeta,
    status: &EquilibriumStatus,
    profile_of: impl Fn(usize) -> MixedProfile,
) -> SolveResult {
    match status {
        EquilibriumStatus::Found {
            profile_index,
            profile,
            payoffs,
        } => SolveResult {
            integral: meta.integral,
            tensor_tnorm: meta.tensor_tnorm,
            mode: meta.mode,
            grid_k: meta.grid_k,
            epsilon: meta.epsilon,
            status: "found".to_string(),
            profile_index: Some(*profile_index),
            profile: Some(profile_doc(game, profile)),
            payoffs: Some(payoffs.clone()),
            defect: None,
            defect_profile_index: None,
            defect_profile: None,
            certificate: None,
        },
        EquilibriumStatus::NotFound { certificate } => SolveResult {
            integral: meta.integral,
            tensor_tnorm: meta.tensor_tnorm,
            mode: meta.mode,
            grid_k: meta.grid_k,
            epsilon: meta.epsilon,
            status: "not_found".to_string(),
            profile_index: None,
            profile: None,
            payoffs: None,
            defect: Some(certificate.defect),
            defect_profile_index: Some(certificate.argmin),
            defect_profile: Some(profile_doc(game, &profile_of(certificate.argmin))),
            certificate: Some(certificate_doc(certificate)),
        },
    }
}

pub fn certificate_doc(landscape: &ImprovementLandscape) -> Vec<CertificateEntry> {
    landscape
        .entries
        .iter()
        .map(|e| CertificateEntry {
            best_gain: e.best_gain,
            player: e.player,
            deviation: e.deviation,
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct ClosedFormCheck {
    pub grid_points_per_player: usize,
    pub profiles: usize,
    pub max_abs_deviation: Vec<f64>,
    pub witness_profile: Vec<f64>,
    pub witness_closed_form: f64,
    pub witness_integral: f64,
}

#[derive(Debug, Serialize)]
pub struct CaseSummary {
    pub case: String,
    pub points: usize,
    pub min_gap: f64,
}

#[derive(Debug, Serialize)]
pub struct CaseAnalysis {
    pub grid_k: u32,
    pub profiles: usize,
    pub all_gaps_positive: bool,
    pub min_gap: f64,
    pub per_case: Vec<CaseSummary>,
}

#[derive(Debug, Serialize)]
pub struct SearchSummary {
    pub integral: String,
    pub grid_k: u32,
    pub epsilon: f64,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Vec<PlayerDensity>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payoffs: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect_profile: Option<Vec<PlayerDensity>>,
    /// Best improving gain per profile, in enumeration order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gains: Option<Vec<f64>>,
}

#[derive(Debug, Serialize)]
pub struct PaperExampleResult {
    pub payoffs_player1: Vec<f64>,
    pub payoffs_player2: Vec<f64>,
    pub closed_form_check: ClosedFormCheck,
    pub case_analysis: CaseAnalysis,
    pub choquet_search: SearchSummary,
    pub sugeno_search: SearchSummary,
    pub sugeno_search_refined: SearchSummary,
}

#[derive(Debug, Serialize)]
pub struct AxiomsResult {
    pub size: usize,
    pub tnorm: String,
    pub capacities: u32,
    pub samples_per_capacity: u32,
    pub seed: u64,
    pub axiom_checks: u32,
    pub axiom_violations: u32,
    pub recovery_roundtrips: u32,
    pub recovery_mismatches: u32,
}
