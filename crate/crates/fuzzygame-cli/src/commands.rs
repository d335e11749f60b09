//! The six CLI commands.

use fuzzygame::capacity::{Capacity, Density};
use fuzzygame::counterexample::{
    closed_form_payoff, face_grid, reference_game, reference_game_unit,
    verify_counterexample_cases, CaseId,
};
use fuzzygame::equilibrium::{
    density_grid_capped, find_equilibrium, DensityGrid, EquilibriumError, EquilibriumStatus,
    SearchConfig,
};
use fuzzygame::game::{Game, GameError, MixedProfile, PayoffKind};
use fuzzygame::integral::{check_axioms, recover_capacity, Functional};
use fuzzygame::sample;
use fuzzygame::space::FiniteSpace;
use fuzzygame::tensor::{tensor_nfold, TensorError};
use fuzzygame::tnorm::TNorm;
use fuzzygame::{choquet, t_normed, FiniteFunction, Mode};

use crate::doc::{self, envelope, sig17};
use crate::input::{parse_integral, parse_mode, parse_tnorm, AxiomsSpec, GameSpec, IntegrateSpec, TensorSpec};
use crate::{CliError, Overrides};

fn game_error(e: GameError) -> CliError {
    match e {
        GameError::Tensor(TensorError::SizeError { got }) => {
            CliError::Resource(format!("strategy product of {got} points exceeds the cap"))
        }
        other => CliError::Validation(other.to_string()),
    }
}

fn eq_error(e: EquilibriumError) -> CliError {
    match e {
        EquilibriumError::SizeError { needed, cap } => {
            CliError::Resource(format!("enumeration of {needed} items exceeds the cap {cap}"))
        }
        EquilibriumError::Game(g) => game_error(g),
        other => CliError::Validation(other.to_string()),
    }
}

fn check_subset_cap(points: usize, cap: u64) -> Result<(), CliError> {
    let subsets = 1u128 << points;
    if subsets > u128::from(cap) {
        return Err(CliError::Resource(format!(
            "{points} points need {subsets} subset entries, cap is {cap}"
        )));
    }
    Ok(())
}

pub fn cmd_integrate(spec: IntegrateSpec, ov: &Overrides) -> Result<String, CliError> {
    let space = FiniteSpace::new(spec.space.clone())
        .map_err(|e| CliError::Validation(e.to_string()))?;
    check_subset_cap(space.len(), ov.cap)?;
    let capacity = spec.capacity.build(&space)?;
    let f = FiniteFunction::new(space, spec.function.clone())
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let selector = ov
        .integral
        .clone()
        .or_else(|| spec.integral.clone())
        .ok_or_else(|| {
            CliError::Validation("no integral selected; set \"integral\" or --integral".into())
        })?;
    let value = match parse_integral(&selector)? {
        PayoffKind::Choquet => choquet(&f, &capacity),
        PayoffKind::TNormed(t) => t_normed(&f, &capacity, &t),
    }
    .map_err(|e| CliError::Validation(e.to_string()))?;
    let result = doc::IntegrateResult {
        integral: selector,
        value,
        value_17sig: sig17(value),
    };
    render(envelope("integrate", spec, result))
}

pub fn cmd_tensor(spec: TensorSpec, ov: &Overrides) -> Result<String, CliError> {
    let tnorm_name = ov
        .tensor_tnorm
        .clone()
        .or_else(|| spec.tensor_tnorm.clone())
        .unwrap_or_else(|| "min".to_string());
    let tnorm = parse_tnorm(&tnorm_name)?;
    if spec.densities.is_empty() {
        return Err(CliError::Validation("need at least one density".into()));
    }
    let mut densities = Vec::new();
    for (i, entries) in spec.densities.iter().enumerate() {
        let labels = match &spec.labels {
            Some(all) => all
                .get(i)
                .cloned()
                .ok_or_else(|| CliError::Validation(format!("no labels for factor {i}")))?,
            None => (0..entries.len()).map(|p| format!("p{i}s{p}")).collect(),
        };
        let space =
            FiniteSpace::new(labels).map_err(|e| CliError::Validation(e.to_string()))?;
        densities.push(
            Density::new(space, entries.clone())
                .map_err(|e| CliError::Validation(e.to_string()))?,
        );
    }
    let total: usize = densities.iter().map(|d| d.space().len()).product();
    check_subset_cap(total.min(63), ov.cap)?;
    let joint = tensor_nfold(&densities, &tnorm).map_err(|e| match e {
        TensorError::SizeError { got } => {
            CliError::Resource(format!("product of {got} points exceeds the cap"))
        }
        other => CliError::Validation(other.to_string()),
    })?;
    let result = doc::TensorResult {
        tensor_tnorm: tnorm_name,
        labels: joint.space().labels().to_vec(),
        joint_density: joint.values().to_vec(),
    };
    render(envelope("tensor", spec, result))
}

struct GameSetup {
    game: Game,
    payoff: PayoffKind,
    integral_name: String,
    tensor_tnorm: TNorm,
    tensor_name: String,
    mode: Mode,
    mode_name: String,
    grid_k: u32,
    epsilon: f64,
}

fn setup_game(spec: &GameSpec, ov: &Overrides) -> Result<GameSetup, CliError> {
    let game = spec.build_game()?;
    let total: usize = game.spaces().iter().map(FiniteSpace::len).product();
    if total <= 63 {
        check_subset_cap(total, ov.cap)?;
    } else {
        return Err(CliError::Resource(format!(
            "strategy product of {total} points exceeds the cap"
        )));
    }
    let integral_name = ov
        .integral
        .clone()
        .or_else(|| spec.integral.clone())
        .ok_or_else(|| {
            CliError::Validation("no integral selected; set \"integral\" or --integral".into())
        })?;
    let payoff = parse_integral(&integral_name)?;
    if matches!(payoff, PayoffKind::Choquet) && game.players() != 2 {
        return Err(CliError::Validation(
            "choquet payoffs are limited to two-player games here".into(),
        ));
    }
    let tensor_name = ov
        .tensor_tnorm
        .clone()
        .or_else(|| spec.tensor_tnorm.clone())
        .unwrap_or_else(|| "min".to_string());
    let tensor_tnorm = parse_tnorm(&tensor_name)?;
    let mode_name = ov
        .mode
        .clone()
        .or_else(|| spec.mode.clone())
        .unwrap_or_else(|| "min".to_string());
    let mode = parse_mode(&mode_name)?;
    let grid_k = ov.grid.or(spec.grid_k).unwrap_or(4);
    let epsilon = ov.epsilon.or(spec.epsilon).unwrap_or(0.0);
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(CliError::Validation(format!(
            "epsilon must be nonnegative, got {epsilon}"
        )));
    }
    Ok(GameSetup {
        game,
        payoff,
        integral_name,
        tensor_tnorm,
        tensor_name,
        mode,
        mode_name,
        grid_k,
        epsilon,
    })
}

pub fn cmd_payoff(spec: GameSpec, ov: &Overrides) -> Result<String, CliError> {
    let setup = setup_game(&spec, ov)?;
    let profile = spec.build_profile(&setup.game)?;
    let mut values = Vec::new();
    for player in 0..setup.game.players() {
        values.push(
            setup
                .game
                .expected_payoff(&profile, player, &setup.payoff, &setup.tensor_tnorm)
                .map_err(game_error)?,
        );
    }
    let result = doc::PayoffResult {
        integral: setup.integral_name,
        tensor_tnorm: setup.tensor_name,
        values_17sig: values.iter().map(|&v| sig17(v)).collect(),
        values,
    };
    render(envelope("payoff", spec, result))
}

fn player_grids(game: &Game, k: u32, cap: u64) -> Result<Vec<DensityGrid>, CliError> {
    game.spaces()
        .iter()
        .map(|s| density_grid_capped(s, k, cap).map_err(eq_error))
        .collect()
}

pub fn cmd_solve(spec: GameSpec, ov: &Overrides) -> Result<String, CliError> {
    let setup = setup_game(&spec, ov)?;
    let grids = player_grids(&setup.game, setup.grid_k, ov.cap)?;
    let mut cfg = SearchConfig::new(
        setup.payoff.clone(),
        setup.tensor_tnorm.clone(),
        setup.mode,
        setup.epsilon,
    );
    cfg.max_enumeration = ov.cap;
    let res = find_equilibrium(&setup.game, &grids, &cfg).map_err(eq_error)?;
    let profile_of = |idx: usize| grid_profile(&grids, idx);
    let meta = doc::SolveMeta {
        integral: setup.integral_name.clone(),
        tensor_tnorm: setup.tensor_name.clone(),
        mode: setup.mode_name.clone(),
        grid_k: setup.grid_k,
        epsilon: setup.epsilon,
    };
    let result = doc::solve_result(&setup.game, meta, &res.status, profile_of);
    render(envelope("solve", spec, result))
}

/// Profile for a flat index over per-player grids, player 0 most significant.
fn grid_profile(grids: &[DensityGrid], mut idx: usize) -> MixedProfile {
    let mut members = vec![0usize; grids.len()];
    for (i, g) in grids.iter().enumerate().rev() {
        members[i] = idx % g.len();
        idx /= g.len();
    }
    MixedProfile::new(
        members
            .iter()
            .zip(grids)
            .map(|(&m, g)| g.members()[m].clone())
            .collect(),
    )
}

fn case_name(c: CaseId) -> &'static str {
    match c {
        CaseId::BothA => "both_a",
        CaseId::AThenB => "a_then_b",
        CaseId::BothB => "both_b",
        CaseId::BThenA => "b_then_a",
    }
}

fn search_summary(
    game: &Game,
    integral: &str,
    grid_k: u32,
    epsilon: f64,
    cfg: &SearchConfig,
    cap: u64,
) -> Result<doc::SearchSummary, CliError> {
    let grids = player_grids(game, grid_k, cap)?;
    let res = find_equilibrium(game, &grids, cfg).map_err(eq_error)?;
    Ok(match &res.status {
        EquilibriumStatus::Found {
            profile, payoffs, ..
        } => doc::SearchSummary {
            integral: integral.to_string(),
            grid_k,
            epsilon,
            status: "found".into(),
            profile: Some(doc::profile_doc(game, profile)),
            payoffs: Some(payoffs.clone()),
            defect: None,
            defect_profile: None,
            gains: None,
        },
        EquilibriumStatus::NotFound { certificate } => doc::SearchSummary {
            integral: integral.to_string(),
            grid_k,
            epsilon,
            status: "not_found".into(),
            profile: None,
            payoffs: None,
            defect: Some(certificate.defect),
            defect_profile: Some(doc::profile_doc(
                game,
                &grid_profile(&grids, certificate.argmin),
            )),
            gains: Some(certificate.entries.iter().map(|e| e.best_gain).collect()),
        },
    })
}

pub fn cmd_paper_example(ov: &Overrides) -> Result<String, CliError> {
    let game = reference_game();

    // (i) documented closed forms against the direct Choquet integral on
    // the 21-level face grid
    let grid = face_grid(20);
    let mut max_dev = vec![0.0f64; 2];
    let mut witness = (1.0, 0.0, 1.0, 0.0);
    let mut witness_vals = (0.0f64, 0.0f64);
    for &(a1, b1, a2, b2) in &grid {
        let profile = MixedProfile::new(vec![
            Density::new(game.spaces()[0].clone(), vec![a1, b1])
                .expect("face coordinates form a density"),
            Density::new(game.spaces()[1].clone(), vec![a2, b2])
                .expect("face coordinates form a density"),
        ]);
        for (player, worst) in max_dev.iter_mut().enumerate() {
            let direct = game
                .expected_payoff(&profile, player, &PayoffKind::Choquet, &TNorm::Min)
                .map_err(game_error)?;
            let cf = closed_form_payoff(player, a1, b1, a2, b2);
            let dev = (cf - direct).abs();
            if dev > *worst {
                *worst = dev;
                witness = (a1, b1, a2, b2);
                witness_vals = (cf, direct);
            }
        }
    }
    let closed_form_check = doc::ClosedFormCheck {
        grid_points_per_player: 41,
        profiles: grid.len(),
        max_abs_deviation: max_dev,
        witness_profile: vec![witness.0, witness.1, witness.2, witness.3],
        witness_closed_form: witness_vals.0,
        witness_integral: witness_vals.1,
    };

    // (ii) the four-case deviation analysis on the k=20 face grid
    let mut per_case: Vec<(CaseId, usize, f64)> = [
        CaseId::BothA,
        CaseId::AThenB,
        CaseId::BothB,
        CaseId::BThenA,
    ]
    .into_iter()
    .map(|c| (c, 0usize, f64::INFINITY))
    .collect();
    let mut min_gap = f64::INFINITY;
    let mut all_positive = true;
    for &(a1, b1, a2, b2) in &grid {
        let report = verify_counterexample_cases(a1, b1, a2, b2)
            .map_err(|e| CliError::Validation(e.to_string()))?;
        min_gap = min_gap.min(report.gap);
        all_positive &= report.gap > 0.0;
        let slot = per_case
            .iter_mut()
            .find(|(c, _, _)| *c == report.case)
            .expect("every case id is tabulated");
        slot.1 += 1;
        slot.2 = slot.2.min(report.gap);
    }
    let case_analysis = doc::CaseAnalysis {
        grid_k: 20,
        profiles: grid.len(),
        all_gaps_positive: all_positive,
        min_gap,
        per_case: per_case
            .into_iter()
            .map(|(c, points, min_gap)| doc::CaseSummary {
                case: case_name(c).to_string(),
                points,
                min_gap,
            })
            .collect(),
    };

    // (iii) Choquet minimization scan at k=10, eps=0.01
    let mut choquet_cfg =
        SearchConfig::new(PayoffKind::Choquet, TNorm::Min, Mode::Min, 0.01);
    choquet_cfg.max_enumeration = ov.cap;
    let choquet_search = search_summary(&game, "choquet", 10, 0.01, &choquet_cfg, ov.cap)?;

    // (iv) Sugeno minimization of the unit-scaled game, k=4 as documented
    // and k=6 where the thirds-valued equilibrium is on the grid
    let unit = reference_game_unit();
    let mut sugeno_cfg = SearchConfig::new(
        PayoffKind::TNormed(TNorm::Min),
        TNorm::Min,
        Mode::Min,
        0.0,
    );
    sugeno_cfg.max_enumeration = ov.cap;
    let sugeno_search = search_summary(&unit, "sugeno", 4, 0.0, &sugeno_cfg, ov.cap)?;
    let sugeno_search_refined = search_summary(&unit, "sugeno", 6, 0.0, &sugeno_cfg, ov.cap)?;

    let result = doc::PaperExampleResult {
        payoffs_player1: game.payoff_tensor(0).to_vec(),
        payoffs_player2: game.payoff_tensor(1).to_vec(),
        closed_form_check,
        case_analysis,
        choquet_search,
        sugeno_search,
        sugeno_search_refined,
    };
    render(envelope("paper-example", (), result))
}

pub fn cmd_axioms(spec: AxiomsSpec, ov: &Overrides) -> Result<String, CliError> {
    let size = spec.size.unwrap_or(3);
    if size == 0 || size > 6 {
        return Err(CliError::Validation(format!(
            "size must be between 1 and 6, got {size}"
        )));
    }
    let tnorm_name = spec.tnorm.clone().unwrap_or_else(|| "min".to_string());
    let tnorm = parse_tnorm(&tnorm_name)?;
    let capacities = spec.capacities.unwrap_or(20);
    let samples = spec.samples.unwrap_or(25);
    let seed = ov.seed.or(spec.seed).unwrap_or(0);

    let space = FiniteSpace::of_size(size).map_err(|e| CliError::Validation(e.to_string()))?;
    check_subset_cap(space.len(), ov.cap)?;
    let mut rng = sample::rng(seed);
    let mut axiom_violations = 0u32;
    let mut recovery_mismatches = 0u32;
    for i in 0..capacities {
        let cap: Capacity = sample::random_capacity(&space, &mut rng);
        let mu = Functional::t_normed(cap.clone(), tnorm.clone());
        let report = check_axioms(&mu, &space, &tnorm, samples, seed.wrapping_add(u64::from(i)));
        axiom_violations += report.violations.len() as u32;
        match recover_capacity(&mu, &space) {
            Ok(recovered) if recovered == cap => {}
            _ => recovery_mismatches += 1,
        }
    }
    let result = doc::AxiomsResult {
        size,
        tnorm: tnorm_name,
        capacities,
        samples_per_capacity: samples,
        seed,
        axiom_checks: capacities,
        axiom_violations,
        recovery_roundtrips: capacities,
        recovery_mismatches,
    };
    render(envelope("axioms", spec, result))
}

fn render<D: serde::Serialize>(document: D) -> Result<String, CliError> {
    let mut out = serde_json::to_string_pretty(&document)
        .map_err(|e| CliError::Validation(format!("could not serialize result: {e}")))?;
    out.push('\n');
    Ok(out)
}
