//! Grid-discretized best response and epsilon-equilibrium search over
//! possibility-density profiles.
//!
//! Expected payoffs are piecewise flat in the densities, so iterated best
//! response can cycle on plateaus. The search is therefore an exhaustive
//! scan over all grid profiles, which doubles as the certificate: for every
//! profile the best unilateral improvement is recorded, and the minimum of
//! those improvements is the grid's equilibrium defect.

use rayon::prelude::*;
use thiserror::Error;

use crate::capacity::Density;
use crate::game::{Game, GameError, MixedProfile, PayoffKind};
use crate::space::FiniteSpace;
use crate::tnorm::TNorm;

/// Default cap on enumeration sizes (grid members, profile products).
pub const DEFAULT_MAX_ENUMERATION: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EquilibriumError {
    #[error("enumeration of {needed} items exceeds the cap of {cap}")]
    SizeError { needed: u64, cap: u64 },
    #[error("grid resolution k must be at least 1")]
    BadResolution,
    #[error("expected one grid per player ({players}), got {got}")]
    WrongGridCount { players: usize, got: usize },
    #[error("grid of player {0} lives on the wrong space")]
    GridSpaceMismatch(usize),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Whether players minimize or maximize their own expected payoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Min,
    Max,
}

/// All densities over a space with entries in `{0, 1/k, ..., 1}`, i.e. with
/// at least one entry exactly 1. Members are enumerated in ascending
/// lexicographic order of their entry vectors; that order also breaks ties
/// everywhere downstream.
#[derive(Debug, Clone)]
pub struct DensityGrid {
    space: FiniteSpace,
    k: u32,
    members: Vec<Density>,
}

impl DensityGrid {
    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn members(&self) -> &[Density] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Enumerates the density grid of resolution `k`. The member count is
/// `(k+1)^n - k^n`: all entry tuples over the `k+1` grid levels except
/// those that never reach level `k`.
pub fn density_grid(space: &FiniteSpace, k: u32) -> Result<DensityGrid, EquilibriumError> {
    density_grid_capped(space, k, DEFAULT_MAX_ENUMERATION)
}

pub fn density_grid_capped(
    space: &FiniteSpace,
    k: u32,
    cap: u64,
) -> Result<DensityGrid, EquilibriumError> {
    if k == 0 {
        return Err(EquilibriumError::BadResolution);
    }
    let n = space.len() as u32;
    let tuples = (u64::from(k) + 1).checked_pow(n);
    match tuples {
        Some(t) if t <= cap => {}
        _ => {
            return Err(EquilibriumError::SizeError {
                needed: tuples.unwrap_or(u64::MAX),
                cap,
            })
        }
    }
    let mut members = Vec::new();
    let mut levels = vec![0u32; space.len()];
    loop {
        if levels.contains(&k) {
            let d = levels.iter().map(|&l| f64::from(l) / f64::from(k)).collect();
            members.push(Density::new(space.clone(), d).expect("grid density is valid"));
        }
        // increment, last coordinate fastest, so members come out in
        // ascending lexicographic order of their entry vectors
        let mut pos = levels.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            levels[pos] += 1;
            if levels[pos] <= k {
                break;
            }
            levels[pos] = 0;
        }
        if levels.iter().all(|&l| l == 0) {
            break;
        }
    }
    Ok(DensityGrid {
        space: space.clone(),
        k,
        members,
    })
}

/// Search parameters shared by the scan operations.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub payoff: PayoffKind,
    pub tensor_tnorm: TNorm,
    pub mode: Mode,
    pub epsilon: f64,
    pub max_enumeration: u64,
}

impl SearchConfig {
    pub fn new(payoff: PayoffKind, tensor_tnorm: TNorm, mode: Mode, epsilon: f64) -> Self {
        SearchConfig {
            payoff,
            tensor_tnorm,
            mode,
            epsilon,
            max_enumeration: DEFAULT_MAX_ENUMERATION,
        }
    }
}

/// Best improving unilateral deviation at one profile. `best_gain` is the
/// largest payoff improvement any single player can realize by moving to
/// another grid member (negative when every deviation hurts); `player` and
/// `deviation` locate the first deviation attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileDefect {
    pub profile_index: usize,
    pub best_gain: f64,
    pub player: Option<usize>,
    pub deviation: Option<usize>,
}

/// The per-profile improvement map together with its minimum.
#[derive(Debug, Clone)]
pub struct ImprovementLandscape {
    pub entries: Vec<ProfileDefect>,
    /// `min` over profiles of `max(best_gain, 0)`; zero exactly when some
    /// grid profile is an exact equilibrium.
    pub defect: f64,
    /// First profile attaining the defect.
    pub argmin: usize,
}

#[derive(Debug, Clone)]
pub enum EquilibriumStatus {
    Found {
        profile_index: usize,
        profile: MixedProfile,
        payoffs: Vec<f64>,
    },
    NotFound {
        certificate: ImprovementLandscape,
    },
}

#[derive(Debug, Clone)]
pub struct EquilibriumResult {
    pub status: EquilibriumStatus,
    pub epsilon: f64,
    pub mode: Mode,
}

impl EquilibriumResult {
    pub fn found(&self) -> bool {
        matches!(self.status, EquilibriumStatus::Found { .. })
    }
}

struct ProfileEnumeration<'a> {
    grids: &'a [DensityGrid],
    count: usize,
}

impl<'a> ProfileEnumeration<'a> {
    fn new(
        game: &Game,
        grids: &'a [DensityGrid],
        cap: u64,
    ) -> Result<ProfileEnumeration<'a>, EquilibriumError> {
        if grids.len() != game.players() {
            return Err(EquilibriumError::WrongGridCount {
                players: game.players(),
                got: grids.len(),
            });
        }
        for (i, (grid, space)) in grids.iter().zip(game.spaces()).enumerate() {
            if grid.space() != space {
                return Err(EquilibriumError::GridSpaceMismatch(i));
            }
        }
        let mut count: u64 = 1;
        for g in grids {
            count = count.saturating_mul(g.len() as u64);
            if count > cap {
                return Err(EquilibriumError::SizeError { needed: count, cap });
            }
        }
        Ok(ProfileEnumeration {
            grids,
            count: count as usize,
        })
    }

    /// Per-player member indices for a flat profile index; player 0 is the
    /// most significant digit.
    fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.grids.len()];
        for (i, g) in self.grids.iter().enumerate().rev() {
            out[i] = idx % g.len();
            idx /= g.len();
        }
        out
    }

    fn profile(&self, idx: usize) -> MixedProfile {
        let members = self.decode(idx);
        MixedProfile::new(
            members
                .iter()
                .zip(self.grids)
                .map(|(&m, g)| g.members()[m].clone())
                .collect(),
        )
    }
}

fn gain(mode: Mode, current: f64, deviated: f64) -> f64 {
    match mode {
        Mode::Min => current - deviated,
        Mode::Max => deviated - current,
    }
}

fn profile_defect(
    game: &Game,
    en: &ProfileEnumeration,
    cfg: &SearchConfig,
    idx: usize,
) -> Result<(ProfileDefect, Vec<f64>), EquilibriumError> {
    let members = en.decode(idx);
    let profile = en.profile(idx);
    let mut current = Vec::with_capacity(game.players());
    for i in 0..game.players() {
        current.push(game.expected_payoff(&profile, i, &cfg.payoff, &cfg.tensor_tnorm)?);
    }
    let mut best = f64::NEG_INFINITY;
    let mut arg: Option<(usize, usize)> = None;
    for i in 0..game.players() {
        for (mi, d) in en.grids[i].members().iter().enumerate() {
            if mi == members[i] {
                continue;
            }
            let deviated = game.expected_payoff(
                &profile.with_density(i, d.clone()),
                i,
                &cfg.payoff,
                &cfg.tensor_tnorm,
            )?;
            let g = gain(cfg.mode, current[i], deviated);
            if g > best {
                best = g;
                arg = Some((i, mi));
            }
        }
    }
    let (player, deviation) = match arg {
        Some((p, d)) => (Some(p), Some(d)),
        None => (None, None),
    };
    Ok((
        ProfileDefect {
            profile_index: idx,
            best_gain: if arg.is_some() { best } else { 0.0 },
            player,
            deviation,
        },
        current,
    ))
}

/// Best response of `player` on a grid, holding the other densities of
/// `profile` fixed: the grid member optimizing the player's expected payoff
/// for the configured mode, with ties broken by enumeration order. Returns
/// the member index, the density and its payoff.
pub fn best_response(
    game: &Game,
    profile: &MixedProfile,
    player: usize,
    grid: &DensityGrid,
    cfg: &SearchConfig,
) -> Result<(usize, Density, f64), EquilibriumError> {
    if grid.space() != &game.spaces()[player] {
        return Err(EquilibriumError::GridSpaceMismatch(player));
    }
    let mut best: Option<(usize, f64)> = None;
    for (mi, d) in grid.members().iter().enumerate() {
        let v = game.expected_payoff(
            &profile.with_density(player, d.clone()),
            player,
            &cfg.payoff,
            &cfg.tensor_tnorm,
        )?;
        let better = match best {
            None => true,
            Some((_, b)) => match cfg.mode {
                Mode::Min => v < b,
                Mode::Max => v > b,
            },
        };
        if better {
            best = Some((mi, v));
        }
    }
    let (mi, v) = best.expect("grids are never empty");
    Ok((mi, grid.members()[mi].clone(), v))
}

/// The full improvement map: for every grid profile, the best unilateral
/// grid deviation and its gain. Profiles are evaluated in parallel and
/// reduced in index order, so the result does not depend on scheduling.
pub fn improvement_landscape(
    game: &Game,
    grids: &[DensityGrid],
    cfg: &SearchConfig,
) -> Result<ImprovementLandscape, EquilibriumError> {
    let en = ProfileEnumeration::new(game, grids, cfg.max_enumeration)?;
    let entries: Result<Vec<ProfileDefect>, EquilibriumError> = (0..en.count)
        .into_par_iter()
        .map(|idx| profile_defect(game, &en, cfg, idx).map(|(d, _)| d))
        .collect();
    let entries = entries?;
    let mut defect = f64::INFINITY;
    let mut argmin = 0;
    for (i, e) in entries.iter().enumerate() {
        let d = e.best_gain.max(0.0);
        if d < defect {
            defect = d;
            argmin = i;
        }
    }
    Ok(ImprovementLandscape {
        entries,
        defect,
        argmin,
    })
}

/// Exhaustive scan for an epsilon-equilibrium: the first profile (in
/// enumeration order) at which no unilateral grid deviation improves the
/// deviating player's payoff by more than `epsilon`. With `epsilon = 0`
/// this is an exact grid equilibrium. When no profile qualifies the full
/// improvement landscape is returned as the certificate.
pub fn find_equilibrium(
    game: &Game,
    grids: &[DensityGrid],
    cfg: &SearchConfig,
) -> Result<EquilibriumResult, EquilibriumError> {
    let en = ProfileEnumeration::new(game, grids, cfg.max_enumeration)?;
    let evaluated: Result<Vec<(ProfileDefect, Vec<f64>)>, EquilibriumError> = (0..en.count)
        .into_par_iter()
        .map(|idx| profile_defect(game, &en, cfg, idx))
        .collect();
    let evaluated = evaluated?;
    for (idx, (defect, payoffs)) in evaluated.iter().enumerate() {
        if defect.best_gain <= cfg.epsilon {
            return Ok(EquilibriumResult {
                status: EquilibriumStatus::Found {
                    profile_index: idx,
                    profile: en.profile(idx),
                    payoffs: payoffs.clone(),
                },
                epsilon: cfg.epsilon,
                mode: cfg.mode,
            });
        }
    }
    let entries: Vec<ProfileDefect> = evaluated.into_iter().map(|(d, _)| d).collect();
    let mut defect = f64::INFINITY;
    let mut argmin = 0;
    for (i, e) in entries.iter().enumerate() {
        let d = e.best_gain.max(0.0);
        if d < defect {
            defect = d;
            argmin = i;
        }
    }
    Ok(EquilibriumResult {
        status: EquilibriumStatus::NotFound {
            certificate: ImprovementLandscape {
                entries,
                defect,
                argmin,
            },
        },
        epsilon: cfg.epsilon,
        mode: cfg.mode,
    })
}
