//! Cross-module invariants: duality, density round-trips, integral laws,
//! tensor coincidence and the frozen equilibrium fixtures.

use proptest::prelude::*;

use fuzzygame::capacity::{Capacity, Density};
use fuzzygame::counterexample::{reference_game, reference_game_unit};
use fuzzygame::equilibrium::{
    density_grid, find_equilibrium, improvement_landscape, EquilibriumStatus, Mode, SearchConfig,
};
use fuzzygame::game::{b_convex_combine, MixedProfile, PayoffKind};
use fuzzygame::integral::{are_comonotone, level_set};
use fuzzygame::sample;
use fuzzygame::space::FiniteSpace;
use fuzzygame::tensor::{marginal, tensor_density, tensor_general, ProductSpace};
use fuzzygame::tnorm::TNorm;
use fuzzygame::t_normed;

/// Dyadic capacity values from raw proptest input by monotone closure.
fn capacity_from_raw(space: &FiniteSpace, raw: &[u32]) -> Capacity {
    let count = space.subset_count();
    let mut values = vec![0.0f64; count];
    for mask in 1..count {
        let mut v = f64::from(raw[mask % raw.len()] % 1025) / 1024.0;
        for i in 0..space.len() {
            if mask & (1 << i) != 0 {
                v = v.max(values[mask & !(1 << i)]);
            }
        }
        values[mask] = v;
    }
    values[count - 1] = 1.0;
    Capacity::new(space.clone(), values).unwrap()
}

proptest! {
    #[test]
    fn dual_is_an_involution(raw in proptest::collection::vec(any::<u32>(), 16)) {
        let space = FiniteSpace::of_size(4).unwrap();
        let cap = capacity_from_raw(&space, &raw);
        prop_assert_eq!(cap.dual().dual(), cap);
    }

    #[test]
    fn possibility_iff_dual_is_necessity(raw in proptest::collection::vec(any::<u32>(), 8), from_density in any::<bool>()) {
        let space = FiniteSpace::of_size(3).unwrap();
        let cap = if from_density {
            let d: Vec<f64> = raw.iter().take(3).map(|&r| f64::from(r % 1025) / 1024.0).collect();
            let mut d = d; d[0] = 1.0;
            Capacity::from_density(&Density::new(space.clone(), d).unwrap())
        } else {
            capacity_from_raw(&space, &raw)
        };
        prop_assert_eq!(cap.is_possibility(), cap.dual().is_necessity());
        prop_assert_eq!(cap.is_necessity(), cap.dual().is_possibility());
    }

    #[test]
    fn b_convex_combination_is_a_valid_density(
        raw1 in proptest::collection::vec(0u32..=1024, 4),
        raw2 in proptest::collection::vec(0u32..=1024, 4),
        s in 0u32..=1024,
        top1 in 0usize..4,
        top2 in 0usize..4,
    ) {
        let space = FiniteSpace::of_size(4).unwrap();
        let mut d1: Vec<f64> = raw1.iter().map(|&r| f64::from(r) / 1024.0).collect();
        let mut d2: Vec<f64> = raw2.iter().map(|&r| f64::from(r) / 1024.0).collect();
        d1[top1] = 1.0;
        d2[top2] = 1.0;
        let d1 = Density::new(space.clone(), d1).unwrap();
        let d2 = Density::new(space, d2).unwrap();
        let c = b_convex_combine(f64::from(s) / 1024.0, &d1, &d2).unwrap();
        prop_assert_eq!(c.values().iter().cloned().fold(0.0, f64::max), 1.0);
        for (i, &v) in c.values().iter().enumerate() {
            prop_assert!(v >= d2.value(i) && v <= 1.0);
        }
    }
}

#[test]
fn from_density_is_the_max_extension_exhaustively() {
    let mut rng = sample::rng(301);
    for n in 1..=8usize {
        let space = FiniteSpace::of_size(n).unwrap();
        for _ in 0..10 {
            let d = sample::random_density(&space, &mut rng);
            let cap = Capacity::from_density(&d);
            for mask in 0..space.subset_count() {
                let expect = (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| d.value(i))
                    .fold(0.0, f64::max);
                assert_eq!(cap.value(mask), expect, "n={n} mask={mask:#b}");
            }
            // and the result revalidates as a capacity
            assert!(Capacity::new(space.clone(), cap.values().to_vec()).is_ok());
        }
    }
}

#[test]
fn density_round_trips_are_exact() {
    let mut rng = sample::rng(302);
    for n in 1..=6usize {
        let space = FiniteSpace::of_size(n).unwrap();
        for _ in 0..20 {
            let d = sample::random_density(&space, &mut rng);
            let cap = Capacity::from_density(&d);
            assert_eq!(cap.density().unwrap(), d);
            assert_eq!(Capacity::from_density(&cap.density().unwrap()), cap);
        }
    }
}

#[test]
fn bound_lemma_exact_for_t_normed_integrals() {
    let mut rng = sample::rng(303);
    for tnorm in [TNorm::Min, TNorm::Product, TNorm::Lukasiewicz] {
        for _ in 0..100 {
            let space = FiniteSpace::of_size(5).unwrap();
            let f = sample::random_unit_function(&space, &mut rng);
            let cap = sample::random_capacity(&space, &mut rng);
            let v = t_normed(&f, &cap, &tnorm).unwrap();
            assert!(
                f.min_value() <= v && v <= f.max_value(),
                "{tnorm}: {v} outside [{}, {}]",
                f.min_value(),
                f.max_value()
            );
        }
    }
}

#[test]
fn comonotone_level_sets_are_nested() {
    let mut rng = sample::rng(304);
    let space = FiniteSpace::of_size(5).unwrap();
    for _ in 0..100 {
        let (f, g) = sample::comonotone_pair(&space, &mut rng);
        assert!(are_comonotone(&f, &g).unwrap());
        let mut ts: Vec<f64> = f.values().iter().chain(g.values()).cloned().collect();
        ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ts.dedup();
        for t in ts {
            let a = level_set(&f, t);
            let b = level_set(&g, t);
            assert!(a & b == a || a & b == b, "level sets not nested at t={t}");
        }
    }
}

#[test]
fn comonotone_maxitivity_is_exact_for_t_normed_integrals() {
    let mut rng = sample::rng(305);
    let space = FiniteSpace::of_size(4).unwrap();
    for tnorm in [TNorm::Min, TNorm::Product, TNorm::Lukasiewicz] {
        for _ in 0..100 {
            let cap = sample::random_capacity(&space, &mut rng);
            let (f, g) = sample::comonotone_pair(&space, &mut rng);
            let joint = t_normed(&f.pointwise_max(&g), &cap, &tnorm).unwrap();
            let separate = t_normed(&f, &cap, &tnorm)
                .unwrap()
                .max(t_normed(&g, &cap, &tnorm).unwrap());
            assert_eq!(joint, separate, "{tnorm}");
        }
    }
}

#[test]
fn homogeneity_on_a_scalar_grid() {
    let mut rng = sample::rng(306);
    let space = FiniteSpace::of_size(4).unwrap();
    for tnorm in [TNorm::Min, TNorm::Product, TNorm::Lukasiewicz] {
        for _ in 0..50 {
            let cap = sample::random_capacity(&space, &mut rng);
            let f = sample::random_unit_function(&space, &mut rng);
            let base = t_normed(&f, &cap, &tnorm).unwrap();
            for i in 0..=8u32 {
                let c = f64::from(i) / 8.0;
                let scaled = f.map(|v| tnorm.apply(c, v).unwrap());
                let lhs = t_normed(&scaled, &cap, &tnorm).unwrap();
                let rhs = tnorm.apply(c, base).unwrap();
                assert_eq!(lhs, rhs, "{tnorm} at c={c}");
            }
        }
    }
}

#[test]
fn tensor_coincidence_on_all_subsets() {
    let mut rng = sample::rng(307);
    let sa = FiniteSpace::of_size(3).unwrap();
    let sb = FiniteSpace::of_size(3).unwrap();
    for tnorm in [TNorm::Min, TNorm::Product, TNorm::Lukasiewicz] {
        for _ in 0..20 {
            let d1 = sample::random_density(&sa, &mut rng);
            let d2 = sample::random_density(&sb, &mut rng);
            let general = tensor_general(
                &Capacity::from_density(&d1),
                &Capacity::from_density(&d2),
                &tnorm,
            )
            .unwrap();
            let via_density =
                Capacity::from_density(&tensor_density(&d1, &d2, &tnorm).unwrap());
            assert_eq!(general, via_density, "{tnorm}");
        }
    }
}

#[test]
fn tensor_density_is_monotone_in_each_factor() {
    let mut rng = sample::rng(308);
    let sa = FiniteSpace::of_size(3).unwrap();
    let sb = FiniteSpace::of_size(3).unwrap();
    for tnorm in [TNorm::Min, TNorm::Product, TNorm::Lukasiewicz] {
        for _ in 0..30 {
            let d1 = sample::random_density(&sa, &mut rng);
            let d2 = sample::random_density(&sb, &mut rng);
            // raise one entry of d1 (keeping it a density)
            let mut raised = d1.values().to_vec();
            let idx = (0..3).find(|&i| raised[i] < 1.0).unwrap_or(0);
            raised[idx] = (raised[idx] + 0.25).min(1.0);
            let d1r = Density::new(sa.clone(), raised).unwrap();
            let low = tensor_density(&d1, &d2, &tnorm).unwrap();
            let high = tensor_density(&d1r, &d2, &tnorm).unwrap();
            for (a, b) in low.values().iter().zip(high.values()) {
                assert!(a <= b, "{tnorm}");
            }
        }
    }
}

#[test]
fn min_tensor_is_the_standard_joint_distribution() {
    let mut rng = sample::rng(309);
    let sa = FiniteSpace::of_size(3).unwrap();
    let sb = FiniteSpace::of_size(2).unwrap();
    for _ in 0..20 {
        let d1 = sample::random_density(&sa, &mut rng);
        let d2 = sample::random_density(&sb, &mut rng);
        let joint = tensor_density(&d1, &d2, &TNorm::Min).unwrap();
        let p = ProductSpace::new(vec![sa.clone(), sb.clone()]).unwrap();
        for x in 0..3 {
            for y in 0..2 {
                assert_eq!(
                    joint.value(p.flat_index(&[x, y])),
                    d1.value(x).min(d2.value(y))
                );
            }
        }
        let cap = Capacity::from_density(&joint);
        assert_eq!(marginal(&cap, &p, 0).unwrap(), Capacity::from_density(&d1));
        assert_eq!(marginal(&cap, &p, 1).unwrap(), Capacity::from_density(&d2));
    }
}

#[test]
fn expected_payoff_is_lipschitz_in_each_density_entry() {
    // Perturbing one density entry by delta moves every joint-density
    // entry by at most delta, hence every capacity value and every
    // integral term by at most delta.
    let g = reference_game_unit();
    let mut rng = sample::rng(311);
    for star in [TNorm::Min, TNorm::Product, TNorm::Lukasiewicz] {
        for ast in [TNorm::Min, TNorm::Product, TNorm::Lukasiewicz] {
            for _ in 0..20 {
                let d1 = sample::random_density(&g.spaces()[0], &mut rng);
                let d2 = sample::random_density(&g.spaces()[1], &mut rng);
                let base = MixedProfile::new(vec![d1.clone(), d2]);
                let v0 = g
                    .expected_payoff(&base, 0, &PayoffKind::TNormed(star.clone()), &ast)
                    .unwrap();
                let delta = 1.0 / 64.0;
                for entry in 0..2 {
                    let mut moved = d1.values().to_vec();
                    moved[entry] = (moved[entry] - delta).max(0.0);
                    if moved.iter().cloned().fold(0.0, f64::max) < 1.0 {
                        continue;
                    }
                    let perturbed =
                        base.with_density(0, Density::new(g.spaces()[0].clone(), moved).unwrap());
                    let v1 = g
                        .expected_payoff(&perturbed, 0, &PayoffKind::TNormed(star.clone()), &ast)
                        .unwrap();
                    assert!(
                        (v0 - v1).abs() <= delta + 1e-12,
                        "{star}/{ast}: payoff moved {} for a {delta} perturbation",
                        (v0 - v1).abs()
                    );
                }
            }
        }
    }
}

#[test]
fn refining_the_grid_does_not_increase_the_defect() {
    let g = reference_game_unit();
    let cfg = SearchConfig::new(PayoffKind::TNormed(TNorm::Min), TNorm::Min, Mode::Min, 0.0);
    for k in [2u32, 3] {
        let coarse: Vec<_> = g
            .spaces()
            .iter()
            .map(|s| density_grid(s, k).unwrap())
            .collect();
        let fine: Vec<_> = g
            .spaces()
            .iter()
            .map(|s| density_grid(s, 2 * k).unwrap())
            .collect();
        let dc = improvement_landscape(&g, &coarse, &cfg).unwrap().defect;
        let df = improvement_landscape(&g, &fine, &cfg).unwrap().defect;
        assert!(df <= dc + 1e-12, "k={k}: defect went {dc} -> {df}");
    }
}

#[test]
fn sugeno_equilibrium_found_on_grids_containing_thirds() {
    // Constructive existence fixture: on the k=6 grid the scan finds the
    // profile ((2/3,1),(2/3,1)) with payoff 2/3 for both players.
    let g = reference_game_unit();
    let grids: Vec<_> = g
        .spaces()
        .iter()
        .map(|s| density_grid(s, 6).unwrap())
        .collect();
    let cfg = SearchConfig::new(PayoffKind::TNormed(TNorm::Min), TNorm::Min, Mode::Min, 0.0);
    let res = find_equilibrium(&g, &grids, &cfg).unwrap();
    match res.status {
        EquilibriumStatus::Found {
            profile_index,
            profile,
            payoffs,
        } => {
            assert_eq!(profile_index, 56);
            let third2 = 2.0 / 3.0;
            for d in profile.densities() {
                assert_eq!(d.values(), &[third2, 1.0]);
            }
            assert_eq!(payoffs, vec![third2, third2]);
        }
        EquilibriumStatus::NotFound { certificate } => {
            panic!("expected an exact equilibrium at k=6, defect {}", certificate.defect)
        }
    }
}

#[test]
fn choquet_landscape_fixture_at_k10() {
    let g = reference_game();
    let grids: Vec<_> = g
        .spaces()
        .iter()
        .map(|s| density_grid(s, 10).unwrap())
        .collect();
    let cfg = SearchConfig::new(PayoffKind::Choquet, TNorm::Min, Mode::Min, 0.01);
    let ls = improvement_landscape(&g, &grids, &cfg).unwrap();
    assert!((ls.defect - 0.4).abs() < 1e-12);
    assert_eq!(ls.argmin, 70);
    assert!(ls.entries.iter().all(|e| e.best_gain > 0.01));
}

#[test]
fn all_ones_max_equilibrium_for_random_games() {
    let mut rng = sample::rng(310);
    for _ in 0..5 {
        let n1 = 2 + (sample::dyadic_unit(&mut rng) * 1.99) as usize;
        let n2 = 2 + (sample::dyadic_unit(&mut rng) * 1.99) as usize;
        let s1 = FiniteSpace::of_size(n1).unwrap();
        let s2 = FiniteSpace::of_size(n2).unwrap();
        let payoffs = vec![
            (0..n1 * n2).map(|_| sample::dyadic_unit(&mut rng)).collect(),
            (0..n1 * n2).map(|_| sample::dyadic_unit(&mut rng)).collect(),
        ];
        let g = fuzzygame::Game::new(vec![s1, s2], payoffs).unwrap();
        let ones = MixedProfile::all_ones(&g);
        for player in 0..2 {
            let v = g
                .expected_payoff(&ones, player, &PayoffKind::TNormed(TNorm::Min), &TNorm::Min)
                .unwrap();
            let max = g
                .payoff_tensor(player)
                .iter()
                .cloned()
                .fold(0.0, f64::max);
            assert_eq!(v, max);
        }
    }
}
