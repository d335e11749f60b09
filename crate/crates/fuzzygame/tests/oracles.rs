//! Agreement between the closed integral evaluators and the dense-grid
//! reference evaluators.

use fuzzygame::oracle::{grid_sugeno, grid_t_normed, riemann_choquet};
use fuzzygame::sample;
use fuzzygame::space::FiniteSpace;
use fuzzygame::tnorm::TNorm;
use fuzzygame::{choquet, sugeno, t_normed};

#[test]
fn choquet_matches_riemann_oracle() {
    let mut rng = sample::rng(101);
    for n in 1..=6usize {
        let space = FiniteSpace::of_size(n).unwrap();
        for _ in 0..30 {
            let f = sample::random_function(&space, 3.0, &mut rng);
            let cap = sample::random_capacity(&space, &mut rng);
            let exact = choquet(&f, &cap).unwrap();
            let approx = riemann_choquet(&f, &cap, 1e-4);
            assert!(
                (exact - approx).abs() < 1e-3,
                "n={n}: {exact} vs {approx} for f={:?}",
                f.values()
            );
        }
    }
}

#[test]
fn sugeno_matches_grid_oracle() {
    let mut rng = sample::rng(102);
    for n in 1..=6usize {
        let space = FiniteSpace::of_size(n).unwrap();
        for _ in 0..30 {
            let f = sample::random_unit_function(&space, &mut rng);
            let cap = sample::random_capacity(&space, &mut rng);
            let exact = sugeno(&f, &cap).unwrap();
            let approx = grid_sugeno(&f, &cap, 1e-4);
            assert!((exact - approx).abs() < 1e-3, "n={n}: {exact} vs {approx}");
        }
    }
}

#[test]
fn t_normed_matches_grid_oracle() {
    let mut rng = sample::rng(103);
    for tnorm in [TNorm::Min, TNorm::Product, TNorm::Lukasiewicz] {
        for n in 1..=6usize {
            let space = FiniteSpace::of_size(n).unwrap();
            for _ in 0..20 {
                let f = sample::random_unit_function(&space, &mut rng);
                let cap = sample::random_capacity(&space, &mut rng);
                let exact = t_normed(&f, &cap, &tnorm).unwrap();
                let approx = grid_t_normed(&f, &cap, &tnorm, 1e-4);
                assert!(
                    (exact - approx).abs() < 1e-3,
                    "{tnorm} n={n}: {exact} vs {approx}"
                );
            }
        }
    }
}

#[test]
fn frozen_integral_examples() {
    let space = FiniteSpace::new(["a", "b"]).unwrap();
    let cap = fuzzygame::Capacity::new(space.clone(), vec![0.0, 0.5, 0.3, 1.0]).unwrap();
    let f = fuzzygame::FiniteFunction::new(space, vec![0.4, 0.9]).unwrap();

    // Values first computed with the dense-grid evaluators, then frozen.
    assert!((choquet(&f, &cap).unwrap() - 0.55).abs() < 1e-12);
    assert!((riemann_choquet(&f, &cap, 1e-5) - 0.55).abs() < 1e-4);

    assert_eq!(sugeno(&f, &cap).unwrap(), 0.4);
    assert!((grid_sugeno(&f, &cap, 1e-4) - 0.4).abs() < 1e-3);

    assert_eq!(t_normed(&f, &cap, &TNorm::Product).unwrap(), 0.4);
    assert!((grid_t_normed(&f, &cap, &TNorm::Product, 1e-4) - 0.4).abs() < 1e-3);

    assert_eq!(t_normed(&f, &cap, &TNorm::Lukasiewicz).unwrap(), 0.4);
}
