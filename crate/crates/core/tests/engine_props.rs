mod common;

use common::{random_colouring, random_digraph, rng, system};
use gvm::engine::{exact_distribution, propagate_marginals, simulate_mc, step_sample, Evaluator};
use gvm::model::{Colour, Colouring, SeedSet};
use proptest::prelude::*;

fn arb_case() -> impl Strategy<Value = (usize, u64)> {
    (2usize..=6, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn belief_rows_stay_distributions((n, seed) in arb_case(), rounds in 0usize..8) {
        let mut r = rng(seed);
        let g = random_digraph(n, 0.4, &mut r);
        let sys = system(&g, random_colouring(n, [0.3, 0.3], &mut r));
        let b = propagate_marginals(&sys, &SeedSet::empty(), rounds).unwrap();
        for row in b.rows() {
            prop_assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            prop_assert!(row.iter().all(|&p| (0.0..=1.0).contains(&p)));
        }
    }

    #[test]
    fn blue_never_recedes_without_red((n, seed) in arb_case()) {
        let mut r = rng(seed);
        let g = random_digraph(n, 0.4, &mut r);
        let sys = system(&g, random_colouring(n, [0.4, 0.0], &mut r));
        let none = SeedSet::empty();
        let mut prev_m = propagate_marginals(&sys, &none, 0).unwrap();
        let mut prev_e = exact_distribution(&sys, &none, 0, 10).unwrap().marginals();
        for t in 1..=5 {
            let m = propagate_marginals(&sys, &none, t).unwrap();
            let e = exact_distribution(&sys, &none, t, 10).unwrap().marginals();
            for v in 0..n {
                prop_assert!(m.prob(v, Colour::Blue) >= prev_m.prob(v, Colour::Blue) - 1e-12);
                prop_assert!(e.prob(v, Colour::Blue) >= prev_e.prob(v, Colour::Blue) - 1e-12);
            }
            prev_m = m;
            prev_e = e;
        }
    }

    #[test]
    fn marginals_are_exact_on_fully_coloured_starts((n, seed) in arb_case(), rounds in 0usize..6) {
        let mut r = rng(seed);
        let g = random_digraph(n, 0.5, &mut r);
        let sys = system(&g, random_colouring(n, [0.5, 0.5], &mut r));
        let m = propagate_marginals(&sys, &SeedSet::empty(), rounds).unwrap();
        let e = exact_distribution(&sys, &SeedSet::empty(), rounds, 10).unwrap().marginals();
        for v in 0..n {
            for k in 0..3 {
                prop_assert!((m.row(v)[k] - e.row(v)[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn one_round_marginals_are_exact((n, seed) in arb_case()) {
        let mut r = rng(seed);
        let g = random_digraph(n, 0.5, &mut r);
        let sys = system(&g, random_colouring(n, [0.3, 0.3], &mut r));
        let m = propagate_marginals(&sys, &SeedSet::empty(), 1).unwrap();
        let e = exact_distribution(&sys, &SeedSet::empty(), 1, 10).unwrap().marginals();
        for v in 0..n {
            for k in 0..3 {
                prop_assert!((m.row(v)[k] - e.row(v)[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn uncoloured_count_never_grows((n, seed) in arb_case()) {
        let mut r = rng(seed);
        let g = random_digraph(n, 0.4, &mut r);
        let sys = system(&g, random_colouring(n, [0.2, 0.2], &mut r));
        let mut c = sys.initial().clone();
        for _ in 0..30 {
            let next = step_sample(&sys, &c, &mut r);
            prop_assert!(next.count(Colour::Uncoloured) <= c.count(Colour::Uncoloured));
            c = next;
        }
    }
}

#[test]
fn monte_carlo_agrees_with_exact() {
    let mut r = rng(41);
    for case in 0..12 {
        let n = 3 + case % 4;
        let g = random_digraph(n, 0.5, &mut r);
        let sys = system(&g, random_colouring(n, [0.3, 0.3], &mut r));
        let seeds: SeedSet = [case % n].into_iter().collect();
        let exact = exact_distribution(&sys, &seeds, 4, 10).unwrap().expected_blue();
        let mc = simulate_mc(&sys, &seeds, 4, 20_000, case as u64).unwrap();
        let tol = 4.0 * mc.stderr.max(1e-3);
        assert!((mc.mean - exact).abs() <= tol, "case {case}: {} vs {exact}", mc.mean);
    }
}

#[test]
fn monte_carlo_evaluator_is_reproducible() {
    let mut r = rng(5);
    let g = random_digraph(8, 0.4, &mut r);
    let sys = system(&g, random_colouring(8, [0.3, 0.3], &mut r));
    let ev = Evaluator::MonteCarlo { runs: 500, seed: 9 };
    let a = gvm::engine::expected_blue(&sys, &SeedSet::empty(), 6, ev).unwrap();
    let b = gvm::engine::expected_blue(&sys, &SeedSet::empty(), 6, ev).unwrap();
    assert_eq!(a.to_bits(), b.to_bits());
}

#[test]
fn stubborn_rows_are_fixed_under_every_evaluator() {
    let g = gvm::graph::WeightedDigraph::from_unit_edges(3, [(0, 1), (0, 2)]).unwrap();
    let c = Colouring::new(vec![Colour::Uncoloured, Colour::Blue, Colour::Red]);
    let sys = system(&g, c);
    for t in 0..5 {
        let m = propagate_marginals(&sys, &SeedSet::empty(), t).unwrap();
        let e = exact_distribution(&sys, &SeedSet::empty(), t, 10).unwrap().marginals();
        for b in [&m, &e] {
            assert_eq!(b.row(1), [1.0, 0.0, 0.0]);
            assert_eq!(b.row(2), [0.0, 1.0, 0.0]);
        }
    }
}
