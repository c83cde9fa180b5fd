mod common;

use common::{random_colouring, random_digraph, rng, system};
use gvm::engine::Evaluator;
use gvm::experiment::run_experiment;
use gvm::maximize::{centrality_rank, evaluate_strategy, greedy_seed, Centrality, Strategy};
use gvm::model::Colour;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn greedy_trace_is_monotone_and_concave(n in 3usize..=6, seed in any::<u64>(), rounds in 1usize..4) {
        let mut r = rng(seed);
        let g = random_digraph(n, 0.4, &mut r);
        let sys = system(&g, random_colouring(n, [0.2, 0.4], &mut r));
        let res = greedy_seed(&sys, n.min(4), rounds, Evaluator::exact()).unwrap();
        let gains = res.gains();
        prop_assert!(gains.iter().all(|&d| d >= -1e-9));
        prop_assert!(gains.windows(2).all(|w| w[1] <= w[0] + 1e-9));
        let mut sorted = res.selected.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), res.selected.len());
    }

    #[test]
    fn greedy_is_deterministic(n in 3usize..=12, seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_digraph(n, 0.3, &mut r);
        let sys = system(&g, random_colouring(n, [0.2, 0.3], &mut r));
        let a = greedy_seed(&sys, 3, 5, Evaluator::Marginal).unwrap();
        let b = greedy_seed(&sys, 3, 5, Evaluator::Marginal).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn red_ranking_is_a_subsequence(n in 2usize..=15, seed in any::<u64>(), m in 0usize..5) {
        let mut r = rng(seed);
        let g = random_digraph(n, 0.3, &mut r);
        let sys = system(&g, random_colouring(n, [0.2, 0.4], &mut r));
        let method = Centrality::ALL[m];
        let full = centrality_rank(&sys, method, false);
        let red = centrality_rank(&sys, method, true);
        let expected: Vec<_> =
            full.into_iter().filter(|&v| sys.initial().get(v) == Colour::Red).collect();
        prop_assert_eq!(red, expected);
    }

    #[test]
    fn fractions_recompute_from_counts(seed in any::<u64>()) {
        let g = random_digraph(12, 0.3, &mut rng(seed));
        let methods = [Strategy::Greedy, "pagerank-red".parse().unwrap()];
        let rows = run_experiment(&g, 3, 4, 5, &methods, Evaluator::Marginal, seed).unwrap();
        prop_assert_eq!(rows.len(), 2 * 5);
        for row in rows {
            prop_assert!((row.expected_blue / 12.0 - row.expected_blue_fraction).abs() < 1e-12);
        }
    }
}

#[test]
fn short_orders_are_padded_in_id_order() {
    let g = random_digraph(6, 0.4, &mut rng(2));
    let sys = system(&g, random_colouring(6, [0.0, 0.5], &mut rng(3)));
    let r = evaluate_strategy(&sys, &[4, 1], 5, 3, Evaluator::Marginal).unwrap();
    assert_eq!(r.selected, vec![4, 1, 0, 2, 3]);
}
