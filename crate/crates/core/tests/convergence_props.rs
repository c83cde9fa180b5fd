mod common;

use common::rng;
use gvm::convergence::{detect_converged, state_successors, StateCode, StateGraph};
use gvm::generators::{gen_exp_period, gen_exp_time, gen_hrg, random_strongly_connected, HrgParams};
use gvm::graph::graph_period;
use gvm::model::{Colour, Colouring, System};
use proptest::prelude::*;

fn arb_sc() -> impl Strategy<Value = gvm::graph::WeightedDigraph> {
    (1usize..=3, 2usize..=6, 0usize..6, any::<u64>()).prop_map(|(period, n, extra, seed)| {
        random_strongly_connected(n, period, extra, &mut rng(seed)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn detector_agrees_with_leaf_membership(g in arb_sc()) {
        prop_assume!(g.node_count() <= 6);
        let h = g.normalize();
        let n = h.node_count();
        let report = StateGraph::full(&h, 10).unwrap().leaf_report();
        let sys = System::new(h, Colouring::uniform(n, Colour::Uncoloured)).unwrap();
        for code in 0..3u64.pow(n as u32) {
            let c = StateCode(code).decode(n);
            prop_assert_eq!(detect_converged(&sys, &c).unwrap(), report.contains(StateCode(code)));
        }
    }

    #[test]
    fn leaves_are_cycles_dividing_the_period(g in arb_sc()) {
        prop_assume!(g.node_count() <= 6);
        let gamma = graph_period(&g).unwrap();
        let report = StateGraph::full(&g.normalize(), 10).unwrap().leaf_report();
        for leaf in &report.leaves {
            prop_assert!(leaf.deterministic_cycle);
            prop_assert_eq!(gamma % leaf.size(), 0);
        }
    }

    #[test]
    fn successor_mass_is_one_and_monochromes_are_fixed(g in arb_sc(), code in any::<u64>()) {
        let h = g.normalize();
        let n = h.node_count();
        let s = StateCode(code % 3u64.pow(n as u32));
        let succ = state_successors(&h, s, 10).unwrap();
        prop_assert!((succ.iter().map(|x| x.1).sum::<f64>() - 1.0).abs() < 1e-9);
        for colour in Colour::ALL {
            let mono = StateCode::encode(&Colouring::uniform(n, colour));
            prop_assert_eq!(state_successors(&h, mono, 10).unwrap(), vec![(mono, 1.0)]);
        }
    }
}

#[test]
fn exp_period_has_one_doubling_leaf() {
    for n in 4..=6 {
        let (_, sys) = gen_exp_period(n).unwrap();
        let report = StateGraph::reachable(&sys, 10).unwrap().leaf_report();
        assert_eq!(report.leaves.len(), 1);
        assert_eq!(report.leaves[0].size(), 1 << (n - 2));
    }
}

#[test]
fn exp_time_rows_are_stochastic() {
    let n = 7;
    let (g, sys) = gen_exp_time(n).unwrap();
    assert!(g.is_stubborn(0));
    for i in 1..n {
        // back edge plus one forward edge to every later node
        assert_eq!(g.out_degree(i), 1 + (n - 1 - i));
        let (_, probs) = sys.graph().row(i);
        assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn hrg_mean_degree_tracks_the_radius() {
    // smaller disks pack nodes closer, so the graph gets denser
    let mean_degree = |radius: f64| {
        let h = gen_hrg(&HrgParams { n: 200, radius, alpha: 1.0, seed: 8 }).unwrap();
        h.graph.edge_count() as f64 / 200.0
    };
    let (dense, sparse) = (mean_degree(5.0), mean_degree(8.0));
    assert!(dense > sparse, "{dense} vs {sparse}");
    assert!(sparse >= 1.0);
}
