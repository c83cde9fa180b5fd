//! Greedy seeding against centrality baselines on a small hyperbolic graph.

use gvm::engine::Evaluator;
use gvm::experiment::run_experiment;
use gvm::generators::{gen_hrg, HrgParams};
use gvm::maximize::Strategy;

fn main() -> gvm::Result<()> {
    let hrg = gen_hrg(&HrgParams { n: 80, radius: 7.0, alpha: 1.0, seed: 5 })?;
    let methods: Vec<Strategy> =
        ["greedy", "indeg", "pagerank", "pagerank-red", "betweenness"]
            .iter()
            .map(|s| s.parse())
            .collect::<gvm::Result<_>>()?;
    let budget = 8;
    let rows = run_experiment(&hrg.graph, 6, budget, 10, &methods, Evaluator::Marginal, 3)?;

    print!("{:>6}", "budget");
    for m in &methods {
        print!("{:>14}", m.to_string());
    }
    println!();
    for b in 0..=budget {
        print!("{b:>6}");
        for m in &methods {
            let row = rows
                .iter()
                .find(|r| r.method == m.to_string() && r.budget == b)
                .expect("one row per method and budget");
            print!("{:>14.2}", row.expected_blue);
        }
        println!();
    }
    Ok(())
}
