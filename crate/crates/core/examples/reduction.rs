//! Builds the seeding instance for a small max-coverage problem and lets
//! greedy pick subset nodes.

use gvm::engine::Evaluator;
use gvm::generators::{gen_reduction, MaxCoverageInstance};
use gvm::maximize::greedy_seed;

fn main() -> gvm::Result<()> {
    // objects {1, 2}; subsets {1}, {1, 2}; one subset may be chosen.
    let inst = MaxCoverageInstance {
        objects: 2,
        subsets: vec![vec![0], vec![0, 1]],
        budget: 1,
        epsilon: 0.5,
    };
    let red = gen_reduction(&inst)?;
    println!(
        "{} nodes, {} edges, horizon {} rounds, {} satellites per object",
        red.graph.node_count(),
        red.graph.edge_count(),
        red.rounds,
        red.satellites_per_object
    );
    let r = greedy_seed(&red.system, inst.budget, red.rounds, Evaluator::exact())?;
    for (&v, f) in r.selected.iter().zip(&r.values) {
        println!("greedy picks {} with expected blue {f:.5}", red.graph.label(v));
    }
    Ok(())
}
