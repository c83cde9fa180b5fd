//! Compares the three ways of computing the expected number of blue nodes.
//!
//! On the satellite gadget the marginal recurrence overestimates: the
//! satellite and its hub are correlated through the hub's own history.

use gvm::engine::{expected_blue, simulate_mc, Evaluator};
use gvm::graph::WeightedDigraph;
use gvm::model::{Colour, Colouring, SeedSet, System};

fn main() -> gvm::Result<()> {
    // x -> o, o -> {b, u}; b is stubborn blue, u stubborn uncoloured.
    let g = WeightedDigraph::from_unit_edges(4, [(0, 1), (1, 2), (1, 3)])?
        .with_labels(vec!["x".into(), "o".into(), "b".into(), "u".into()])?;
    let mut c = Colouring::uniform(4, Colour::Uncoloured);
    c.set(2, Colour::Blue);
    let sys = System::from_weighted(&g, c)?;
    let none = SeedSet::empty();

    println!("round  exact    marginal  montecarlo");
    for t in 0..=4 {
        let exact = expected_blue(&sys, &none, t, Evaluator::exact())?;
        let marginal = expected_blue(&sys, &none, t, Evaluator::Marginal)?;
        let mc = simulate_mc(&sys, &none, t, 20_000, 1)?;
        println!("{t:>5}  {exact:<7.4}  {marginal:<8.4}  {:.4} +- {:.4}", mc.mean, mc.stderr);
    }
    Ok(())
}
