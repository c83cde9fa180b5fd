//! Period classes of a strongly connected graph and the derived graph on
//! one class. Colourings that are constant on every class keep cycling.

use gvm::convergence::{absorbing_analysis, EnumerationOptions};
use gvm::graph::{derived_class_graph, period_classes, WeightedDigraph};
use gvm::model::{Colour, Colouring, System};

fn main() -> gvm::Result<()> {
    // Two interleaved triangles: 0 -> {1, 4} -> {2, 5} -> {0, 3} -> ...
    let edges = [(0, 1), (0, 4), (3, 4), (1, 2), (4, 5), (2, 0), (5, 3), (5, 0)];
    let g = WeightedDigraph::from_unit_edges(6, edges)?;
    let h = g.normalize();

    let p = period_classes(&h)?;
    println!("gamma = {}", p.gamma);
    for (i, class) in p.classes.iter().enumerate() {
        println!("class {i}: {class:?}");
    }

    let (derived, members) = derived_class_graph(&h, 0)?;
    println!("derived graph on class 0 (original ids {members:?}):");
    for (u, v, w) in derived.edges() {
        println!("  {} -> {}  {w:.3}", members[u], members[v]);
    }

    let mut c = Colouring::uniform(6, Colour::Red);
    for &v in &p.classes[0] {
        c.set(v, Colour::Blue);
    }
    let report = absorbing_analysis(&System::new(h, c)?, EnumerationOptions::default())?;
    for leaf in &report.leaves {
        println!(
            "leaf of size {} (deterministic cycle: {})",
            leaf.size(),
            leaf.deterministic_cycle
        );
    }
    Ok(())
}
