//! Loads a graph and colouring from disk, simulates and prints the mean
//! blue count per round.
//!
//!     cargo run --example simulate -- graph.edges colours.csv [rounds]

use std::path::PathBuf;

use gvm::engine::simulate_mc;
use gvm::io::{load_colours, load_graph, WeightMode};
use gvm::model::{SeedSet, System};

fn main() -> gvm::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (g, c) = if args.len() >= 2 {
        let g = load_graph(&PathBuf::from(&args[0]), WeightMode::AsGiven)?;
        let c = load_colours(&PathBuf::from(&args[1]), &g)?;
        (g, c)
    } else {
        eprintln!("no input given, using the 6-node exponential-time graph");
        let (g, sys) = gvm::generators::gen_exp_time(6)?;
        (g, sys.initial().clone())
    };
    let rounds = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(20);
    let sys = System::from_weighted(&g, c)?;
    let est = simulate_mc(&sys, &SeedSet::empty(), rounds, 5_000, 0)?;
    for (t, (m, s)) in est.trace.iter().zip(&est.trace_stderr).enumerate() {
        println!("{t:>3}  {m:>8.4} +- {s:.4}");
    }
    Ok(())
}
