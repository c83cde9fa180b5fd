//! Two stubborn nodes and n - 2 followers: the reachable colouring chain has
//! a single leaf whose size doubles with every follower.

use gvm::convergence::{absorbing_analysis, EnumerationOptions};
use gvm::generators::gen_exp_period;

fn main() -> gvm::Result<()> {
    println!("n  states  leaves  leaf_size");
    for n in 3..=9 {
        let (_, sys) = gen_exp_period(n)?;
        let report = absorbing_analysis(&sys, EnumerationOptions::default())?;
        let sizes: Vec<usize> = report.leaves.iter().map(|l| l.size()).collect();
        println!("{n}  {:>6}  {:>6}  {:?}", report.state_count, report.leaves.len(), sizes);
    }
    Ok(())
}
