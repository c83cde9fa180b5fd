//! Mean convergence time on hyperbolic random graphs for each initial
//! colouring strategy. Writes the table to `hrg_convergence.csv` in the
//! system temp directory.

use gvm::experiment::ConvergenceSweep;
use gvm::generators::HrgColouring;
use gvm::io::write_convergence;

fn main() -> gvm::Result<()> {
    let sweep = ConvergenceSweep {
        sizes: vec![20, 40, 60],
        graphs_per_size: 16,
        runs_per_graph: 4,
        strategies: HrgColouring::ALL.to_vec(),
        radius: 5.0,
        alpha: 1.0,
        round_cap: 1_000_000,
        seed: 17,
    };
    let rows = sweep.run()?;
    for r in &rows {
        println!(
            "{:<11} n={:<3} mean {:>8.2} +- {:<6.2} cap hits {}",
            r.strategy, r.n, r.mean_rounds, r.stderr, r.cap_hits
        );
    }
    let out = std::env::temp_dir().join("hrg_convergence.csv");
    write_convergence(&out, &rows)?;
    println!("wrote {}", out.display());
    Ok(())
}
