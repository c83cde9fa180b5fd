//! Expected convergence time on the exponential-time family, exactly for
//! small n and by simulation beyond.

use gvm::convergence::{estimate_convergence_time, expected_convergence_time, ConvergenceDetector};
use gvm::generators::gen_exp_time;

fn main() -> gvm::Result<()> {
    println!("n  exact       simulated");
    for n in 2..=9 {
        let (_, sys) = gen_exp_time(n)?;
        let exact = if n <= 7 {
            format!("{:<10.2}", expected_convergence_time(&sys, 10)?)
        } else {
            format!("{:<10}", "-")
        };
        let detector = ConvergenceDetector::for_graph(sys.graph());
        let stats = estimate_convergence_time(&sys, &detector, 400, 10_000_000, n as u64);
        println!("{n}  {exact}  {:.1} +- {:.1}", stats.mean, stats.stderr);
    }
    Ok(())
}
