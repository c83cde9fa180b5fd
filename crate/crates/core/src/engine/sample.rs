//! Sampled trajectories and the Monte Carlo estimator of expected blue count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::graph::NormalizedDigraph;
use crate::model::{Colour, Colouring, SeedSet, System};

/// Random stream of one Monte Carlo run. Runs use disjoint ChaCha streams of
/// the same master seed, so results do not depend on how runs are scheduled.
pub fn run_rng(master_seed: u64, run: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(run);
    rng
}

/// One synchronous round, writing into `next`.
#[inline]
pub(crate) fn step_into<R: Rng + ?Sized>(
    graph: &NormalizedDigraph,
    current: &[Colour],
    next: &mut [Colour],
    rng: &mut R,
) {
    for (v, slot) in next.iter_mut().enumerate() {
        let own = current[v];
        *slot = match graph.out_degree(v) {
            0 => own,
            1 => {
                let w = graph.row(v).0[0];
                if current[w].is_coloured() { current[w] } else { own }
            }
            _ => {
                let w = graph.pick(v, rng.random::<f64>());
                if current[w].is_coloured() { current[w] } else { own }
            }
        };
    }
}

/// Samples the colouring after one round.
pub fn step_sample<R: Rng + ?Sized>(sys: &System, current: &Colouring, rng: &mut R) -> Colouring {
    let mut next = current.as_slice().to_vec();
    step_into(sys.graph(), current.as_slice(), &mut next, rng);
    Colouring::new(next)
}

#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    /// Mean number of blue nodes after the last round.
    pub mean: f64,
    pub stderr: f64,
    pub runs: usize,
    /// Mean blue count after each round, `trace[0]` being the seeded colouring.
    pub trace: Vec<f64>,
    /// Standard error of each `trace` entry.
    pub trace_stderr: Vec<f64>,
}

/// Mean and standard error of the mean, in input order.
pub(crate) fn mean_stderr(xs: impl ExactSizeIterator<Item = f64> + Clone) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.clone().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = xs.map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Estimates `F_rounds(seeds)` from `runs` independent trajectories.
pub fn simulate_mc(
    sys: &System,
    seeds: &SeedSet,
    rounds: usize,
    runs: usize,
    master_seed: u64,
) -> Result<McEstimate> {
    let start = sys.seeded_colouring(seeds)?;
    let graph = sys.graph();
    let counts: Vec<Vec<u32>> = (0..runs as u64)
        .into_par_iter()
        .map(|run| {
            let mut rng = run_rng(master_seed, run);
            let mut cur = start.as_slice().to_vec();
            let mut next = cur.clone();
            let mut trace = Vec::with_capacity(rounds + 1);
            trace.push(blue_count(&cur));
            for _ in 0..rounds {
                step_into(graph, &cur, &mut next, &mut rng);
                std::mem::swap(&mut cur, &mut next);
                trace.push(blue_count(&cur));
            }
            trace
        })
        .collect();

    let (trace, trace_stderr): (Vec<f64>, Vec<f64>) =
        (0..=rounds).map(|t| mean_stderr(counts.iter().map(|c| c[t] as f64))).unzip();
    Ok(McEstimate { mean: trace[rounds], stderr: trace_stderr[rounds], runs, trace, trace_stderr })
}

fn blue_count(c: &[Colour]) -> u32 {
    c.iter().filter(|&&x| x == Colour::Blue).count() as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedDigraph;

    #[test]
    fn stubborn_blue_stays_blue() {
        let g = WeightedDigraph::from_unit_edges(2, [(1, 0)]).unwrap();
        let sys = System::from_weighted(&g, "br".parse().unwrap()).unwrap();
        let mut rng = run_rng(7, 0);
        let mut c = sys.initial().clone();
        for _ in 0..50 {
            c = step_sample(&sys, &c, &mut rng);
            assert_eq!(c.get(0), Colour::Blue);
        }
    }

    #[test]
    fn single_neighbour_is_copied_with_certainty() {
        // node 0 -> node 1 (red, stubborn)
        let g = WeightedDigraph::from_unit_edges(2, [(0, 1)]).unwrap();
        let sys = System::from_weighted(&g, "ur".parse().unwrap()).unwrap();
        for seed in 0..20 {
            let c = step_sample(&sys, sys.initial(), &mut run_rng(seed, 0));
            assert_eq!(c.to_string(), "rr");
        }
    }

    #[test]
    fn even_split_between_blue_and_red() {
        // 0 -> {1 blue stubborn, 2 red stubborn}
        let g = WeightedDigraph::from_unit_edges(3, [(0, 1), (0, 2)]).unwrap();
        let sys = System::from_weighted(&g, "ubr".parse().unwrap()).unwrap();
        let mut rng = run_rng(11, 0);
        let trials = 100_000;
        let blue = (0..trials)
            .filter(|_| step_sample(&sys, sys.initial(), &mut rng).get(0) == Colour::Blue)
            .count();
        assert!((blue as f64 / trials as f64 - 0.5).abs() < 0.01);
    }

    #[test]
    fn all_blue_is_exact() {
        let g = WeightedDigraph::from_unit_edges(3, [(0, 1), (1, 2), (2, 0), (0, 2)]).unwrap();
        let sys = System::from_weighted(&g, "bbb".parse().unwrap()).unwrap();
        let est = simulate_mc(&sys, &SeedSet::empty(), 7, 50, 1).unwrap();
        assert_eq!(est.mean, 3.0);
        assert_eq!(est.stderr, 0.0);
    }

    #[test]
    fn zero_rounds_counts_seeded_blue() {
        let g = WeightedDigraph::from_unit_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let sys = System::from_weighted(&g, "rru".parse().unwrap()).unwrap();
        let est = simulate_mc(&sys, &[0, 2].into_iter().collect(), 0, 10, 1).unwrap();
        assert_eq!(est.mean, 2.0);
        assert_eq!(est.trace, vec![2.0]);
    }

    #[test]
    fn fixed_seed_is_reproducible_across_thread_counts() {
        let g = WeightedDigraph::from_unit_edges(
            5,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 3), (2, 0), (4, 2)],
        )
        .unwrap();
        let sys = System::from_weighted(&g, "brurb".parse().unwrap()).unwrap();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| simulate_mc(&sys, &SeedSet::empty(), 6, 2000, 42).unwrap())
        };
        let a = run(1);
        let b = run(4);
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
        assert_eq!(a.trace, b.trace);
    }
}
