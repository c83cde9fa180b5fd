#![allow(dead_code)]

use gvm::graph::{graph_period, WeightedDigraph};
use gvm::model::{Colour, Colouring, SeedSet, System};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every ordered pair (self-loops included) is an edge with probability `p`,
/// weights uniform in [0.5, 2).
pub fn random_digraph<R: Rng>(n: usize, p: f64, rng: &mut R) -> WeightedDigraph {
    let mut g = WeightedDigraph::new(n);
    for u in 0..n {
        for v in 0..n {
            if rng.random::<f64>() < p {
                g.add_edge(u, v, rng.random_range(0.5..2.0)).unwrap();
            }
        }
    }
    g
}

/// I.i.d. colours with probabilities `[blue, red]`, the rest uncoloured.
pub fn random_colouring<R: Rng>(n: usize, probs: [f64; 2], rng: &mut R) -> Colouring {
    (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            if u < probs[0] {
                Colour::Blue
            } else if u < probs[0] + probs[1] {
                Colour::Red
            } else {
                Colour::Uncoloured
            }
        })
        .collect::<Vec<_>>()
        .into()
}

/// A strongly connected unit-weight graph on `n` nodes with period 1.
pub fn random_aperiodic<R: Rng>(n: usize, rng: &mut R) -> WeightedDigraph {
    loop {
        let g = gvm::generators::random_strongly_connected(n, 1, n, rng).unwrap();
        if graph_period(&g).unwrap() == 1 {
            return g;
        }
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn seeds(vs: &[usize]) -> SeedSet {
    vs.iter().copied().collect()
}

pub fn system(g: &WeightedDigraph, c: Colouring) -> System {
    System::from_weighted(g, c).unwrap()
}
