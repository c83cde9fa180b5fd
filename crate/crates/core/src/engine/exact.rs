//! Exact evolution of the joint distribution over all `3^n` colourings.

use crate::error::Result;
use crate::model::{BeliefState, Colour, SeedSet, System};
use crate::state::{check_cap, for_each_successor, state_space_size, StateCode};

/// Joint distribution over colourings, indexed by [`StateCode`].
#[derive(Debug, Clone)]
pub struct ExactDistribution {
    n: usize,
    probs: Vec<f64>,
}

impl ExactDistribution {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn prob(&self, s: StateCode) -> f64 {
        self.probs[s.0 as usize]
    }

    /// States with positive probability.
    pub fn support(&self) -> impl Iterator<Item = (StateCode, f64)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .map(|(i, &p)| (StateCode(i as u64), p))
    }

    /// Per-node projections of the joint distribution.
    pub fn marginals(&self) -> BeliefState {
        let mut rows = vec![[0.0; 3]; self.n];
        for (s, p) in self.support() {
            let mut code = s.0;
            for row in rows.iter_mut() {
                row[(code % 3) as usize] += p;
                code /= 3;
            }
        }
        BeliefState::from_rows(rows)
    }

    pub fn expected_blue(&self) -> f64 {
        self.marginals().expected(Colour::Blue)
    }
}

/// Propagates the point mass on the seeded colouring for `rounds` rounds.
pub fn exact_distribution(
    sys: &System,
    seeds: &SeedSet,
    rounds: usize,
    cap: usize,
) -> Result<ExactDistribution> {
    let n = sys.node_count();
    check_cap(n, cap)?;
    let size = state_space_size(n) as usize;
    let start = StateCode::encode(&sys.seeded_colouring(seeds)?);
    let mut probs = vec![0.0; size];
    probs[start.0 as usize] = 1.0;
    let mut support = vec![start.0];
    let mut next = vec![0.0; size];
    let mut scratch = Vec::new();

    for _ in 0..rounds {
        let mut next_support = Vec::new();
        for &s in &support {
            let p = probs[s as usize];
            let current = StateCode(s).decode(n);
            for_each_successor(sys.graph(), current.as_slice(), &mut scratch, |code, q| {
                let slot = &mut next[code as usize];
                if *slot == 0.0 {
                    next_support.push(code);
                }
                *slot += p * q;
            });
        }
        for &s in &support {
            probs[s as usize] = 0.0;
        }
        std::mem::swap(&mut probs, &mut next);
        next_support.sort_unstable();
        support = next_support;
    }
    Ok(ExactDistribution { n, probs })
}
