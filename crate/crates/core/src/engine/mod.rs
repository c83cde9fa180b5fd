//! Dynamics of the generalised voter model and the objective
//! `F_tau(A)`, the expected number of blue nodes after `tau` rounds when the
//! seed set `A` is forced blue.
//!
//! Three evaluators compute the objective:
//!
//! * [`Evaluator::Marginal`] runs the per-node probability recurrence in
//!   `O(m tau)`; it is the default and what the greedy algorithm is meant to
//!   use at scale.
//! * [`Evaluator::MonteCarlo`] averages sampled trajectories.
//! * [`Evaluator::Exact`] evolves the full joint distribution and is only
//!   feasible for a handful of nodes.

mod exact;
mod marginal;
mod sample;

use std::fmt;
use std::str::FromStr;

pub use exact::{exact_distribution, ExactDistribution};
pub use marginal::{propagate_marginals, MarginalPropagator};
pub use sample::{run_rng, simulate_mc, step_sample, McEstimate};
pub(crate) use sample::{mean_stderr, step_into};

use crate::error::{Error, Result};
use crate::model::{SeedSet, System};
use crate::state::DEFAULT_EXACT_CAP;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evaluator {
    Marginal,
    MonteCarlo { runs: usize, seed: u64 },
    Exact { cap: usize },
}

impl Evaluator {
    pub fn exact() -> Self {
        Evaluator::Exact { cap: DEFAULT_EXACT_CAP }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Evaluator::Marginal => "marginal",
            Evaluator::MonteCarlo { .. } => "montecarlo",
            Evaluator::Exact { .. } => "exact",
        }
    }
}

impl fmt::Display for Evaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Evaluator {
    /// The same evaluator with its Monte Carlo seed replaced.
    pub fn with_seed(self, seed: u64) -> Self {
        match self {
            Evaluator::MonteCarlo { runs, .. } => Evaluator::MonteCarlo { runs, seed },
            other => other,
        }
    }
}

/// Parses `marginal`, `exact`, `exact:CAP`, `montecarlo` or
/// `montecarlo:RUNS`. Monte Carlo defaults to 10,000 runs and seed 0.
impl FromStr for Evaluator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((name, arg)) => (name, Some(arg)),
            None => (s, None),
        };
        let count = |default: usize| -> Result<usize> {
            match arg {
                None => Ok(default),
                Some(a) => a
                    .parse()
                    .ok()
                    .filter(|&x| x > 0)
                    .ok_or_else(|| Error::InvalidParameter(format!("bad evaluator argument `{a}`"))),
            }
        };
        match name {
            "marginal" if arg.is_none() => Ok(Evaluator::Marginal),
            "exact" => Ok(Evaluator::Exact { cap: count(DEFAULT_EXACT_CAP)? }),
            "montecarlo" | "mc" => Ok(Evaluator::MonteCarlo { runs: count(10_000)?, seed: 0 }),
            _ => Err(Error::InvalidParameter(format!("unknown evaluator `{s}`"))),
        }
    }
}

/// `F_rounds(A)` of one system, ready to be queried for many seed sets.
pub struct Objective<'a> {
    sys: &'a System,
    rounds: usize,
    evaluator: Evaluator,
    propagator: Option<MarginalPropagator<'a>>,
}

impl<'a> Objective<'a> {
    pub fn new(sys: &'a System, rounds: usize, evaluator: Evaluator) -> Self {
        let propagator =
            matches!(evaluator, Evaluator::Marginal).then(|| MarginalPropagator::new(sys.graph()));
        Objective { sys, rounds, evaluator, propagator }
    }

    pub fn system(&self) -> &System {
        self.sys
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn evaluator(&self) -> Evaluator {
        self.evaluator
    }

    pub fn value(&self, seeds: &SeedSet) -> Result<f64> {
        match self.evaluator {
            Evaluator::Marginal => {
                let start = self.sys.seeded_colouring(seeds)?;
                let p = self.propagator.as_ref().expect("marginal propagator");
                Ok(p.run(&start, self.rounds).expected_blue())
            }
            // every seed set shares the master seed: common random numbers
            Evaluator::MonteCarlo { runs, seed } => {
                Ok(simulate_mc(self.sys, seeds, self.rounds, runs, seed)?.mean)
            }
            Evaluator::Exact { cap } => {
                Ok(exact_distribution(self.sys, seeds, self.rounds, cap)?.expected_blue())
            }
        }
    }
}

/// `F_rounds(seeds)` under the chosen evaluator.
pub fn expected_blue(
    sys: &System,
    seeds: &SeedSet,
    rounds: usize,
    evaluator: Evaluator,
) -> Result<f64> {
    Objective::new(sys, rounds, evaluator).value(seeds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedDigraph;

    fn all_evaluators() -> [Evaluator; 3] {
        [Evaluator::Marginal, Evaluator::MonteCarlo { runs: 200, seed: 3 }, Evaluator::exact()]
    }

    #[test]
    fn star_with_seeded_centre() {
        let g = WeightedDigraph::from_unit_edges(6, (1..6).map(|l| (l, 0))).unwrap();
        let sys = System::from_weighted(&g, "uuuuuu".parse().unwrap()).unwrap();
        let seeds: SeedSet = [0].into_iter().collect();
        for ev in all_evaluators() {
            assert_eq!(expected_blue(&sys, &seeds, 1, ev).unwrap(), 6.0, "{ev}");
        }
    }

    #[test]
    fn nothing_blue_without_seeds() {
        let g = WeightedDigraph::from_unit_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let sys = System::from_weighted(&g, "uuuu".parse().unwrap()).unwrap();
        for ev in all_evaluators() {
            assert_eq!(expected_blue(&sys, &SeedSet::empty(), 5, ev).unwrap(), 0.0);
        }
    }

    #[test]
    fn exact_cap_is_reported() {
        let g = WeightedDigraph::new(11);
        let sys = System::from_weighted(&g, "uuuuuuuuuuu".parse().unwrap()).unwrap();
        let err = expected_blue(&sys, &SeedSet::empty(), 1, Evaluator::exact()).unwrap_err();
        assert!(matches!(err, Error::ExactCapExceeded { n: 11, cap: 10 }));
        assert!(err.to_string().contains("10"));
    }

    #[test]
    fn parse_names() {
        assert_eq!("marginal".parse::<Evaluator>().unwrap(), Evaluator::Marginal);
        assert_eq!("exact".parse::<Evaluator>().unwrap().name(), "exact");
        assert!("bogus".parse::<Evaluator>().is_err());
        assert_eq!(
            "montecarlo:500".parse::<Evaluator>().unwrap().with_seed(7),
            Evaluator::MonteCarlo { runs: 500, seed: 7 }
        );
        assert_eq!("exact:12".parse::<Evaluator>().unwrap(), Evaluator::Exact { cap: 12 });
        for bad in ["mc:0", "mc:x", "marginal:3"] {
            assert!(bad.parse::<Evaluator>().is_err(), "{bad}");
        }
    }
}
