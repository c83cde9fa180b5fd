//! Adoption maximisation: choose `k` seeds to maximise `F_tau`.
//!
//! The objective is monotone and submodular, so plain greedy selection is a
//! `(1 - 1/e)` approximation. Centrality rankings serve as baselines, each
//! with a variant restricted to initially red nodes.

mod centrality;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

pub use centrality::{
    betweenness, centrality_rank, harmonic_closeness, pagerank, Centrality, PAGERANK_DAMPING,
    PAGERANK_MAX_ITERATIONS, PAGERANK_TOLERANCE,
};

use crate::engine::{Evaluator, Objective};
use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::model::{SeedSet, System};

/// A seed-selection method by name: `greedy`, a centrality, or a centrality
/// with the `-red` suffix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Greedy,
    Centrality { method: Centrality, red_only: bool },
}

impl Strategy {
    /// Greedy followed by every centrality and its red-only variant.
    pub fn all() -> Vec<Strategy> {
        let mut v = vec![Strategy::Greedy];
        for red_only in [false, true] {
            v.extend(Centrality::ALL.map(|method| Strategy::Centrality { method, red_only }));
        }
        v
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Greedy => f.write_str("greedy"),
            Strategy::Centrality { method, red_only: false } => write!(f, "{method}"),
            Strategy::Centrality { method, red_only: true } => write!(f, "{method}-red"),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "greedy" {
            return Ok(Strategy::Greedy);
        }
        let (name, red_only) = match s.strip_suffix("-red") {
            Some(base) => (base, true),
            None => (s, false),
        };
        Ok(Strategy::Centrality { method: name.parse()?, red_only })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrategyResult {
    pub method: String,
    pub evaluator: Evaluator,
    pub selected: Vec<NodeId>,
    /// `F_tau` of the empty seed set.
    pub empty_value: f64,
    /// `values[b - 1]` is `F_tau` of the first `b` selected nodes.
    pub values: Vec<f64>,
}

impl StrategyResult {
    /// `F_tau` with budget `b`, where budget zero is the empty seed set.
    pub fn value_at(&self, budget: usize) -> f64 {
        if budget == 0 {
            self.empty_value
        } else {
            self.values[budget - 1]
        }
    }

    /// Increase of `F_tau` contributed by each selected node in turn.
    pub fn gains(&self) -> Vec<f64> {
        let mut prev = self.empty_value;
        self.values
            .iter()
            .map(|&v| {
                let g = v - prev;
                prev = v;
                g
            })
            .collect()
    }
}

/// Adds, `k` times, the node whose addition gives the largest `F_tau`;
/// ties go to the smallest id. Nodes that are already blue stay candidates.
pub fn greedy_seed(
    sys: &System,
    k: usize,
    rounds: usize,
    evaluator: Evaluator,
) -> Result<StrategyResult> {
    let n = sys.node_count();
    if k > n {
        return Err(Error::InvalidParameter(format!("budget {k} exceeds {n} nodes")));
    }
    let objective = Objective::new(sys, rounds, evaluator);
    let mut seeds = SeedSet::empty();
    let empty_value = objective.value(&seeds)?;
    let mut selected = Vec::with_capacity(k);
    let mut values = Vec::with_capacity(k);
    for _ in 0..k {
        let scored: Vec<(NodeId, f64)> = (0..n)
            .into_par_iter()
            .filter(|&v| !seeds.contains(v))
            .map(|v| objective.value(&seeds.with(v)).map(|f| (v, f)))
            .collect::<Result<_>>()?;
        let (best, value) = scored
            .into_iter()
            .fold(None, |acc: Option<(NodeId, f64)>, (v, f)| match acc {
                Some((_, bf)) if bf >= f => acc,
                _ => Some((v, f)),
            })
            .expect("at least one candidate while k <= n");
        seeds.insert(best);
        selected.push(best);
        values.push(value);
    }
    Ok(StrategyResult { method: "greedy".into(), evaluator, selected, empty_value, values })
}

/// `F_tau` of every budget prefix `1..=k` of `order`. A short order is
/// padded with the remaining nodes in id order.
pub fn evaluate_strategy(
    sys: &System,
    order: &[NodeId],
    k: usize,
    rounds: usize,
    evaluator: Evaluator,
) -> Result<StrategyResult> {
    let n = sys.node_count();
    if k > n {
        return Err(Error::InvalidParameter(format!("budget {k} exceeds {n} nodes")));
    }
    let mut selected: Vec<NodeId> = Vec::with_capacity(k);
    let mut seen = vec![false; n];
    for &v in order.iter().chain(&(0..n).collect::<Vec<_>>()) {
        if selected.len() == k {
            break;
        }
        if v >= n {
            return Err(Error::NodeOutOfRange { node: v, n });
        }
        if !seen[v] {
            seen[v] = true;
            selected.push(v);
        }
    }
    let objective = Objective::new(sys, rounds, evaluator);
    let empty_value = objective.value(&SeedSet::empty())?;
    let values = (1..=k)
        .into_par_iter()
        .map(|b| objective.value(&selected[..b].iter().copied().collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(StrategyResult { method: String::new(), evaluator, selected, empty_value, values })
}

/// Runs one strategy up to budget `k`.
pub fn run_strategy(
    sys: &System,
    strategy: Strategy,
    k: usize,
    rounds: usize,
    evaluator: Evaluator,
) -> Result<StrategyResult> {
    let mut result = match strategy {
        Strategy::Greedy => greedy_seed(sys, k, rounds, evaluator)?,
        Strategy::Centrality { method, red_only } => {
            let order = centrality_rank(sys, method, red_only);
            evaluate_strategy(sys, &order, k, rounds, evaluator)?
        }
    };
    result.method = strategy.to_string();
    Ok(result)
}
