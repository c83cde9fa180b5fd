//! Convergence of the colouring Markov chain.
//!
//! At small `n` the chain over the `3^n` colourings is built explicitly and
//! condensed into strongly connected components; the leaves (absorbing
//! components) are where the process ends up and a leaf's size is the period
//! of convergence. At larger `n` the convergence time is estimated by
//! simulation with a detector that recognises leaf states directly.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::engine::{mean_stderr, run_rng, step_into};
use crate::error::{Error, Result};
use crate::graph::{
    is_strongly_connected, period_classes, strongly_connected_components, NormalizedDigraph,
    PeriodStructure,
};
use crate::model::{Colour, Colouring, System};
use crate::state::{check_cap, for_each_successor, next_colour_options, state_space_size};

pub use crate::state::{state_successors, StateCode, DEFAULT_EXACT_CAP};

/// Default round cap for simulated convergence.
pub const DEFAULT_ROUND_CAP: u64 = 1_000_000;

/// Explicit Markov chain over colourings.
#[derive(Debug, Clone)]
pub struct StateGraph {
    n: usize,
    pub states: Vec<StateCode>,
    /// Per state: successor indices into `states` with transition probabilities.
    pub transitions: Vec<Vec<(usize, f64)>>,
}

impl StateGraph {
    /// States reachable from the initial colouring of `sys`.
    pub fn reachable(sys: &System, cap: usize) -> Result<StateGraph> {
        Self::explore(sys.graph(), [StateCode::encode(sys.initial())], cap)
    }

    /// All `3^n` colourings.
    pub fn full(graph: &NormalizedDigraph, cap: usize) -> Result<StateGraph> {
        let n = graph.node_count();
        check_cap(n, cap)?;
        Self::explore(graph, (0..state_space_size(n)).map(StateCode), cap)
    }

    fn explore(
        graph: &NormalizedDigraph,
        roots: impl IntoIterator<Item = StateCode>,
        cap: usize,
    ) -> Result<StateGraph> {
        let n = graph.node_count();
        check_cap(n, cap)?;
        let mut index: HashMap<u64, usize> = HashMap::new();
        let mut states = Vec::new();
        for r in roots {
            index.entry(r.0).or_insert_with(|| {
                states.push(r);
                states.len() - 1
            });
        }
        let mut transitions = Vec::new();
        let mut scratch = Vec::new();
        let mut i = 0;
        while i < states.len() {
            let current = states[i].decode(n);
            let mut out = Vec::new();
            for_each_successor(graph, current.as_slice(), &mut scratch, |code, p| {
                let j = *index.entry(code).or_insert_with(|| {
                    states.push(StateCode(code));
                    states.len() - 1
                });
                out.push((j, p));
            });
            out.sort_by_key(|&(j, _)| j);
            transitions.push(out);
            i += 1;
        }
        Ok(StateGraph { n, states, transitions })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, s: StateCode) -> Option<usize> {
        self.states.iter().position(|&x| x == s)
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        self.transitions.iter().map(|t| t.iter().map(|&(j, _)| j).collect()).collect()
    }

    pub fn leaf_report(&self) -> LeafReport {
        let cond = strongly_connected_components(&self.adjacency());
        let mut leaves: Vec<Leaf> = cond
            .leaves()
            .map(|c| {
                let members = &cond.components[c];
                let deterministic_cycle = members
                    .iter()
                    .all(|&i| self.transitions[i].len() == 1 && self.transitions[i][0].1 == 1.0);
                let mut states: Vec<StateCode> = members.iter().map(|&i| self.states[i]).collect();
                states.sort();
                Leaf { states, deterministic_cycle }
            })
            .collect();
        leaves.sort_by_key(|l| l.states[0]);
        LeafReport { n: self.n, state_count: self.len(), leaves }
    }

    /// Expected number of rounds until the chain started at `states[start]`
    /// enters a leaf, solved from the linear system over transient states.
    pub fn expected_absorption_time(&self, start: usize) -> f64 {
        let cond = strongly_connected_components(&self.adjacency());
        let in_leaf: Vec<bool> =
            (0..self.len()).map(|i| cond.is_leaf(cond.component_of[i])).collect();
        if in_leaf[start] {
            return 0.0;
        }
        let transient: Vec<usize> = (0..self.len()).filter(|&i| !in_leaf[i]).collect();
        let mut pos = vec![usize::MAX; self.len()];
        for (k, &i) in transient.iter().enumerate() {
            pos[i] = k;
        }
        let t = transient.len();
        // (I - Q) h = 1
        let mut a = DMatrix::<f64>::identity(t, t);
        for (k, &i) in transient.iter().enumerate() {
            for &(j, p) in &self.transitions[i] {
                if !in_leaf[j] {
                    a[(k, pos[j])] -= p;
                }
            }
        }
        let h = a
            .lu()
            .solve(&DVector::from_element(t, 1.0))
            .expect("absorbing chain has a nonsingular fundamental matrix");
        h[pos[start]]
    }
}

/// An absorbing strongly connected component of the colouring chain.
#[derive(Debug, Clone, PartialEq)]
pub struct Leaf {
    pub states: Vec<StateCode>,
    /// Every member has exactly one successor, with probability one.
    pub deterministic_cycle: bool,
}

impl Leaf {
    /// Number of states, the period of convergence.
    pub fn size(&self) -> usize {
        self.states.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeafReport {
    pub n: usize,
    pub state_count: usize,
    pub leaves: Vec<Leaf>,
}

impl LeafReport {
    pub fn contains(&self, s: StateCode) -> bool {
        self.leaves.iter().any(|l| l.states.binary_search(&s).is_ok())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Enumerate all `3^n` colourings instead of only those reachable from the
    /// initial one.
    pub full_space: bool,
    pub cap: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { full_space: false, cap: DEFAULT_EXACT_CAP }
    }
}

pub fn absorbing_analysis(sys: &System, opts: EnumerationOptions) -> Result<LeafReport> {
    let graph = if opts.full_space {
        StateGraph::full(sys.graph(), opts.cap)?
    } else {
        StateGraph::reachable(sys, opts.cap)?
    };
    Ok(graph.leaf_report())
}

/// Exact expected convergence time from the initial colouring.
pub fn expected_convergence_time(sys: &System, cap: usize) -> Result<f64> {
    let g = StateGraph::reachable(sys, cap)?;
    Ok(g.expected_absorption_time(0))
}

/// Recognises colourings that already sit in a leaf.
#[derive(Debug, Clone)]
pub enum ConvergenceDetector {
    /// Strongly connected graphs: every period class monochromatic in blue
    /// or red, or nothing coloured at all.
    PeriodClasses(PeriodStructure),
    /// Any graph: no node can change colour in the next round. Recognises
    /// exactly the single-state leaves.
    FixedPoint,
}

impl ConvergenceDetector {
    /// Period classes for strongly connected graphs, fixed points otherwise.
    pub fn for_graph(graph: &NormalizedDigraph) -> Self {
        match period_classes(graph) {
            Ok(p) => ConvergenceDetector::PeriodClasses(p),
            Err(_) => ConvergenceDetector::FixedPoint,
        }
    }

    pub fn period_classes(graph: &NormalizedDigraph) -> Result<Self> {
        Ok(ConvergenceDetector::PeriodClasses(period_classes(graph)?))
    }

    pub fn is_converged(&self, graph: &NormalizedDigraph, c: &[Colour]) -> bool {
        match self {
            ConvergenceDetector::PeriodClasses(p) => classes_monochromatic(p, c),
            ConvergenceDetector::FixedPoint => (0..c.len()).all(|v| {
                let (opts, len) = next_colour_options(graph, c, v);
                len == 1 && opts[0].0 == c[v]
            }),
        }
    }
}

fn classes_monochromatic(p: &PeriodStructure, c: &[Colour]) -> bool {
    if c.iter().all(|&x| x == Colour::Uncoloured) {
        return true;
    }
    p.classes.iter().all(|class| {
        let first = c[class[0]];
        first.is_coloured() && class.iter().all(|&v| c[v] == first)
    })
}

/// Whether `c` is a converged colouring of a strongly connected graph.
pub fn detect_converged(sys: &System, c: &Colouring) -> Result<bool> {
    if !is_strongly_connected(sys.graph()) {
        return Err(Error::NotStronglyConnected);
    }
    let p = period_classes(sys.graph())?;
    Ok(classes_monochromatic(&p, c.as_slice()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOutcome {
    pub rounds: u64,
    pub converged: bool,
    /// Blue nodes in the final colouring.
    pub blue: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStats {
    /// Mean rounds over all runs, censored runs counted at the cap.
    pub mean: f64,
    pub stderr: f64,
    pub cap_hits: usize,
    pub outcomes: Vec<RunOutcome>,
}

impl ConvergenceStats {
    pub fn runs(&self) -> usize {
        self.outcomes.len()
    }

    pub fn max_rounds(&self) -> u64 {
        self.outcomes.iter().map(|o| o.rounds).max().unwrap_or(0)
    }

    /// Fraction of runs that ended with every node blue.
    pub fn blue_consensus_fraction(&self, n: usize) -> f64 {
        let hits = self.outcomes.iter().filter(|o| o.blue as usize == n).count();
        hits as f64 / self.runs().max(1) as f64
    }
}

/// Simulates `runs` trajectories from the initial colouring until the
/// detector fires or `round_cap` rounds have passed.
pub fn estimate_convergence_time(
    sys: &System,
    detector: &ConvergenceDetector,
    runs: usize,
    round_cap: u64,
    master_seed: u64,
) -> ConvergenceStats {
    let graph = sys.graph();
    let outcomes: Vec<RunOutcome> = (0..runs as u64)
        .into_par_iter()
        .map(|run| {
            let mut rng = run_rng(master_seed, run);
            let mut cur = sys.initial().as_slice().to_vec();
            let mut next = cur.clone();
            let mut rounds = 0;
            let mut converged = detector.is_converged(graph, &cur);
            while !converged && rounds < round_cap {
                step_into(graph, &cur, &mut next, &mut rng);
                std::mem::swap(&mut cur, &mut next);
                rounds += 1;
                converged = detector.is_converged(graph, &cur);
            }
            let blue = cur.iter().filter(|&&c| c == Colour::Blue).count() as u32;
            RunOutcome { rounds, converged, blue }
        })
        .collect();
    let (mean, stderr) = mean_stderr(outcomes.iter().map(|o| o.rounds as f64));
    let cap_hits = outcomes.iter().filter(|o| !o.converged).count();
    ConvergenceStats { mean, stderr, cap_hits, outcomes }
}
