//! Budget sweeps comparing seeding strategies on one graph.

use std::path::{Path, PathBuf};

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::convergence::{estimate_convergence_time, ConvergenceDetector, DEFAULT_ROUND_CAP};
use crate::engine::Evaluator;
use crate::error::{Error, Result};
use crate::generators::{gen_hrg, hrg_colouring, HrgColouring, HrgParams};
use crate::graph::{NodeId, WeightedDigraph};
use crate::io::{load_graph, ConvergenceRow, KeyValues, ResultRow, WeightMode};
use crate::maximize::{centrality_rank, evaluate_strategy, greedy_seed, Strategy, StrategyResult};
use crate::model::{Colour, Colouring, System};

/// `red_count` nodes drawn uniformly without replacement, the rest uncoloured.
pub fn random_red_colouring(n: usize, red_count: usize, seed: u64) -> Result<Colouring> {
    if red_count > n {
        return Err(Error::InvalidParameter(format!("{red_count} red nodes in a graph of {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Colouring::uniform(n, Colour::Uncoloured);
    for v in index::sample(&mut rng, n, red_count) {
        c.set(v, Colour::Red);
    }
    Ok(c)
}

/// Runs `strategy` on `sys` for budgets `1..=k`.
///
/// Plain centralities skip initially red nodes and red variants rank only
/// them. A red variant that runs out of red nodes keeps its last value for
/// the remaining budgets. Greedy considers every node.
pub fn sweep_strategy(
    sys: &System,
    strategy: Strategy,
    k: usize,
    rounds: usize,
    evaluator: Evaluator,
) -> Result<StrategyResult> {
    let mut result = match strategy {
        Strategy::Greedy => greedy_seed(sys, k, rounds, evaluator)?,
        Strategy::Centrality { method, red_only } => {
            let order: Vec<NodeId> = if red_only {
                centrality_rank(sys, method, true)
            } else {
                centrality_rank(sys, method, false)
                    .into_iter()
                    .filter(|&v| sys.initial().get(v) != Colour::Red)
                    .collect()
            };
            let take = k.min(order.len());
            let mut r = evaluate_strategy(sys, &order[..take], take, rounds, evaluator)?;
            let last = r.value_at(take);
            r.values.resize(k, last);
            r
        }
    };
    result.method = strategy.to_string();
    Ok(result)
}

/// One row per method at every budget `0..=budget_max`; budget 0 is the
/// empty seed set. The red set is drawn once from `seed` and shared by all
/// methods.
pub fn run_experiment(
    graph: &WeightedDigraph,
    red_count: usize,
    budget_max: usize,
    rounds: usize,
    methods: &[Strategy],
    evaluator: Evaluator,
    seed: u64,
) -> Result<Vec<ResultRow>> {
    let n = graph.node_count();
    if red_count + budget_max > n {
        return Err(Error::InvalidParameter(format!(
            "{red_count} red nodes plus budget {budget_max} exceed {n} nodes"
        )));
    }
    let sys = System::from_weighted(graph, random_red_colouring(n, red_count, seed)?)?;
    let mut rows = Vec::with_capacity(methods.len() * (budget_max + 1));
    for &m in methods {
        log::info!("running {m} up to budget {budget_max}");
        let r = sweep_strategy(&sys, m, budget_max, rounds, evaluator)?;
        for b in 0..=budget_max {
            let f = r.value_at(b);
            rows.push(ResultRow {
                method: r.method.clone(),
                budget: b,
                expected_blue: f,
                expected_blue_fraction: f / n as f64,
                evaluator: evaluator.name().to_owned(),
                rounds,
                seed,
            });
        }
    }
    Ok(rows)
}

pub fn parse_methods(s: &str) -> Result<Vec<Strategy>> {
    if s.trim() == "all" {
        return Ok(Strategy::all());
    }
    s.split(',').map(|m| m.trim().parse()).collect()
}

/// Where a sweep gets its graph.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    File { path: PathBuf, weight_mode: WeightMode },
    Hrg(HrgParams),
}

/// Parameters of [`run_experiment`] read from key=value lines.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub graph: GraphSource,
    pub red_count: usize,
    pub budget_max: usize,
    pub rounds: usize,
    pub methods: Vec<Strategy>,
    pub evaluator: Evaluator,
    pub seed: u64,
}

const CONFIG_KEYS: &[&str] = &[
    "experiment",
    "graph",
    "weight_mode",
    "family",
    "n",
    "radius",
    "alpha",
    "red_count",
    "budget_max",
    "rounds",
    "methods",
    "evaluator",
    "seed",
];

impl ExperimentConfig {
    /// Either `graph = PATH` (relative to the config file) with an optional
    /// `weight_mode`, or `family = hrg` with `n`, `radius` and `alpha`.
    /// `methods` defaults to `all`, `evaluator` to `marginal`.
    pub fn from_key_values(kv: &KeyValues) -> Result<Self> {
        kv.check_keys(CONFIG_KEYS)?;
        let seed: u64 = kv.require("seed")?;
        let graph = match (kv.get("graph"), kv.get("family")) {
            (Some(p), None) => {
                let base = kv.path().parent().unwrap_or(Path::new(""));
                GraphSource::File {
                    path: base.join(p),
                    weight_mode: kv.parsed("weight_mode")?.unwrap_or_default(),
                }
            }
            (None, Some("hrg")) => {
                let mut p = HrgParams::new(kv.require("n")?, seed);
                p.radius = kv.parsed("radius")?.unwrap_or(p.radius);
                p.alpha = kv.parsed("alpha")?.unwrap_or(p.alpha);
                GraphSource::Hrg(p)
            }
            _ => {
                return Err(Error::InvalidParameter(
                    "config needs exactly one of `graph = PATH` or `family = hrg`".into(),
                ))
            }
        };
        let evaluator: Evaluator = kv.parsed("evaluator")?.unwrap_or(Evaluator::Marginal);
        Ok(ExperimentConfig {
            graph,
            red_count: kv.require("red_count")?,
            budget_max: kv.require("budget_max")?,
            rounds: kv.require("rounds")?,
            methods: parse_methods(kv.get("methods").unwrap_or("all"))?,
            evaluator: evaluator.with_seed(seed),
            seed,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_key_values(&KeyValues::load(path)?)
    }

    pub fn build_graph(&self) -> Result<WeightedDigraph> {
        match &self.graph {
            GraphSource::File { path, weight_mode } => load_graph(path, *weight_mode),
            GraphSource::Hrg(p) => Ok(gen_hrg(p)?.graph),
        }
    }

    pub fn run(&self) -> Result<Vec<ResultRow>> {
        let g = self.build_graph()?;
        run_experiment(
            &g,
            self.red_count,
            self.budget_max,
            self.rounds,
            &self.methods,
            self.evaluator,
            self.seed,
        )
    }
}

/// Mean convergence time on strongly connected hyperbolic random graphs,
/// per graph size and initial colouring strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceSweep {
    pub sizes: Vec<usize>,
    pub graphs_per_size: usize,
    pub runs_per_graph: usize,
    pub strategies: Vec<HrgColouring>,
    pub radius: f64,
    pub alpha: f64,
    pub round_cap: u64,
    pub seed: u64,
}

const SWEEP_KEYS: &[&str] = &[
    "experiment",
    "sizes",
    "graphs",
    "runs",
    "strategies",
    "radius",
    "alpha",
    "round_cap",
    "seed",
];

impl ConvergenceSweep {
    /// `sizes` and `strategies` are comma lists; `strategies` defaults to
    /// all four, `graphs` to 128, `runs` to 1.
    pub fn from_key_values(kv: &KeyValues) -> Result<Self> {
        kv.check_keys(SWEEP_KEYS)?;
        let list = |key: &str, default: &str| -> Result<Vec<usize>> {
            kv.get(key)
                .unwrap_or(default)
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Error::InvalidParameter(format!("bad entry `{t}` in `{key}`")))
                })
                .collect()
        };
        let strategies = list("strategies", "1,2,3,4")?
            .into_iter()
            .map(|k| HrgColouring::from_number(k.min(255) as u8))
            .collect::<Result<_>>()?;
        let defaults = HrgParams::new(0, 0);
        Ok(ConvergenceSweep {
            sizes: list("sizes", "")?,
            graphs_per_size: kv.parsed("graphs")?.unwrap_or(128),
            runs_per_graph: kv.parsed("runs")?.unwrap_or(1),
            strategies,
            radius: kv.parsed("radius")?.unwrap_or(defaults.radius),
            alpha: kv.parsed("alpha")?.unwrap_or(defaults.alpha),
            round_cap: kv.parsed("round_cap")?.unwrap_or(DEFAULT_ROUND_CAP),
            seed: kv.require("seed")?,
        })
    }

    /// One row per (strategy, size). Every strategy sees the same graphs;
    /// each (graph, strategy) pair has its own colouring and run streams.
    pub fn run(&self) -> Result<Vec<ConvergenceRow>> {
        if self.graphs_per_size == 0 || self.runs_per_graph == 0 {
            return Err(Error::InvalidParameter("need at least one graph and one run".into()));
        }
        let mut master = ChaCha8Rng::seed_from_u64(self.seed);
        let mut samples = vec![Vec::new(); self.strategies.len() * self.sizes.len()];
        let mut cap_hits = vec![0; samples.len()];
        for (si, &n) in self.sizes.iter().enumerate() {
            for g in 0..self.graphs_per_size {
                let graph_seed: u64 = master.random();
                let params = HrgParams { n, radius: self.radius, alpha: self.alpha, seed: graph_seed };
                let hrg = gen_hrg(&params)?;
                let h = hrg.graph.normalize();
                let detector = ConvergenceDetector::for_graph(&h);
                log::debug!("size {n} graph {g}: {} edges", h.edge_count());
                for (ki, &strategy) in self.strategies.iter().enumerate() {
                    let mut crng = ChaCha8Rng::seed_from_u64(graph_seed);
                    crng.set_stream(strategy.number() as u64);
                    let colouring = hrg_colouring(n, Some(&hrg.coords), strategy, &mut crng)?;
                    let sys = System::new(h.clone(), colouring)?;
                    let run_seed = graph_seed ^ ((strategy.number() as u64) << 56);
                    let stats =
                        estimate_convergence_time(&sys, &detector, self.runs_per_graph, self.round_cap, run_seed);
                    let slot = ki * self.sizes.len() + si;
                    samples[slot].extend(stats.outcomes.iter().map(|o| o.rounds as f64));
                    cap_hits[slot] += stats.cap_hits;
                }
            }
        }
        let mut rows = Vec::with_capacity(samples.len());
        for (ki, strategy) in self.strategies.iter().enumerate() {
            for (si, &n) in self.sizes.iter().enumerate() {
                let slot = ki * self.sizes.len() + si;
                let xs = &samples[slot];
                let mean = xs.iter().sum::<f64>() / xs.len() as f64;
                let var = if xs.len() > 1 {
                    xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (xs.len() - 1) as f64
                } else {
                    0.0
                };
                rows.push(ConvergenceRow {
                    strategy: format!("strategy-{}", strategy.number()),
                    n,
                    graphs: self.graphs_per_size,
                    runs: xs.len(),
                    mean_rounds: mean,
                    stderr: (var / xs.len() as f64).sqrt(),
                    cap_hits: cap_hits[slot],
                });
            }
        }
        Ok(rows)
    }
}
