use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{single_source_distances, NodeId, NormalizedDigraph, UNREACHABLE};
use crate::model::{Colour, System};

pub const PAGERANK_DAMPING: f64 = 0.85;
pub const PAGERANK_TOLERANCE: f64 = 1e-10;
pub const PAGERANK_MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Centrality {
    InDegree,
    OutDegree,
    /// Harmonic closeness over out-distances.
    Closeness,
    Betweenness,
    PageRank,
}

impl Centrality {
    pub const ALL: [Centrality; 5] = [
        Centrality::InDegree,
        Centrality::OutDegree,
        Centrality::Closeness,
        Centrality::Betweenness,
        Centrality::PageRank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Centrality::InDegree => "indeg",
            Centrality::OutDegree => "outdeg",
            Centrality::Closeness => "closeness",
            Centrality::Betweenness => "betweenness",
            Centrality::PageRank => "pagerank",
        }
    }

    pub fn scores(self, g: &NormalizedDigraph) -> Vec<f64> {
        match self {
            Centrality::InDegree => {
                let mut deg = vec![0.0; g.node_count()];
                for (_, d, _) in g.edges() {
                    deg[d] += 1.0;
                }
                deg
            }
            Centrality::OutDegree => (0..g.node_count()).map(|v| g.out_degree(v) as f64).collect(),
            Centrality::Closeness => harmonic_closeness(g),
            Centrality::Betweenness => betweenness(g),
            Centrality::PageRank => pagerank(g),
        }
    }
}

impl fmt::Display for Centrality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Centrality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Centrality::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown centrality `{s}`")))
    }
}

/// Sum of `1 / d(v, u)` over every `u` reachable from `v`.
pub fn harmonic_closeness(g: &NormalizedDigraph) -> Vec<f64> {
    (0..g.node_count())
        .map(|v| {
            single_source_distances(g, v)
                .into_iter()
                .filter(|&d| d != 0 && d != UNREACHABLE)
                .map(|d| 1.0 / d as f64)
                .sum()
        })
        .collect()
}

/// Brandes' algorithm on the unweighted digraph; pairs are ordered.
pub fn betweenness(g: &NormalizedDigraph) -> Vec<f64> {
    let n = g.node_count();
    let mut cb = vec![0.0; n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    for s in 0..n {
        sigma.iter_mut().for_each(|x| *x = 0.0);
        dist.iter_mut().for_each(|x| *x = usize::MAX);
        delta.iter_mut().for_each(|x| *x = 0.0);
        preds.iter_mut().for_each(Vec::clear);
        order.clear();
        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.row(v).0 {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        for &w in order.iter().rev() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                cb[w] += delta[w];
            }
        }
    }
    cb
}

/// Power iteration on the normalized weights; stubborn (dangling) mass is
/// spread uniformly.
pub fn pagerank(g: &NormalizedDigraph) -> Vec<f64> {
    let n = g.node_count();
    if n == 0 {
        return Vec::new();
    }
    let d = PAGERANK_DAMPING;
    let mut x = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    for _ in 0..PAGERANK_MAX_ITERATIONS {
        let dangling: f64 = (0..n).filter(|&v| g.is_stubborn(v)).map(|v| x[v]).sum();
        let base = (1.0 - d) / n as f64 + d * dangling / n as f64;
        next.iter_mut().for_each(|y| *y = base);
        for (v, &xv) in x.iter().enumerate() {
            let (targets, probs) = g.row(v);
            for (&w, &p) in targets.iter().zip(probs) {
                next[w] += d * xv * p;
            }
        }
        let residual: f64 = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        if residual < PAGERANK_TOLERANCE {
            break;
        }
    }
    x
}

/// Nodes by descending score, ties by ascending id. With `red_only` only
/// initially red nodes are ranked.
pub fn centrality_rank(sys: &System, method: Centrality, red_only: bool) -> Vec<NodeId> {
    let scores = method.scores(sys.graph());
    rank_by(&scores, |v| !red_only || sys.initial().get(v) == Colour::Red)
}

pub(crate) fn rank_by(scores: &[f64], keep: impl Fn(NodeId) -> bool) -> Vec<NodeId> {
    let mut order: Vec<NodeId> = (0..scores.len()).filter(|&v| keep(v)).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    order
}
