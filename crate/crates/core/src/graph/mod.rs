//! Weighted directed graphs and their row-stochastic normal form.
//!
//! A node with no out-edges is *stubborn*: it never changes colour. The
//! normal form divides every out-edge weight by the node's total out-weight,
//! which leaves the neighbour sampling distribution untouched.

mod structure;

pub use structure::{
    derived_class_graph, distances, graph_period, is_strongly_connected, period_classes,
    single_source_distances, strongly_connected_components, Condensation, DistanceMatrix,
    PeriodStructure, Topology, UNREACHABLE,
};

use crate::error::{Error, Result};

/// Dense node index in `[0, n)`.
pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    labels: Vec<String>,
    // sorted by destination, no duplicates
    out: Vec<Vec<(NodeId, f64)>>,
}

impl WeightedDigraph {
    /// A graph with `n` isolated nodes labelled `0..n`.
    pub fn new(n: usize) -> Self {
        WeightedDigraph {
            labels: (0..n).map(|i| i.to_string()).collect(),
            out: vec![Vec::new(); n],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId, f64)>,
    {
        let mut g = WeightedDigraph::new(n);
        for (src, dst, w) in edges {
            g.add_edge(src, dst, w)?;
        }
        Ok(g)
    }

    /// Unit-weight graph, the common case for every construction in this crate.
    pub fn from_unit_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        Self::from_edges(n, edges.into_iter().map(|(s, d)| (s, d, 1.0)))
    }

    /// Adds `src -> dst`. A repeated pair has its weight added to the existing edge.
    pub fn add_edge(&mut self, src: NodeId, dst: NodeId, weight: f64) -> Result<()> {
        let n = self.node_count();
        for node in [src, dst] {
            if node >= n {
                return Err(Error::NodeOutOfRange { node, n });
            }
        }
        if !weight.is_finite() {
            return Err(Error::NonFiniteWeight { src, dst });
        }
        if weight <= 0.0 {
            return Err(Error::NonPositiveWeight { src, dst, weight });
        }
        let row = &mut self.out[src];
        match row.binary_search_by_key(&dst, |&(d, _)| d) {
            Ok(i) => {
                log::warn!(
                    "duplicate edge {} -> {} merged by summing weights",
                    self.labels[src],
                    self.labels[dst]
                );
                row[i].1 += weight;
            }
            Err(i) => row.insert(i, (dst, weight)),
        }
        Ok(())
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.node_count() {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} nodes",
                labels.len(),
                self.node_count()
            )));
        }
        self.labels = labels;
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        self.set_labels(labels)?;
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v]
    }

    pub fn out_edges(&self, v: NodeId) -> &[(NodeId, f64)] {
        &self.out[v]
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(s, row)| row.iter().map(move |&(d, w)| (s, d, w)))
    }

    pub fn has_edge(&self, src: NodeId, dst: NodeId) -> bool {
        self.out[src].binary_search_by_key(&dst, |&(d, _)| d).is_ok()
    }

    pub fn out_degree(&self, v: NodeId) -> usize {
        self.out[v].len()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.node_count()];
        for (_, d, _) in self.edges() {
            deg[d] += 1;
        }
        deg
    }

    pub fn is_stubborn(&self, v: NodeId) -> bool {
        self.out[v].is_empty()
    }

    pub fn normalize(&self) -> NormalizedDigraph {
        NormalizedDigraph::from_weighted(self)
    }
}

/// Row-stochastic graph in compressed sparse row layout; this is the
/// transition matrix `H` of the dynamics.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedDigraph {
    labels: Vec<String>,
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    probs: Vec<f64>,
    // running sums of `probs` within each row, used for sampling
    cumulative: Vec<f64>,
}

impl NormalizedDigraph {
    pub fn from_weighted(g: &WeightedDigraph) -> Self {
        let n = g.node_count();
        let m = g.edge_count();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(m);
        let mut probs = Vec::with_capacity(m);
        let mut cumulative = Vec::with_capacity(m);
        offsets.push(0);
        for v in 0..n {
            let row = g.out_edges(v);
            let total: f64 = row.iter().map(|&(_, w)| w).sum();
            let mut acc = 0.0;
            for &(d, w) in row {
                let p = w / total;
                acc += p;
                targets.push(d);
                probs.push(p);
                cumulative.push(acc);
            }
            if let Some(last) = cumulative.last_mut().filter(|_| !row.is_empty()) {
                *last = 1.0;
            }
            offsets.push(targets.len());
        }
        NormalizedDigraph { labels: g.labels().to_vec(), offsets, targets, probs, cumulative }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v]
    }

    /// Out-neighbours of `v` (ascending) and their transition probabilities.
    pub fn row(&self, v: NodeId) -> (&[NodeId], &[f64]) {
        let span = self.offsets[v]..self.offsets[v + 1];
        (&self.targets[span.clone()], &self.probs[span])
    }

    pub fn out_degree(&self, v: NodeId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn is_stubborn(&self, v: NodeId) -> bool {
        self.out_degree(v) == 0
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        (0..self.node_count()).flat_map(move |v| {
            let (t, p) = self.row(v);
            t.iter().zip(p).map(move |(&d, &w)| (v, d, w))
        })
    }

    /// Transition probability `H[src][dst]`, zero when there is no edge.
    pub fn prob(&self, src: NodeId, dst: NodeId) -> f64 {
        let (t, p) = self.row(src);
        t.binary_search(&dst).map(|i| p[i]).unwrap_or(0.0)
    }

    /// Neighbour picked by `v` for a uniform draw `u` in `[0, 1)`.
    /// Must not be called on a stubborn node.
    #[inline]
    pub fn pick(&self, v: NodeId, u: f64) -> NodeId {
        let span = self.offsets[v]..self.offsets[v + 1];
        let cum = &self.cumulative[span.clone()];
        let i = cum.partition_point(|&c| c <= u).min(cum.len() - 1);
        self.targets[span.start + i]
    }

    /// Row-major dense copy of `H`.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.node_count();
        let mut h = vec![0.0; n * n];
        for (s, d, p) in self.edges() {
            h[s * n + d] = p;
        }
        h
    }

    pub fn to_weighted(&self) -> WeightedDigraph {
        let mut g = WeightedDigraph::new(self.node_count());
        for (s, d, p) in self.edges() {
            g.out[s].push((d, p));
        }
        g.labels = self.labels.clone();
        g
    }
}
