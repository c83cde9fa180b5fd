//! Connectivity and periodicity: strongly connected components, the graph
//! period (gcd of all cycle lengths), period classes, the derived class
//! graph and hop distances.

use std::collections::VecDeque;

use super::{NodeId, NormalizedDigraph, WeightedDigraph};
use crate::error::{Error, Result};

/// Read-only adjacency, enough for traversals over both node graphs and
/// colouring state graphs.
pub trait Topology {
    fn node_count(&self) -> usize;
    fn out_degree(&self, v: usize) -> usize;
    fn successor(&self, v: usize, i: usize) -> usize;
}

impl Topology for WeightedDigraph {
    fn node_count(&self) -> usize {
        WeightedDigraph::node_count(self)
    }
    fn out_degree(&self, v: usize) -> usize {
        WeightedDigraph::out_degree(self, v)
    }
    fn successor(&self, v: usize, i: usize) -> usize {
        self.out_edges(v)[i].0
    }
}

impl Topology for NormalizedDigraph {
    fn node_count(&self) -> usize {
        NormalizedDigraph::node_count(self)
    }
    fn out_degree(&self, v: usize) -> usize {
        NormalizedDigraph::out_degree(self, v)
    }
    fn successor(&self, v: usize, i: usize) -> usize {
        self.row(v).0[i]
    }
}

impl Topology for [Vec<usize>] {
    fn node_count(&self) -> usize {
        self.len()
    }
    fn out_degree(&self, v: usize) -> usize {
        self[v].len()
    }
    fn successor(&self, v: usize, i: usize) -> usize {
        self[v][i]
    }
}

impl Topology for Vec<Vec<usize>> {
    fn node_count(&self) -> usize {
        self.len()
    }
    fn out_degree(&self, v: usize) -> usize {
        self[v].len()
    }
    fn successor(&self, v: usize, i: usize) -> usize {
        self[v][i]
    }
}

/// Strongly connected components and the DAG obtained by contracting them.
#[derive(Debug, Clone)]
pub struct Condensation {
    /// Components in reverse topological order: every edge between two
    /// components points from a later one to an earlier one.
    pub components: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
    /// Deduplicated successor components of each component.
    pub successors: Vec<Vec<usize>>,
}

impl Condensation {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_leaf(&self, c: usize) -> bool {
        self.successors[c].is_empty()
    }

    /// Components with no outgoing edge in the condensation.
    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&c| self.is_leaf(c))
    }
}

const UNVISITED: usize = usize::MAX;

/// Iterative Tarjan.
pub fn strongly_connected_components<G: Topology + ?Sized>(g: &G) -> Condensation {
    let n = g.node_count();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut calls: Vec<(usize, usize)> = Vec::new();
    let mut components = Vec::new();
    let mut component_of = vec![UNVISITED; n];
    let mut next = 0;

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        calls.push((root, 0));

        while let Some(&mut (v, ref mut i)) = calls.last_mut() {
            if *i < g.out_degree(v) {
                let w = g.successor(v, *i);
                *i += 1;
                if index[w] == UNVISITED {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if low[v] == index[v] {
                let id = components.len();
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    component_of[w] = id;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                components.push(comp);
            }
            if let Some(&(parent, _)) = calls.last() {
                low[parent] = low[parent].min(low[v]);
            }
        }
    }

    let mut successors = vec![Vec::new(); components.len()];
    for v in 0..n {
        let cv = component_of[v];
        for i in 0..g.out_degree(v) {
            let cw = component_of[g.successor(v, i)];
            if cw != cv {
                successors[cv].push(cw);
            }
        }
    }
    for s in &mut successors {
        s.sort_unstable();
        s.dedup();
    }
    Condensation { components, component_of, successors }
}

pub fn is_strongly_connected<G: Topology + ?Sized>(g: &G) -> bool {
    let n = g.node_count();
    if n == 0 {
        return false;
    }
    // forward reachability from 0 plus reachability in the reverse graph
    let reach = |adj: &dyn Fn(usize, &mut dyn FnMut(usize))| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            adj(v, &mut |w| {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            });
        }
        count == n
    };
    if !reach(&|v, f| (0..g.out_degree(v)).for_each(|i| f(g.successor(v, i)))) {
        return false;
    }
    let mut rev = vec![Vec::new(); n];
    for v in 0..n {
        for i in 0..g.out_degree(v) {
            rev[g.successor(v, i)].push(v);
        }
    }
    reach(&|v, f| rev[v].iter().for_each(|&w| f(w)))
}

fn bfs_levels<G: Topology + ?Sized>(g: &G, root: usize) -> Vec<usize> {
    let mut level = vec![UNREACHABLE; g.node_count()];
    let mut queue = VecDeque::from([root]);
    level[root] = 0;
    while let Some(v) = queue.pop_front() {
        for i in 0..g.out_degree(v) {
            let w = g.successor(v, i);
            if level[w] == UNREACHABLE {
                level[w] = level[v] + 1;
                queue.push_back(w);
            }
        }
    }
    level
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn period_and_levels<G: Topology + ?Sized>(g: &G) -> Result<(usize, Vec<usize>)> {
    if !is_strongly_connected(g) {
        return Err(Error::NotStronglyConnected);
    }
    let level = bfs_levels(g, 0);
    let mut gamma = 0;
    for v in 0..g.node_count() {
        for i in 0..g.out_degree(v) {
            let w = g.successor(v, i);
            gamma = gcd(gamma, (level[v] + 1).abs_diff(level[w]));
        }
    }
    // a lone node without a self-loop has no cycles at all
    Ok((gamma.max(1), level))
}

/// Highest common factor of all cycle lengths of a strongly connected graph.
pub fn graph_period<G: Topology + ?Sized>(g: &G) -> Result<usize> {
    period_and_levels(g).map(|(gamma, _)| gamma)
}

/// The partition of a strongly connected graph into `gamma` classes such
/// that every edge leads from class `i` to class `(i + 1) % gamma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodStructure {
    pub gamma: usize,
    pub class_of: Vec<usize>,
    /// `classes[0]` holds node 0.
    pub classes: Vec<Vec<NodeId>>,
}

pub fn period_classes<G: Topology + ?Sized>(g: &G) -> Result<PeriodStructure> {
    let (gamma, level) = period_and_levels(g)?;
    let class_of: Vec<usize> = level.iter().map(|&l| l % gamma).collect();
    let mut classes = vec![Vec::new(); gamma];
    for (v, &c) in class_of.iter().enumerate() {
        classes[c].push(v);
    }
    Ok(PeriodStructure { gamma, class_of, classes })
}

/// The graph over one period class whose edge weights are the
/// `gamma`-step transition probabilities (entries of `H^gamma`).
///
/// Returns the derived graph together with the original id of each of its
/// nodes.
pub fn derived_class_graph(
    h: &NormalizedDigraph,
    class_index: usize,
) -> Result<(NormalizedDigraph, Vec<NodeId>)> {
    let period = period_classes(h)?;
    if period.gamma == 1 {
        return Err(Error::Aperiodic);
    }
    let members = period
        .classes
        .get(class_index)
        .ok_or(Error::NoSuchClass { class: class_index, gamma: period.gamma })?
        .clone();
    let n = h.node_count();
    let mut local = vec![UNVISITED; n];
    for (i, &v) in members.iter().enumerate() {
        local[v] = i;
    }

    let mut derived = WeightedDigraph::new(members.len());
    let mut dist = vec![0.0; n];
    let mut next = vec![0.0; n];
    for (i, &u) in members.iter().enumerate() {
        dist.iter_mut().for_each(|x| *x = 0.0);
        dist[u] = 1.0;
        for _ in 0..period.gamma {
            next.iter_mut().for_each(|x| *x = 0.0);
            for (v, &p) in dist.iter().enumerate().filter(|(_, &p)| p > 0.0) {
                let (targets, probs) = h.row(v);
                for (&w, &q) in targets.iter().zip(probs) {
                    next[w] += p * q;
                }
            }
            std::mem::swap(&mut dist, &mut next);
        }
        for (v, &p) in dist.iter().enumerate().filter(|(_, &p)| p > 0.0) {
            debug_assert_ne!(local[v], UNVISITED, "gamma-step walk left its class");
            derived.add_edge(i, local[v], p)?;
        }
    }
    derived.set_labels(members.iter().map(|&v| h.label(v).to_string()).collect())?;
    Ok((derived.normalize(), members))
}

/// Sentinel distance for unreachable pairs.
pub const UNREACHABLE: usize = usize::MAX;

pub fn single_source_distances<G: Topology + ?Sized>(g: &G, src: usize) -> Vec<usize> {
    bfs_levels(g, src)
}

/// All-pairs hop distances.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<usize>,
}

impl DistanceMatrix {
    /// Hop count from `u` to `v`, or [`UNREACHABLE`].
    pub fn get(&self, u: usize, v: usize) -> usize {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[usize] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    /// Largest finite distance.
    pub fn diameter(&self) -> usize {
        self.dist.iter().copied().filter(|&d| d != UNREACHABLE).max().unwrap_or(0)
    }
}

pub fn distances<G: Topology + ?Sized>(g: &G) -> DistanceMatrix {
    let n = g.node_count();
    let mut dist = Vec::with_capacity(n * n);
    for u in 0..n {
        dist.extend(bfs_levels(g, u));
    }
    DistanceMatrix { n, dist }
}
