//! Colours, colourings, per-node colour marginals and systems.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{NodeId, NormalizedDigraph, WeightedDigraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Colour {
    Blue = 0,
    Red = 1,
    Uncoloured = 2,
}

impl Colour {
    pub const ALL: [Colour; 3] = [Colour::Blue, Colour::Red, Colour::Uncoloured];

    /// Column of this colour in a [`BeliefState`] row, also its base-3 digit.
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Colour {
        Colour::ALL[i]
    }

    #[inline]
    pub fn is_coloured(self) -> bool {
        self != Colour::Uncoloured
    }

    pub fn symbol(self) -> char {
        match self {
            Colour::Blue => 'b',
            Colour::Red => 'r',
            Colour::Uncoloured => 'u',
        }
    }

    pub fn from_symbol(c: char) -> Option<Colour> {
        match c {
            'b' => Some(Colour::Blue),
            'r' => Some(Colour::Red),
            'u' => Some(Colour::Uncoloured),
            _ => None,
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A deterministic colour per node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Colouring(Vec<Colour>);

impl Colouring {
    pub fn new(colours: Vec<Colour>) -> Self {
        Colouring(colours)
    }

    pub fn uniform(n: usize, colour: Colour) -> Self {
        Colouring(vec![colour; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Colour] {
        &self.0
    }

    pub fn get(&self, v: NodeId) -> Colour {
        self.0[v]
    }

    pub fn set(&mut self, v: NodeId, c: Colour) {
        self.0[v] = c;
    }

    pub fn count(&self, c: Colour) -> usize {
        self.0.iter().filter(|&&x| x == c).count()
    }

    pub fn nodes_with(&self, c: Colour) -> impl Iterator<Item = NodeId> + '_ {
        self.0.iter().enumerate().filter(move |(_, &x)| x == c).map(|(v, _)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = Colour> + '_ {
        self.0.iter().copied()
    }
}

impl From<Vec<Colour>> for Colouring {
    fn from(v: Vec<Colour>) -> Self {
        Colouring(v)
    }
}

/// Parses strings such as `"bru"`, one symbol per node.
impl FromStr for Colouring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                Colour::from_symbol(c)
                    .ok_or_else(|| Error::InvalidParameter(format!("bad colour symbol `{c}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Colouring)
    }
}

impl fmt::Display for Colouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// Per-node colour marginals `S_t`, one row `(b, r, u)` per node.
#[derive(Debug, Clone, PartialEq)]
pub struct BeliefState {
    rows: Vec<[f64; 3]>,
}

impl BeliefState {
    pub fn from_colouring(c: &Colouring) -> Self {
        let rows = c
            .iter()
            .map(|col| {
                let mut row = [0.0; 3];
                row[col.index()] = 1.0;
                row
            })
            .collect();
        BeliefState { rows }
    }

    pub fn from_rows(rows: Vec<[f64; 3]>) -> Self {
        BeliefState { rows }
    }

    pub fn node_count(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, v: NodeId) -> [f64; 3] {
        self.rows[v]
    }

    pub fn rows(&self) -> &[[f64; 3]] {
        &self.rows
    }

    pub(crate) fn rows_mut(&mut self) -> &mut [[f64; 3]] {
        &mut self.rows
    }

    pub fn prob(&self, v: NodeId, c: Colour) -> f64 {
        self.rows[v][c.index()]
    }

    /// Expected number of nodes with colour `c`.
    pub fn expected(&self, c: Colour) -> f64 {
        self.rows.iter().map(|r| r[c.index()]).sum()
    }

    pub fn expected_blue(&self) -> f64 {
        self.expected(Colour::Blue)
    }
}

/// Seed nodes forced blue at time zero. Kept sorted and duplicate free.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SeedSet(Vec<NodeId>);

impl SeedSet {
    pub fn empty() -> Self {
        SeedSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: NodeId) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(i) => {
                self.0.insert(i, v);
                true
            }
        }
    }

    pub fn with(&self, v: NodeId) -> SeedSet {
        let mut s = self.clone();
        s.insert(v);
        s
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.0
    }
}

impl FromIterator<NodeId> for SeedSet {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> Self {
        let mut v: Vec<_> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        SeedSet(v)
    }
}

/// A normalized graph with an initial colouring.
#[derive(Debug, Clone)]
pub struct System {
    graph: Arc<NormalizedDigraph>,
    initial: Colouring,
}

impl System {
    pub fn new(graph: impl Into<Arc<NormalizedDigraph>>, initial: Colouring) -> Result<Self> {
        let graph = graph.into();
        if graph.node_count() != initial.len() {
            return Err(Error::SizeMismatch { graph: graph.node_count(), colouring: initial.len() });
        }
        Ok(System { graph, initial })
    }

    pub fn from_weighted(g: &WeightedDigraph, initial: Colouring) -> Result<Self> {
        System::new(g.normalize(), initial)
    }

    pub fn graph(&self) -> &NormalizedDigraph {
        &self.graph
    }

    pub fn shared_graph(&self) -> Arc<NormalizedDigraph> {
        Arc::clone(&self.graph)
    }

    pub fn initial(&self) -> &Colouring {
        &self.initial
    }

    pub fn node_count(&self) -> usize {
        self.initial.len()
    }

    /// The initial colouring with every seed turned blue.
    pub fn seeded_colouring(&self, seeds: &SeedSet) -> Result<Colouring> {
        let n = self.node_count();
        let mut c = self.initial.clone();
        for &v in seeds.nodes() {
            if v >= n {
                return Err(Error::NodeOutOfRange { node: v, n });
            }
            c.set(v, Colour::Blue);
        }
        Ok(c)
    }

    /// The system with `seeds` forced blue; `self` is left untouched.
    pub fn seed_apply(&self, seeds: &SeedSet) -> Result<System> {
        Ok(System { graph: Arc::clone(&self.graph), initial: self.seeded_colouring(seeds)? })
    }

    pub fn with_initial(&self, initial: Colouring) -> Result<System> {
        System::new(Arc::clone(&self.graph), initial)
    }
}
