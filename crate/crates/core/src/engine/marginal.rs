//! Marginal propagation: each round computes `P_t = H * S_{t-1}` and
//! combines it with `S_{t-1}` node by node, treating a node's own colour and
//! the colour it picks as independent.
//!
//! This is exact for a single round from a deterministic colouring and for
//! any number of rounds when no node is uncoloured. In general it is a
//! mean-field estimate: an uncoloured pick leaves the node's own colour in
//! place, and the two are correlated through shared history.

use crate::error::Result;
use crate::graph::NormalizedDigraph;
use crate::model::{BeliefState, Colouring, SeedSet, System};

const B: usize = 0;
const R: usize = 1;
const U: usize = 2;

enum Matrix<'a> {
    Sparse(&'a NormalizedDigraph),
    // row-major n x n
    Dense(Vec<f64>),
}

/// Reusable propagation operator. Picks a dense `H` when the graph has more
/// than `n^2 / 4` edges.
pub struct MarginalPropagator<'a> {
    graph: &'a NormalizedDigraph,
    matrix: Matrix<'a>,
}

impl<'a> MarginalPropagator<'a> {
    pub fn new(graph: &'a NormalizedDigraph) -> Self {
        let n = graph.node_count();
        let matrix = if graph.edge_count() * 4 > n * n {
            Matrix::Dense(graph.to_dense())
        } else {
            Matrix::Sparse(graph)
        };
        MarginalPropagator { graph, matrix }
    }

    pub fn sparse(graph: &'a NormalizedDigraph) -> Self {
        MarginalPropagator { graph, matrix: Matrix::Sparse(graph) }
    }

    pub fn dense(graph: &'a NormalizedDigraph) -> Self {
        MarginalPropagator { graph, matrix: Matrix::Dense(graph.to_dense()) }
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.matrix, Matrix::Dense(_))
    }

    /// `P = H * S`; zero rows for stubborn nodes.
    fn pick_probabilities(&self, s: &[[f64; 3]], p: &mut [[f64; 3]]) {
        match &self.matrix {
            Matrix::Sparse(g) => {
                for (v, out) in p.iter_mut().enumerate() {
                    let (targets, probs) = g.row(v);
                    let mut acc = [0.0; 3];
                    for (&w, &h) in targets.iter().zip(probs) {
                        for c in 0..3 {
                            acc[c] += h * s[w][c];
                        }
                    }
                    *out = acc;
                }
            }
            Matrix::Dense(h) => {
                let n = s.len();
                for (v, out) in p.iter_mut().enumerate() {
                    let row = &h[v * n..(v + 1) * n];
                    let mut acc = [0.0; 3];
                    for (w, &hw) in row.iter().enumerate() {
                        if hw != 0.0 {
                            for c in 0..3 {
                                acc[c] += hw * s[w][c];
                            }
                        }
                    }
                    *out = acc;
                }
            }
        }
    }

    /// Advances `state` by `rounds` rounds in place.
    pub fn advance(&self, state: &mut BeliefState, rounds: usize) {
        let n = state.node_count();
        let mut p = vec![[0.0; 3]; n];
        for _ in 0..rounds {
            self.pick_probabilities(state.rows(), &mut p);
            for (v, s) in state.rows_mut().iter_mut().enumerate() {
                if self.graph.is_stubborn(v) {
                    continue;
                }
                let pt = p[v];
                let prev = *s;
                // complements clamped: row sums of H can exceed 1 by an ulp
                s[B] = prev[B] * (1.0 - pt[R]).max(0.0) + (1.0 - prev[B]) * pt[B];
                s[R] = prev[R] * (1.0 - pt[B]).max(0.0) + (1.0 - prev[R]) * pt[R];
                s[U] = prev[U] * pt[U];
            }
        }
    }

    pub fn run(&self, start: &Colouring, rounds: usize) -> BeliefState {
        let mut state = BeliefState::from_colouring(start);
        self.advance(&mut state, rounds);
        state
    }
}

/// `S_rounds` of the seeded system under the marginal recurrence.
pub fn propagate_marginals(sys: &System, seeds: &SeedSet, rounds: usize) -> Result<BeliefState> {
    let start = sys.seeded_colouring(seeds)?;
    Ok(MarginalPropagator::new(sys.graph()).run(&start, rounds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedDigraph;

    fn system(n: usize, edges: &[(usize, usize, f64)], colours: &str) -> System {
        let g = WeightedDigraph::from_edges(n, edges.iter().copied()).unwrap();
        System::from_weighted(&g, colours.parse().unwrap()).unwrap()
    }

    #[test]
    fn split_between_stubborn_blue_and_red() {
        let sys = system(3, &[(0, 1, 1.0), (0, 2, 1.0)], "ubr");
        let s = propagate_marginals(&sys, &SeedSet::empty(), 1).unwrap();
        assert_eq!(s.row(0), [0.5, 0.5, 0.0]);
    }

    #[test]
    fn two_cycle_swaps() {
        let sys = system(2, &[(0, 1, 1.0), (1, 0, 1.0)], "br");
        let s = propagate_marginals(&sys, &SeedSet::empty(), 1).unwrap();
        assert_eq!(s.row(0), [0.0, 1.0, 0.0]);
        assert_eq!(s.row(1), [1.0, 0.0, 0.0]);
    }

    #[test]
    fn chain_to_stubborn_blue() {
        // x -> o -> s
        let sys = system(3, &[(0, 1, 1.0), (1, 2, 1.0)], "uub");
        let s = propagate_marginals(&sys, &SeedSet::empty(), 3).unwrap();
        assert_eq!(s.prob(0, crate::model::Colour::Blue), 1.0);
    }

    #[test]
    fn half_blue_neighbourhood_saturates_geometrically() {
        // o -> {s1, s2}, both stubborn; s1 seeded blue
        let sys = system(3, &[(0, 1, 1.0), (0, 2, 1.0)], "uuu");
        let seeds: SeedSet = [1].into_iter().collect();
        for tau in 0..8 {
            let s = propagate_marginals(&sys, &seeds, tau).unwrap();
            let expected = 1.0 - 0.5f64.powi(tau as i32);
            assert!((s.prob(0, crate::model::Colour::Blue) - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn stubborn_rows_never_move() {
        let sys = system(4, &[(0, 1, 1.0), (0, 2, 1.0), (1, 0, 1.0)], "ubrr");
        let s = propagate_marginals(&sys, &SeedSet::empty(), 9).unwrap();
        assert_eq!(s.row(2), [0.0, 1.0, 0.0]);
        assert_eq!(s.row(3), [0.0, 1.0, 0.0]);
    }

    #[test]
    fn dense_and_sparse_paths_agree_bitwise() {
        let sys = system(
            5,
            &[(0, 1, 1.0), (0, 2, 2.0), (1, 3, 1.0), (2, 4, 3.0), (3, 0, 1.0), (4, 1, 1.0), (4, 4, 1.0)],
            "burub",
        );
        let start = sys.initial().clone();
        let a = MarginalPropagator::sparse(sys.graph()).run(&start, 12);
        let b = MarginalPropagator::dense(sys.graph()).run(&start, 12);
        for (ra, rb) in a.rows().iter().zip(b.rows()) {
            for c in 0..3 {
                assert_eq!(ra[c].to_bits(), rb[c].to_bits());
            }
        }
    }
}
