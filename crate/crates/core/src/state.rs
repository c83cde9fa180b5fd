//! Base-3 encoding of whole colourings and the one-round transition kernel
//! over them.

use crate::error::{Error, Result};
use crate::graph::NormalizedDigraph;
use crate::model::{Colour, Colouring};

/// Default bound on the node count for anything that enumerates colourings.
pub const DEFAULT_EXACT_CAP: usize = 10;

/// A colouring packed as a base-3 integer; digit `i` is the colour index of node `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateCode(pub u64);

impl StateCode {
    pub fn encode(c: &Colouring) -> StateCode {
        StateCode(c.as_slice().iter().rev().fold(0u64, |acc, col| acc * 3 + col.index() as u64))
    }

    pub fn decode(self, n: usize) -> Colouring {
        let mut code = self.0;
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            out.push(Colour::from_index((code % 3) as usize));
            code /= 3;
        }
        Colouring::new(out)
    }
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    // 3^40 no longer fits comfortably in the code word
    if n > cap || n > 40 {
        return Err(Error::ExactCapExceeded { n, cap: cap.min(40) });
    }
    Ok(())
}

pub(crate) fn state_space_size(n: usize) -> u64 {
    3u64.pow(n as u32)
}

/// Distribution of the next colour of every node given the current colouring.
/// Each entry lists the achievable colours with positive probability.
pub(crate) fn next_colour_options(
    graph: &NormalizedDigraph,
    current: &[Colour],
    v: usize,
) -> ([(Colour, f64); 3], usize) {
    let own = current[v];
    let mut out = [(own, 1.0), (own, 0.0), (own, 0.0)];
    if graph.is_stubborn(v) {
        return (out, 1);
    }
    let mut mass = [0.0f64; 3];
    let (targets, probs) = graph.row(v);
    for (&w, &p) in targets.iter().zip(probs) {
        mass[current[w].index()] += p;
    }
    // picking an uncoloured neighbour keeps the own colour
    let keep = mass[Colour::Uncoloured.index()];
    mass[Colour::Uncoloured.index()] = 0.0;
    mass[own.index()] += keep;
    let mut len = 0;
    for c in Colour::ALL {
        if mass[c.index()] > 0.0 {
            out[len] = (c, mass[c.index()]);
            len += 1;
        }
    }
    (out, len)
}

/// Calls `f` once for every distinct successor of `current` with its
/// transition probability. Nodes update independently, so the kernel is the
/// product of the per-node next-colour distributions.
pub(crate) fn for_each_successor(
    graph: &NormalizedDigraph,
    current: &[Colour],
    scratch: &mut Vec<(u64, f64)>,
    mut f: impl FnMut(u64, f64),
) {
    scratch.clear();
    scratch.push((0, 1.0));
    let mut place = 1u64;
    let mut fixed = 0u64;
    for v in 0..current.len() {
        let (opts, len) = next_colour_options(graph, current, v);
        if len == 1 {
            fixed += place * opts[0].0.index() as u64;
        } else {
            let existing = scratch.len();
            for k in 1..len {
                let (c, p) = opts[k];
                for j in 0..existing {
                    let (code, q) = scratch[j];
                    scratch.push((code + place * c.index() as u64, q * p));
                }
            }
            let (c, p) = opts[0];
            for item in scratch.iter_mut().take(existing) {
                item.0 += place * c.index() as u64;
                item.1 *= p;
            }
        }
        place *= 3;
    }
    for &(code, p) in scratch.iter() {
        f(code + fixed, p);
    }
}

/// Every state reachable in one round from `s`, with probabilities summing to one.
pub fn state_successors(
    graph: &NormalizedDigraph,
    s: StateCode,
    cap: usize,
) -> Result<Vec<(StateCode, f64)>> {
    let n = graph.node_count();
    check_cap(n, cap)?;
    let current = s.decode(n);
    let mut out = Vec::new();
    let mut scratch = Vec::new();
    for_each_successor(graph, current.as_slice(), &mut scratch, |code, p| {
        out.push((StateCode(code), p))
    });
    out.sort_by_key(|&(c, _)| c);
    Ok(out)
}
