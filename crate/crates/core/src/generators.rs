//! Graph families and initial colourings: the max-coverage reduction
//! gadget, the exponential-period and exponential-time constructions,
//! hyperbolic random graphs with their four colouring strategies, and random
//! strongly connected graphs of a chosen period.

use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{is_strongly_connected, NodeId, WeightedDigraph};
use crate::model::{Colour, Colouring, System};

/// A max-coverage instance: choose `budget` of the `subsets` to cover as
/// many of the `objects` as possible.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxCoverageInstance {
    pub objects: usize,
    /// Object indices (0-based) of each subset.
    pub subsets: Vec<Vec<usize>>,
    pub budget: usize,
    pub epsilon: f64,
}

impl MaxCoverageInstance {
    pub fn validate(&self) -> Result<()> {
        let (m, l, k) = (self.objects, self.subsets.len(), self.budget);
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return bad(format!("epsilon must be positive, got {}", self.epsilon));
        }
        if k == 0 || k >= l {
            return bad(format!("budget must satisfy 0 < k < l, got k={k}, l={l}"));
        }
        if k >= m {
            return bad(format!("budget must satisfy k < m, got k={k}, m={m}"));
        }
        let mut covered = vec![false; m];
        for (j, s) in self.subsets.iter().enumerate() {
            for &o in s {
                if o >= m {
                    return bad(format!("subset {} names object {} of {m}", j + 1, o + 1));
                }
                covered[o] = true;
            }
        }
        if let Some(o) = covered.iter().position(|&c| !c) {
            return bad(format!("object {} is not covered by any subset", o + 1));
        }
        Ok(())
    }

    /// Number of satellites per object node, `max(ceil(1/epsilon), m)`.
    pub fn satellites_per_object(&self) -> usize {
        ((1.0 / self.epsilon).ceil() as usize).max(self.objects)
    }
}

/// Random instance with `n` objects and `n` subsets, each object joining
/// each subset with probability 1/2. Uncovered objects and empty subsets get
/// one random member. The budget is `max(1, n / 3)`.
pub fn random_max_coverage<R: Rng + ?Sized>(n: usize, epsilon: f64, rng: &mut R) -> Result<MaxCoverageInstance> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("max-coverage needs n >= 2, got {n}")));
    }
    let mut member = vec![vec![false; n]; n];
    for row in member.iter_mut() {
        for x in row.iter_mut() {
            *x = rng.random::<f64>() < 0.5;
        }
        if !row.iter().any(|&x| x) {
            row[rng.random_range(0..n)] = true;
        }
    }
    for o in 0..n {
        if !member.iter().any(|row| row[o]) {
            member[rng.random_range(0..n)][o] = true;
        }
    }
    let subsets = member
        .into_iter()
        .map(|row| (0..n).filter(|&o| row[o]).collect())
        .collect();
    let inst = MaxCoverageInstance { objects: n, subsets, budget: (n / 3).max(1), epsilon };
    inst.validate()?;
    Ok(inst)
}

/// Adoption-maximisation instance built from a max-coverage instance.
#[derive(Debug, Clone)]
pub struct ReductionInstance {
    pub system: System,
    pub graph: WeightedDigraph,
    pub rounds: usize,
    pub satellites_per_object: usize,
    pub object_nodes: Vec<NodeId>,
    pub subset_nodes: Vec<NodeId>,
    /// `satellite_nodes[j]` are the satellites of object node `j`.
    pub satellite_nodes: Vec<Vec<NodeId>>,
}

/// Object nodes point at the subsets containing them, every object node has
/// `d` satellites pointing at it, subset nodes are stubborn and everything
/// starts uncoloured. The horizon is `l * d + 1` rounds.
pub fn gen_reduction(inst: &MaxCoverageInstance) -> Result<ReductionInstance> {
    inst.validate()?;
    let (m, l) = (inst.objects, inst.subsets.len());
    let d = inst.satellites_per_object();
    let n = m + l + m * d;
    let object_nodes: Vec<_> = (0..m).collect();
    let subset_nodes: Vec<_> = (m..m + l).collect();
    let satellite_nodes: Vec<Vec<_>> =
        (0..m).map(|j| (0..d).map(|i| m + l + j * d + i).collect()).collect();

    let mut g = WeightedDigraph::new(n);
    for (j, subset) in inst.subsets.iter().enumerate() {
        for &o in subset {
            g.add_edge(object_nodes[o], subset_nodes[j], 1.0)?;
        }
    }
    for (j, sats) in satellite_nodes.iter().enumerate() {
        for &s in sats {
            g.add_edge(s, object_nodes[j], 1.0)?;
        }
    }
    let mut labels: Vec<String> = (1..=m).map(|i| format!("o{i}")).collect();
    labels.extend((1..=l).map(|j| format!("s{j}")));
    for j in 1..=m {
        labels.extend((1..=d).map(|i| format!("o{j}_{i}")));
    }
    g.set_labels(labels)?;

    let system = System::from_weighted(&g, Colouring::uniform(n, Colour::Uncoloured))?;
    Ok(ReductionInstance {
        system,
        graph: g,
        rounds: l * d + 1,
        satellites_per_object: d,
        object_nodes,
        subset_nodes,
        satellite_nodes,
    })
}

fn one_based_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// Nodes 1 (blue) and 2 (red) are stubborn; every other node splits its
/// weight evenly between them. Nodes are labelled `1..=n`.
pub fn gen_exp_period(n: usize) -> Result<(WeightedDigraph, System)> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("exp-period needs n >= 3, got {n}")));
    }
    let edges = (2..n).flat_map(|i| [(i, 0, 0.5), (i, 1, 0.5)]);
    let g = WeightedDigraph::from_edges(n, edges)?.with_labels(one_based_labels(n))?;
    let mut c = Colouring::uniform(n, Colour::Uncoloured);
    c.set(0, Colour::Blue);
    c.set(1, Colour::Red);
    let sys = System::from_weighted(&g, c)?;
    Ok((g, sys))
}

/// Edges `v_{i+1} -> v_i` and `v_i -> v_j` for `2 <= i < j <= n`; `v_1` is
/// stubborn blue and the rest start red.
pub fn gen_exp_time(n: usize) -> Result<(WeightedDigraph, System)> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("exp-time needs n >= 2, got {n}")));
    }
    let back = (1..n).map(|i| (i, i - 1));
    let forward = (1..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    let g = WeightedDigraph::from_unit_edges(n, back.chain(forward))?
        .with_labels(one_based_labels(n))?;
    let mut c = Colouring::uniform(n, Colour::Red);
    c.set(0, Colour::Blue);
    let sys = System::from_weighted(&g, c)?;
    Ok((g, sys))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HrgParams {
    pub n: usize,
    pub radius: f64,
    pub alpha: f64,
    pub seed: u64,
}

impl HrgParams {
    pub fn new(n: usize, seed: u64) -> Self {
        HrgParams { n, radius: 5.0, alpha: 1.0, seed }
    }
}

/// Polar coordinates in the hyperbolic disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicPoint {
    pub r: f64,
    pub theta: f64,
}

impl HyperbolicPoint {
    pub fn distance(&self, other: &HyperbolicPoint) -> f64 {
        let dtheta = std::f64::consts::PI - ((self.theta - other.theta).abs() - std::f64::consts::PI).abs();
        let c = self.r.cosh() * other.r.cosh() - self.r.sinh() * other.r.sinh() * dtheta.cos();
        c.max(1.0).acosh()
    }
}

#[derive(Debug, Clone)]
pub struct HrgGraph {
    pub graph: WeightedDigraph,
    pub coords: Vec<HyperbolicPoint>,
}

/// Retry budget of [`gen_hrg`].
pub const HRG_MAX_ATTEMPTS: usize = 1000;

fn check_hrg(p: &HrgParams) -> Result<()> {
    if !(p.radius > 0.0 && p.alpha > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "hyperbolic graph needs R > 0 and alpha > 0, got R={} alpha={}",
            p.radius, p.alpha
        )));
    }
    Ok(())
}

fn sample_points<R: Rng + ?Sized>(p: &HrgParams, rng: &mut R) -> Vec<HyperbolicPoint> {
    let span = (p.alpha * p.radius).cosh() - 1.0;
    (0..p.n)
        .map(|_| {
            // inverse of the radial cdf (cosh(alpha r) - 1) / (cosh(alpha R) - 1)
            let u: f64 = rng.random();
            let r = (1.0 + u * span).acosh() / p.alpha;
            HyperbolicPoint { r, theta: rng.random::<f64>() * TAU }
        })
        .collect()
}

fn connect(points: &[HyperbolicPoint], radius: f64) -> WeightedDigraph {
    let n = points.len();
    let mut g = WeightedDigraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if points[u].distance(&points[v]) <= radius {
                g.add_edge(u, v, 1.0).expect("valid edge");
                g.add_edge(v, u, 1.0).expect("valid edge");
            }
        }
    }
    g
}

/// One hyperbolic random graph, connected or not.
pub fn sample_hrg<R: Rng + ?Sized>(p: &HrgParams, rng: &mut R) -> Result<HrgGraph> {
    check_hrg(p)?;
    let coords = sample_points(p, rng);
    Ok(HrgGraph { graph: connect(&coords, p.radius), coords })
}

/// Hyperbolic random graph, resampled until strongly connected.
pub fn gen_hrg(p: &HrgParams) -> Result<HrgGraph> {
    check_hrg(p)?;
    if p.n == 0 {
        return Ok(HrgGraph { graph: WeightedDigraph::new(0), coords: Vec::new() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    for _ in 0..HRG_MAX_ATTEMPTS {
        let h = sample_hrg(p, &mut rng)?;
        if is_strongly_connected(&h.graph) {
            return Ok(h);
        }
    }
    Err(Error::RetriesExhausted { attempts: HRG_MAX_ATTEMPTS })
}

/// Initial colourings for convergence experiments on hyperbolic graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HrgColouring {
    /// The two most distant nodes become blue and red, the rest uncoloured.
    OppositePair = 1,
    /// Blue and red with probability 1% each, otherwise uncoloured.
    SparseRandom = 2,
    /// Blue or red with equal probability.
    Random = 3,
    /// The `n / 2` nodes nearest to node 0 blue, the rest red.
    NearestHalf = 4,
}

impl HrgColouring {
    pub const ALL: [HrgColouring; 4] = [
        HrgColouring::OppositePair,
        HrgColouring::SparseRandom,
        HrgColouring::Random,
        HrgColouring::NearestHalf,
    ];

    pub fn from_number(k: u8) -> Result<Self> {
        match k {
            1 => Ok(HrgColouring::OppositePair),
            2 => Ok(HrgColouring::SparseRandom),
            3 => Ok(HrgColouring::Random),
            4 => Ok(HrgColouring::NearestHalf),
            _ => Err(Error::InvalidParameter(format!("colouring strategy must be 1..=4, got {k}"))),
        }
    }

    pub fn number(self) -> u8 {
        self as u8
    }
}

pub fn hrg_colouring<R: Rng + ?Sized>(
    n: usize,
    coords: Option<&[HyperbolicPoint]>,
    strategy: HrgColouring,
    rng: &mut R,
) -> Result<Colouring> {
    let need_coords = || {
        coords.filter(|c| c.len() == n).ok_or_else(|| {
            Error::InvalidParameter(format!("strategy {} needs node coordinates", strategy.number()))
        })
    };
    let random = |probs: [f64; 2], rng: &mut R| {
        let colours = (0..n)
            .map(|_| {
                let u: f64 = rng.random();
                if u < probs[0] {
                    Colour::Blue
                } else if u < probs[0] + probs[1] {
                    Colour::Red
                } else {
                    Colour::Uncoloured
                }
            })
            .collect();
        Colouring::new(colours)
    };
    Ok(match strategy {
        HrgColouring::OppositePair => {
            let pts = need_coords()?;
            let mut c = Colouring::uniform(n, Colour::Uncoloured);
            let mut best = (f64::NEG_INFINITY, 0, 0);
            for u in 0..n {
                for v in u + 1..n {
                    let d = pts[u].distance(&pts[v]);
                    if d > best.0 {
                        best = (d, u, v);
                    }
                }
            }
            if n >= 2 {
                c.set(best.1, Colour::Blue);
                c.set(best.2, Colour::Red);
            }
            c
        }
        HrgColouring::SparseRandom => random([0.01, 0.01], rng),
        HrgColouring::Random => random([0.5, 0.5], rng),
        HrgColouring::NearestHalf => {
            let pts = need_coords()?;
            let mut order: Vec<usize> = (0..n).collect();
            if n > 0 {
                order.sort_by(|&a, &b| {
                    pts[0].distance(&pts[a]).total_cmp(&pts[0].distance(&pts[b])).then(a.cmp(&b))
                });
            }
            let mut c = Colouring::uniform(n, Colour::Red);
            for &v in &order[..n / 2] {
                c.set(v, Colour::Blue);
            }
            c
        }
    })
}

/// Random strongly connected unit-weight graph whose period is a multiple of
/// `period`: nodes sit on a Hamiltonian cycle through the residue classes
/// `v % period` and `extra_edges` random edges are added between consecutive
/// classes. `n` is rounded up to a multiple of `period`.
pub fn random_strongly_connected<R: Rng + ?Sized>(
    n: usize,
    period: usize,
    extra_edges: usize,
    rng: &mut R,
) -> Result<WeightedDigraph> {
    if n == 0 || period == 0 {
        return Err(Error::InvalidParameter("need n >= 1 and period >= 1".into()));
    }
    let n = n.div_ceil(period) * period;
    let mut perm: Vec<usize> = (0..n).collect();
    // shuffle within residue classes so the cycle still steps class by class
    for class in 0..period {
        let mut members: Vec<usize> = (class..n).step_by(period).collect();
        let slots = members.clone();
        members.shuffle(rng);
        for (slot, m) in slots.into_iter().zip(members) {
            perm[slot] = m;
        }
    }
    let mut g = WeightedDigraph::new(n);
    for i in 0..n {
        g.add_edge(perm[i], perm[(i + 1) % n], 1.0)?;
    }
    let mut added = 0;
    let mut attempts = 0;
    while added < extra_edges && attempts < 100 * (extra_edges + 1) {
        attempts += 1;
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if v % period == (u + 1) % period && !g.has_edge(u, v) {
            g.add_edge(u, v, 1.0)?;
            added += 1;
        }
    }
    Ok(g)
}
