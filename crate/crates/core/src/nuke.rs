//! Nukes: vertex sets whose removal leaves only components well below a
//! threshold, together with probability measures used to weigh them.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::rational::{int, is_probability, ratio, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NukeError {
    #[error("eta must lie in (0, 1/10], got {0}")]
    InvalidEta(Rational),
    #[error("tau must be non-negative, got {0}")]
    InvalidTau(Rational),
    #[error("the given set is not a nuke")]
    NotANuke,
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
}

/// The pair `(η, τ)`. `τ` is kept exact so that `τ = 0.8·n` needs no rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NukeParams {
    pub eta: Rational,
    pub tau: Rational,
}

impl NukeParams {
    pub fn new(eta: Rational, tau: Rational) -> Result<Self, NukeError> {
        if eta <= int(0) || eta > ratio(1, 10) {
            return Err(NukeError::InvalidEta(eta));
        }
        if tau < int(0) {
            return Err(NukeError::InvalidTau(tau));
        }
        Ok(NukeParams { eta, tau })
    }

    /// `η = 1/10` with an integer threshold.
    pub fn standard(tau: usize) -> Self {
        NukeParams::new(ratio(1, 10), int(tau)).unwrap()
    }

    /// Whether `(1 - 2η)n ≤ τ ≤ (1 - η)n`.
    pub fn window_admits(&self, n: usize) -> bool {
        let n = int(n);
        let one = int(1);
        (one - self.eta * 2) * n <= self.tau && self.tau <= (one - self.eta) * n
    }
}

/// A probability measure over the vertices of a host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measure {
    masses: Vec<Rational>,
}

impl Measure {
    pub fn from_masses(masses: Vec<Rational>) -> Result<Self, NukeError> {
        if masses.iter().any(|m| *m < int(0)) {
            return Err(NukeError::InvalidMeasure("negative mass".into()));
        }
        let total: Rational = masses.iter().copied().sum();
        if total != int(1) {
            return Err(NukeError::InvalidMeasure(format!("masses sum to {total}")));
        }
        Ok(Measure { masses })
    }

    /// Equal mass on each member of `support` (which must be non-empty).
    pub fn uniform(support: &VertexSet) -> Self {
        let k = support.len();
        assert!(k > 0, "uniform measure needs a non-empty support");
        let mut masses = vec![int(0); support.capacity()];
        for v in support {
            masses[v] = ratio(1, k as i64);
        }
        Measure { masses }
    }

    pub fn point(n: usize, v: usize) -> Self {
        let mut masses = vec![int(0); n];
        masses[v] = int(1);
        Measure { masses }
    }

    /// Half the mass on each of the two members of lowest degree (ties to
    /// smaller ids); a singleton support gets a point mass.
    pub fn adversarial(g: &Graph, support: &VertexSet) -> Self {
        let mut members = support.to_vec();
        assert!(!members.is_empty(), "adversarial measure needs a non-empty support");
        members.sort_by_key(|&v| (g.degree(v), v));
        members.truncate(2);
        Measure::uniform(&VertexSet::from_vertices(g.n(), members))
    }

    pub fn n(&self) -> usize {
        self.masses.len()
    }

    pub fn mass(&self, v: usize) -> Rational {
        self.masses[v]
    }

    pub fn mass_of(&self, set: &VertexSet) -> Rational {
        set.iter().map(|v| self.masses[v]).sum()
    }

    pub fn support(&self) -> VertexSet {
        VertexSet::from_vertices(
            self.masses.len(),
            (0..self.masses.len()).filter(|&v| self.masses[v] > int(0)),
        )
    }

    pub fn is_supported_on(&self, set: &VertexSet) -> bool {
        self.support().is_subset(set)
    }

    pub fn is_valid(&self) -> bool {
        is_probability(&self.masses.iter().copied().sum()) && self.masses.iter().all(|m| *m >= int(0))
    }
}

/// Nuke test on the whole of `G`.
pub fn is_nuke(g: &Graph, x: &VertexSet, p: &NukeParams) -> bool {
    is_nuke_within(g, &g.vertices(), x, p)
}

/// Nuke test on the induced subgraph `G[alive]`.
pub fn is_nuke_within(g: &Graph, alive: &VertexSet, x: &VertexSet, p: &NukeParams) -> bool {
    if !x.is_subset(alive) {
        return false;
    }
    let n = alive.len();
    if !p.window_admits(n) || int(x.len()) > p.eta * int(n) {
        return false;
    }
    let bound = p.tau - int(x.len());
    g.connected_components(&(alive - x))
        .iter()
        .all(|c| int(c.len()) <= bound)
}

pub fn minimize_nuke(g: &Graph, x: &VertexSet, p: &NukeParams) -> Result<VertexSet, NukeError> {
    minimize_nuke_within(g, &g.vertices(), x, p)
}

/// Inclusion-minimal sub-nuke: repeated passes in increasing id order,
/// dropping any vertex whose removal keeps a nuke, until a pass changes nothing.
pub fn minimize_nuke_within(
    g: &Graph,
    alive: &VertexSet,
    x: &VertexSet,
    p: &NukeParams,
) -> Result<VertexSet, NukeError> {
    if !is_nuke_within(g, alive, x, p) {
        return Err(NukeError::NotANuke);
    }
    let mut y = x.clone();
    loop {
        let mut changed = false;
        for v in &y.clone() {
            y.remove(v);
            if is_nuke_within(g, alive, &y, p) {
                changed = true;
            } else {
                y.insert(v);
            }
        }
        if !changed {
            return Ok(y);
        }
    }
}

pub fn best_hitting_vertex(g: &Graph, y: &VertexSet) -> Option<(usize, usize)> {
    best_hitting_vertex_within(g, &g.vertices(), y)
}

/// Vertex of `candidates` maximising `|N(v) ∩ Y|`, smallest id on ties.
pub fn best_hitting_vertex_within(g: &Graph, candidates: &VertexSet, y: &VertexSet) -> Option<(usize, usize)> {
    if y.is_empty() {
        return None;
    }
    let mut best: Option<(usize, usize)> = None;
    for v in candidates {
        let c = g.neighbors(v).intersection_len(y);
        if best.is_none_or(|(_, b)| c > b) {
            best = Some((v, c));
        }
    }
    best
}
