//! Empirical checks of the hitting bounds for separators, potential maximal
//! cliques and minimal nukes, and of the claims made about the two
//! clique-block counterexample families.

use std::fmt;

use thiserror::Error;

use crate::chordal::{full_components, is_minimal_separator, is_pmc};
use crate::gen::{counterexample_nuke, counterexample_separator};
use crate::graph::{Graph, VertexSet};
use crate::nuke::{is_nuke, Measure, NukeParams};
use crate::pattern::{contains_induced, find_induced_path_with_budget, PatternError, PatternGraph};
use crate::rational::{int, ratio, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("claim failed: {0}")]
    AssertionFailure(String),
}

pub fn alpha() -> Rational {
    ratio(1, 24)
}

pub fn beta() -> Rational {
    ratio(1, 576)
}

pub fn gamma() -> Rational {
    ratio(1, 5760)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HitReport {
    pub best_vertex: usize,
    pub best_mass: Rational,
    pub target_set_size: usize,
    pub bound: Rational,
    pub satisfied: bool,
}

impl fmt::Display for HitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "best_vertex={} best_mass={} target_size={} bound={} satisfied={}",
            self.best_vertex + 1,
            self.best_mass,
            self.target_set_size,
            self.bound,
            self.satisfied
        )
    }
}

/// `max_v μ(N(v))`, smallest id on ties.
fn best_hit(g: &Graph, target: &VertexSet, mu: &Measure, bound: Rational) -> HitReport {
    let mut best = (0, int(0));
    for v in 0..g.n() {
        let mass = mu.mass_of(g.neighbors(v));
        if v == 0 || mass > best.1 {
            best = (v, mass);
        }
    }
    HitReport {
        best_vertex: best.0,
        best_mass: best.1,
        target_set_size: target.len(),
        bound,
        satisfied: best.1 >= bound,
    }
}

fn check_measure(mu: &Measure, g: &Graph, support: &VertexSet) -> Result<(), VerifyError> {
    if mu.n() != g.n() || !mu.is_valid() || !mu.is_supported_on(support) {
        return Err(VerifyError::PreconditionViolation(
            "measure is not a probability measure on the target set".into(),
        ));
    }
    Ok(())
}

fn check_connected(g: &Graph) -> Result<(), VerifyError> {
    if g.n() < 2 || !g.is_connected() {
        return Err(VerifyError::PreconditionViolation(
            "graph must be connected with at least two vertices".into(),
        ));
    }
    Ok(())
}

pub fn verify_hit_sep(g: &Graph, s: &VertexSet, mu: &Measure) -> Result<HitReport, VerifyError> {
    if !is_minimal_separator(g, s) {
        return Err(VerifyError::PreconditionViolation(format!(
            "{s:?} is not a minimal separator"
        )));
    }
    check_measure(mu, g, s)?;
    Ok(best_hit(g, s, mu, alpha()))
}

pub fn verify_hit_pmc(g: &Graph, omega: &VertexSet, mu: &Measure) -> Result<HitReport, VerifyError> {
    check_connected(g)?;
    if !is_pmc(g, omega) {
        return Err(VerifyError::PreconditionViolation(format!(
            "{omega:?} is not a potential maximal clique"
        )));
    }
    check_measure(mu, g, omega)?;
    Ok(best_hit(g, omega, mu, beta()))
}

pub fn verify_hit_nuke(g: &Graph, x: &VertexSet, p: &NukeParams, mu: &Measure) -> Result<HitReport, VerifyError> {
    check_connected(g)?;
    if !is_nuke(g, x, p) {
        return Err(VerifyError::PreconditionViolation(format!("{x:?} is not a nuke")));
    }
    for v in x {
        let mut smaller = x.clone();
        smaller.remove(v);
        if is_nuke(g, &smaller, p) {
            return Err(VerifyError::PreconditionViolation(format!(
                "{x:?} is not inclusion-minimal (drop {v})"
            )));
        }
    }
    check_measure(mu, g, x)?;
    Ok(best_hit(g, x, mu, gamma()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClaimOutcome {
    Verified,
    Failed(String),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimResult {
    pub name: String,
    pub outcome: ClaimOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub k_nuke: usize,
    pub k_sep: usize,
    pub tau: usize,
    pub claims: Vec<ClaimResult>,
}

impl CounterexampleReport {
    pub fn outcome(&self, name: &str) -> Option<&ClaimOutcome> {
        self.claims.iter().find(|c| c.name == name).map(|c| &c.outcome)
    }

    pub fn all_verified(&self) -> bool {
        self.claims.iter().all(|c| c.outcome == ClaimOutcome::Verified)
    }

    /// First failed claim as an error; skipped claims do not count.
    pub fn into_result(self) -> Result<Self, VerifyError> {
        match self
            .claims
            .iter()
            .find(|c| matches!(c.outcome, ClaimOutcome::Failed(_)))
        {
            Some(c) => Err(VerifyError::AssertionFailure(c.name.clone())),
            None => Ok(self),
        }
    }
}

fn claim(name: &str, ok: bool, detail: impl FnOnce() -> String) -> ClaimResult {
    ClaimResult {
        name: name.to_string(),
        outcome: if ok {
            ClaimOutcome::Verified
        } else {
            ClaimOutcome::Failed(detail())
        },
    }
}

fn path_claim(name: &str, g: &Graph, k: usize, expect_present: bool, budget: u64) -> ClaimResult {
    let outcome = match find_induced_path_with_budget(g, k, budget) {
        Ok(found) if found.is_some() == expect_present => ClaimOutcome::Verified,
        Ok(found) => ClaimOutcome::Failed(match found {
            Some(p) => format!("found induced P{k}: {:?}", p.vertices),
            None => format!("no induced P{k}"),
        }),
        Err(PatternError::BudgetExceeded(b)) => ClaimOutcome::Skipped(format!("budget of {b} extensions exhausted")),
    };
    ClaimResult {
        name: name.to_string(),
        outcome,
    }
}

/// Build both families and check every stated property. Induced-path
/// searches give up after `pattern_budget` extensions and are reported as
/// skipped rather than guessed.
pub fn check_counterexamples(
    k_nuke: usize,
    k_sep: usize,
    pattern_budget: u64,
) -> Result<CounterexampleReport, VerifyError> {
    if k_nuke < 2 || k_sep < 2 {
        return Err(VerifyError::PreconditionViolation(
            "both k values must be at least 2".into(),
        ));
    }
    let mut claims = Vec::new();

    let left = counterexample_nuke(k_nuke);
    let g = &left.graph;
    let x = left.nuke_set();
    claims.push(claim("nuke.vertex_count", g.n() == k_nuke * (k_nuke + 1), || {
        format!("n = {}", g.n())
    }));
    let p = NukeParams::standard(left.tau);
    claims.push(claim("nuke.is_nuke", is_nuke(g, &x, &p), || {
        format!(
            "|X| = {} exceeds eta*n = {}, or the window/component bound fails at tau = {}",
            x.len(),
            p.eta * int(g.n()),
            left.tau
        )
    }));
    let max_hit = (0..g.n())
        .map(|v| g.neighbors(v).intersection_len(&x))
        .max()
        .unwrap_or(0);
    claims.push(claim("nuke.max_hit_is_one", max_hit == 1, || {
        format!("max |N(v) ∩ X| = {max_hit}")
    }));
    claims.push(path_claim("nuke.has_p6", g, 6, true, pattern_budget));
    claims.push(path_claim("nuke.p7_free", g, 7, false, pattern_budget));

    let right = counterexample_separator(k_sep);
    let g = &right.graph;
    let s = right.separator();
    claims.push(claim("sep.vertex_count", g.n() == k_sep * (k_sep + 2), || {
        format!("n = {}", g.n())
    }));
    claims.push(claim("sep.size", s.len() == k_sep * k_sep, || {
        format!("|S| = {}", s.len())
    }));
    claims.push(claim(
        "sep.is_minimal_separator",
        is_minimal_separator(g, &s),
        String::new,
    ));
    let a = VertexSet::from_vertices(g.n(), right.a.iter().copied());
    let b = VertexSet::from_vertices(g.n(), right.b.iter().copied());
    let full = full_components(g, &s);
    claims.push(claim(
        "sep.full_components_a_b",
        full.contains(&a) && full.contains(&b),
        || format!("full components {full:?}"),
    ));
    let max_hit = (0..g.n())
        .map(|v| g.neighbors(v).intersection_len(&s))
        .max()
        .unwrap_or(0);
    claims.push(claim("sep.max_hit_is_k", max_hit == k_sep, || {
        format!("max |N(v) ∩ S| = {max_hit}")
    }));
    claims.push(path_claim("sep.p8_free", g, 8, false, pattern_budget));
    claims.push(claim(
        "sep.e_free",
        !contains_induced(g, &PatternGraph::e_graph()),
        || "found an induced E-graph".into(),
    ));

    Ok(CounterexampleReport {
        k_nuke,
        k_sep,
        tau: left.tau,
        claims,
    })
}
