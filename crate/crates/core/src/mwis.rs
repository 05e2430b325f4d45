//! Maximum Weight Independent Set by high-degree branching interleaved with
//! nuke phases.
//!
//! [`find_is`] branches on a vertex whose degree is at least a fixed fraction
//! of the current component. When no such vertex exists it seeds a nuke from
//! the central bag of a minimal triangulation and hands over to the nuke
//! phase, which repeatedly minimises the nuke and branches on the vertex
//! hitting most of it. The phase ends (falling back to [`find_is`]) as soon as
//! the restricted set stops being a nuke. Every branch removes at least one
//! vertex, so the answer is exact on any input; the class assumption only
//! matters for the running time and for the checks done in strict mode.

use log::{debug, trace};
use thiserror::Error;

use crate::chordal::{central_bag, triangulated_clique_tree};
use crate::graph::{Graph, VertexSet, WeightedGraph};
use crate::nuke::{best_hitting_vertex_within, is_nuke_within, minimize_nuke_within, NukeParams};
use crate::rational::{int, ratio, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MwisError {
    #[error("vertex {0} has negative weight")]
    NegativeWeight(usize),
    #[error("node budget of {0} exhausted")]
    BudgetExceeded(u64),
    #[error("input is not P6-free: {0}")]
    NotP6Free(String),
    #[error("claim violated: {0}")]
    ClaimViolated(String),
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strictness {
    /// Always branch on the best vertex available; the answer stays exact.
    #[default]
    Robust,
    /// Treat a failed hitting guarantee as proof that the input is not P6-free.
    Strict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub beta: Rational,
    pub gamma: Rational,
    pub degree_factor: Rational,
    pub eta: Rational,
    pub tau_factor: Rational,
    pub strictness: Strictness,
    pub node_budget: Option<u64>,
    /// Keep every minimal nuke branched on, for offline inspection.
    pub record_nukes: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let beta = ratio(1, 576);
        SolverConfig {
            beta,
            gamma: beta * ratio(1, 10),
            degree_factor: beta * ratio(1, 20),
            eta: ratio(1, 10),
            tau_factor: ratio(4, 5),
            strictness: Strictness::Robust,
            node_budget: None,
            record_nukes: false,
        }
    }
}

impl SolverConfig {
    /// Configuration that reaches the nuke phase on small inputs: degree
    /// branching only fires on near-universal vertices.
    pub fn nuke_heavy() -> Self {
        SolverConfig {
            degree_factor: ratio(9, 10),
            ..SolverConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), MwisError> {
        let zero = int(0);
        let one = int(1);
        if !(zero < self.gamma && self.gamma <= self.beta && self.beta < one) {
            return Err(MwisError::InvalidConfig("need 0 < gamma <= beta < 1".into()));
        }
        if !(zero < self.degree_factor && self.degree_factor < one) {
            return Err(MwisError::InvalidConfig("need 0 < degree_factor < 1".into()));
        }
        if !(zero < self.eta && self.eta <= ratio(1, 10)) {
            return Err(MwisError::InvalidConfig("need 0 < eta <= 1/10".into()));
        }
        if !(zero < self.tau_factor && self.tau_factor < one) {
            return Err(MwisError::InvalidConfig("need 0 < tau_factor < 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub weight: i64,
    pub chosen: VertexSet,
}

impl Solution {
    fn empty(n: usize) -> Self {
        Solution {
            weight: 0,
            chosen: VertexSet::new(n),
        }
    }

    fn absorb(&mut self, other: Solution) {
        self.weight += other.weight;
        self.chosen.union_with(&other.chosen);
    }
}

/// A minimal nuke the nuke phase branched on, and the component it lived in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecordedNuke {
    pub alive: VertexSet,
    pub nuke: VertexSet,
    pub tau: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub findis_nodes: u64,
    pub findisnuke_nodes: u64,
    pub fallback_calls: u64,
    pub below_gamma_events: u64,
    pub max_depth: usize,
    /// Times a central bag was computed to seed a nuke phase.
    pub seed_steps: u64,
    /// Seeds whose central bag was not below a twentieth of the component.
    pub small_pmc_violations: u64,
    /// Seeds whose central bag failed the nuke test.
    pub seed_rejections: u64,
    /// Fallbacks with `9|alive| >= 8 n0`.
    pub nuke_decrease_violations: u64,
    /// Smallest observed `|N(v) ∩ Y| / |Y|` at a nuke branching step.
    pub min_hit_ratio: Option<Rational>,
    pub recorded_nukes: Vec<RecordedNuke>,
}

impl SolveStats {
    pub fn merge(&mut self, other: &SolveStats) {
        self.findis_nodes += other.findis_nodes;
        self.findisnuke_nodes += other.findisnuke_nodes;
        self.fallback_calls += other.fallback_calls;
        self.below_gamma_events += other.below_gamma_events;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.seed_steps += other.seed_steps;
        self.small_pmc_violations += other.small_pmc_violations;
        self.seed_rejections += other.seed_rejections;
        self.nuke_decrease_violations += other.nuke_decrease_violations;
        self.min_hit_ratio = match (self.min_hit_ratio, other.min_hit_ratio) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.recorded_nukes.extend(other.recorded_nukes.iter().cloned());
    }

    pub fn nodes(&self) -> u64 {
        self.findis_nodes + self.findisnuke_nodes
    }
}

/// Bookkeeping for one nuke phase.
#[derive(Clone, Copy, Debug)]
struct Phase {
    /// Size of the component the phase was seeded in.
    n0: usize,
    /// Whether the seed was below a twentieth of that component.
    small_seed: bool,
}

struct Solver<'a> {
    g: &'a Graph,
    w: &'a [i64],
    cfg: &'a SolverConfig,
    stats: SolveStats,
}

impl Solver<'_> {
    fn visit(&mut self, depth: usize) -> Result<(), MwisError> {
        self.stats.max_depth = self.stats.max_depth.max(depth);
        if let Some(budget) = self.cfg.node_budget {
            if self.stats.nodes() > budget {
                return Err(MwisError::BudgetExceeded(budget));
            }
        }
        Ok(())
    }

    fn max_degree_vertex(&self, alive: &VertexSet) -> (usize, usize) {
        let mut best = (usize::MAX, 0);
        for v in alive {
            let d = self.g.degree_within(v, alive);
            if best.0 == usize::MAX || d > best.1 {
                best = (v, d);
            }
        }
        best
    }

    fn find_is(&mut self, alive: &VertexSet, depth: usize) -> Result<Solution, MwisError> {
        self.stats.findis_nodes += 1;
        self.visit(depth)?;
        let n = self.g.n();
        match alive.len() {
            0 => return Ok(Solution::empty(n)),
            1 => {
                let v = alive.first().unwrap();
                return Ok(Solution {
                    weight: self.w[v],
                    chosen: alive.clone(),
                });
            }
            _ => {}
        }
        let (v, d) = self.max_degree_vertex(alive);
        if int(d) >= self.cfg.degree_factor * int(alive.len()) {
            return self.branch(v, alive, None, depth);
        }

        self.stats.seed_steps += 1;
        let sub = self.g.induced_subgraph(alive);
        let (_, tree) = triangulated_clique_tree(&sub.graph);
        let bag = central_bag(&sub.graph, &tree).map_err(|e| MwisError::ClaimViolated(format!("central bag: {e}")))?;
        let omega = sub.lift(&tree.bags[bag]);
        let small_seed = 20 * omega.len() < alive.len();
        if !small_seed {
            self.stats.small_pmc_violations += 1;
        }
        if self.cfg.strictness == Strictness::Strict {
            let hits = (0..n)
                .map(|u| self.g.neighbors(u).intersection_len(&omega))
                .max()
                .unwrap_or(0);
            if int(hits) < self.cfg.beta * int(omega.len()) {
                return Err(MwisError::NotP6Free(format!(
                    "no vertex sees a {} fraction of the central bag {omega:?}",
                    self.cfg.beta
                )));
            }
        }
        let tau = self.cfg.tau_factor * int(alive.len());
        let params = NukeParams { eta: self.cfg.eta, tau };
        if !is_nuke_within(self.g, alive, &omega, &params) {
            trace!("central bag of size {} is not a nuke; branching on {v}", omega.len());
            self.stats.seed_rejections += 1;
            return self.branch(v, alive, None, depth);
        }
        debug!("nuke phase seeded: |alive| = {}, |Ω| = {}", alive.len(), omega.len());
        let phase = Phase {
            n0: alive.len(),
            small_seed,
        };
        self.find_is_nuke(alive, tau, &omega, phase, depth)
    }

    fn find_is_nuke(
        &mut self,
        alive: &VertexSet,
        tau: Rational,
        x: &VertexSet,
        phase: Phase,
        depth: usize,
    ) -> Result<Solution, MwisError> {
        self.stats.findisnuke_nodes += 1;
        self.visit(depth)?;
        let params = NukeParams { eta: self.cfg.eta, tau };
        let x = x & alive;
        if alive.len() < 2 || !is_nuke_within(self.g, alive, &x, &params) {
            self.stats.fallback_calls += 1;
            if 9 * alive.len() >= 8 * phase.n0 {
                self.stats.nuke_decrease_violations += 1;
                if phase.small_seed {
                    return Err(MwisError::ClaimViolated(format!(
                        "nuke phase ended at {} of {} vertices",
                        alive.len(),
                        phase.n0
                    )));
                }
            }
            return self.find_is(alive, depth);
        }
        let y = minimize_nuke_within(self.g, alive, &x, &params).expect("checked to be a nuke");
        let (v, count) = best_hitting_vertex_within(self.g, alive, &y).expect("a nuke of a component is never empty");
        let hit = ratio(count as i64, y.len() as i64);
        self.stats.min_hit_ratio = Some(self.stats.min_hit_ratio.map_or(hit, |m| m.min(hit)));
        if int(count) < self.cfg.gamma * int(y.len()) {
            self.stats.below_gamma_events += 1;
            if self.cfg.strictness == Strictness::Strict {
                return Err(MwisError::NotP6Free(format!(
                    "best vertex sees {count} of {} nuke vertices",
                    y.len()
                )));
            }
        }
        if self.cfg.record_nukes {
            self.stats.recorded_nukes.push(RecordedNuke {
                alive: alive.clone(),
                nuke: y.clone(),
                tau,
            });
        }
        self.branch(v, alive, Some((tau, &y, phase)), depth)
    }

    fn solve_part(
        &mut self,
        part: &VertexSet,
        nuke: Option<(Rational, &VertexSet, Phase)>,
        depth: usize,
    ) -> Result<Solution, MwisError> {
        match nuke {
            None => self.find_is(part, depth + 1),
            Some((tau, y, phase)) => self.find_is_nuke(part, tau, &(y & part), phase, depth + 1),
        }
    }

    /// Exclude `v`, then include it; each side recurses per component.
    fn branch(
        &mut self,
        v: usize,
        alive: &VertexSet,
        nuke: Option<(Rational, &VertexSet, Phase)>,
        depth: usize,
    ) -> Result<Solution, MwisError> {
        let n = self.g.n();
        let mut without = alive.clone();
        without.remove(v);
        let mut exclude = Solution::empty(n);
        for part in self.g.connected_components(&without) {
            exclude.absorb(self.solve_part(&part, nuke, depth)?);
        }

        let rest = alive - &self.g.closed_neighborhood(v);
        let mut include = Solution {
            weight: self.w[v],
            chosen: VertexSet::singleton(n, v),
        };
        for part in self.g.connected_components(&rest) {
            include.absorb(self.solve_part(&part, nuke, depth)?);
        }
        Ok(if include.weight > exclude.weight {
            include
        } else {
            exclude
        })
    }
}

fn check_weights(gw: &WeightedGraph) -> Result<(), MwisError> {
    match gw.weights.iter().position(|&w| w < 0) {
        Some(v) => Err(MwisError::NegativeWeight(v)),
        None => Ok(()),
    }
}

/// Optimum over `G[alive]`, which must be connected.
pub fn find_is(
    gw: &WeightedGraph,
    alive: &VertexSet,
    cfg: &SolverConfig,
    stats: &mut SolveStats,
) -> Result<Solution, MwisError> {
    cfg.validate()?;
    check_weights(gw)?;
    let mut solver = Solver {
        g: &gw.graph,
        w: &gw.weights,
        cfg,
        stats: SolveStats::default(),
    };
    let out = solver.find_is(alive, 0);
    stats.merge(&solver.stats);
    out
}

/// Optimum over `G[alive]` given a set `X` promised to leave only small
/// components: `|C| + |X| <= tau` for every component `C` of `G[alive] - X`.
/// The phase's reference size is `|alive|`.
pub fn find_is_nuke(
    gw: &WeightedGraph,
    alive: &VertexSet,
    tau: Rational,
    x: &VertexSet,
    cfg: &SolverConfig,
    stats: &mut SolveStats,
) -> Result<Solution, MwisError> {
    cfg.validate()?;
    check_weights(gw)?;
    let mut solver = Solver {
        g: &gw.graph,
        w: &gw.weights,
        cfg,
        stats: SolveStats::default(),
    };
    let phase = Phase {
        n0: alive.len(),
        small_seed: false,
    };
    let out = solver.find_is_nuke(alive, tau, x, phase, 0);
    stats.merge(&solver.stats);
    out
}

/// Maximum weight independent set of the whole graph.
pub fn solve_mwis(gw: &WeightedGraph, cfg: &SolverConfig) -> Result<(Solution, SolveStats), MwisError> {
    cfg.validate()?;
    check_weights(gw)?;
    let mut solver = Solver {
        g: &gw.graph,
        w: &gw.weights,
        cfg,
        stats: SolveStats::default(),
    };
    let mut total = Solution::empty(gw.n());
    for part in gw.graph.connected_components(&gw.graph.vertices()) {
        total.absorb(solver.find_is(&part, 0)?);
    }
    Ok((total, solver.stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::oracle::{mwis_bruteforce, OracleLimits};
    use crate::pattern::is_pk_free;
    use crate::testutil::arb_graph;
    use proptest::prelude::*;

    fn solve(gw: &WeightedGraph) -> Solution {
        let (sol, _) = solve_mwis(gw, &SolverConfig::default()).unwrap();
        assert!(gw.graph.is_independent(&sol.chosen));
        assert_eq!(gw.weight_of(&sol.chosen), sol.weight);
        sol
    }

    #[test]
    fn small_examples() {
        let single = WeightedGraph::new(Graph::empty(1), vec![7]).unwrap();
        assert_eq!(solve(&single).weight, 7);
        let p4 = WeightedGraph::new(Graph::path(4), vec![1, 3, 3, 1]).unwrap();
        assert_eq!(solve(&p4).weight, 4);
        assert_eq!(solve(&WeightedGraph::unit(Graph::cycle(5))).weight, 2);
        assert_eq!(solve(&WeightedGraph::unit(Graph::empty(0))).weight, 0);
        let two = Graph::from_edges(8, [(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7)]).unwrap();
        let two = WeightedGraph::new(two, vec![1, 3, 3, 1, 1, 3, 3, 1]).unwrap();
        assert_eq!(solve(&two).weight, 8);
    }

    #[test]
    fn single_vertex_nuke_call_falls_back() {
        let gw = WeightedGraph::new(Graph::empty(1), vec![5]).unwrap();
        let mut stats = SolveStats::default();
        let alive = gw.graph.vertices();
        let sol = find_is_nuke(&gw, &alive, int(1), &alive, &SolverConfig::default(), &mut stats).unwrap();
        assert_eq!(sol.weight, 5);
        assert_eq!(stats.fallback_calls, 1);
    }

    #[test]
    fn rejects_bad_input() {
        let gw = WeightedGraph::new(Graph::path(2), vec![1, -2]).unwrap();
        assert_eq!(
            solve_mwis(&gw, &SolverConfig::default()),
            Err(MwisError::NegativeWeight(1))
        );
        let cfg = SolverConfig {
            gamma: ratio(1, 2),
            ..SolverConfig::default()
        };
        assert!(matches!(
            solve_mwis(&WeightedGraph::unit(Graph::path(2)), &cfg),
            Err(MwisError::InvalidConfig(_))
        ));
        let tight = SolverConfig {
            node_budget: Some(3),
            ..SolverConfig::default()
        };
        assert_eq!(
            solve_mwis(&WeightedGraph::unit(Graph::cycle(9)), &tight),
            Err(MwisError::BudgetExceeded(3))
        );
    }

    #[test]
    fn nuke_counterexample_matches_oracle() {
        let ce = gen::counterexample_nuke(4);
        let gw = WeightedGraph::unit(ce.graph);
        let expected = mwis_bruteforce(&gw, &OracleLimits::default()).unwrap().weight;
        assert_eq!(solve(&gw).weight, expected);
        let (sol, _) = solve_mwis(&gw, &SolverConfig::nuke_heavy()).unwrap();
        assert_eq!(sol.weight, expected);
    }

    #[test]
    fn nuke_phase_runs_on_blowups() {
        let mut phases = 0;
        for seed in 0..20 {
            let g = gen::p6_free_blowup(18, 3, seed);
            let gw = gen::assign_weights(&g, 1, 9, seed).unwrap();
            let cfg = SolverConfig {
                strictness: Strictness::Strict,
                ..SolverConfig::nuke_heavy()
            };
            let (sol, stats) = solve_mwis(&gw, &cfg).unwrap();
            assert_eq!(
                sol.weight,
                mwis_bruteforce(
                    &gw,
                    &OracleLimits {
                        mwis: 63,
                        ..Default::default()
                    }
                )
                .unwrap()
                .weight
            );
            assert_eq!(stats.below_gamma_events, 0);
            phases += stats.findisnuke_nodes;
        }
        assert!(phases > 0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn equals_oracle_on_any_graph(g in arb_graph(14), seed in any::<u64>()) {
            let gw = gen::assign_weights(&g, 0, 20, seed).unwrap();
            let expected = mwis_bruteforce(&gw, &OracleLimits::default()).unwrap().weight;
            for cfg in [SolverConfig::default(), SolverConfig::nuke_heavy()] {
                let (sol, stats) = solve_mwis(&gw, &cfg).unwrap();
                prop_assert_eq!(sol.weight, expected);
                prop_assert!(gw.graph.is_independent(&sol.chosen));
                prop_assert_eq!(gw.weight_of(&sol.chosen), sol.weight);
                prop_assert!(stats.max_depth <= gw.n());
            }
        }

        #[test]
        fn strict_mode_accepts_p6_free_inputs(seed in any::<u64>()) {
            let g = gen::random_pkfree(16, 0.3, 6, seed, 16).unwrap();
            prop_assume!(is_pk_free(&g, 6).unwrap());
            let gw = gen::assign_weights(&g, 0, 9, seed).unwrap();
            let cfg = SolverConfig { strictness: Strictness::Strict, ..SolverConfig::nuke_heavy() };
            let (sol, stats) = solve_mwis(&gw, &cfg).unwrap();
            prop_assert_eq!(sol.weight, mwis_bruteforce(&gw, &OracleLimits::default()).unwrap().weight);
            prop_assert_eq!(stats.below_gamma_events, 0);
        }
    }
}
