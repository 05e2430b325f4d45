//! Branching enumeration of the states of one bag.
//!
//! A branching node is labelled `(X0, Y)`: `X0` holds vertices already put in
//! the solution and `Y` the vertices that may still join it. Below the root
//! layer `Y` avoids `Ω`, and every node is first normalised and reduced:
//! `Y` loses everything within distance two of `X0`, branches where `X0` is
//! not 3-scattered or some vertex can no longer be dominated die, and the
//! Reduction Rule is applied until it stops firing. A node is a leaf once
//! every undominated bag vertex sees `Y` in a single component.

use std::collections::HashSet;

use log::warn;

use super::{EdsConfig, EdsError, State, StateFamily, StateValue};
use crate::chordal::is_pmc;
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    pub nodes: u64,
    pub leaves: u64,
    pub dead_branches: u64,
    pub repair_branches: u64,
    pub bad_vertex_branches: u64,
    pub final_branches: u64,
    /// Branches that did not shrink `B` by the promised factor.
    pub shrink_warnings: u64,
}

/// The bag, the components of `G - Ω` and their neighbourhoods.
struct BagView<'a> {
    g: &'a Graph,
    omega: VertexSet,
    omega_list: Vec<usize>,
    components: Vec<VertexSet>,
    comp_nbrs: Vec<VertexSet>,
    comp_of: Vec<usize>,
}

impl<'a> BagView<'a> {
    fn new(g: &'a Graph, omega: &VertexSet) -> Self {
        let components = g.connected_components(&(&g.vertices() - omega));
        let comp_nbrs = components.iter().map(|c| g.open_neighborhood(c)).collect();
        let mut comp_of = vec![usize::MAX; g.n()];
        for (i, c) in components.iter().enumerate() {
            for v in c {
                comp_of[v] = i;
            }
        }
        BagView {
            g,
            omega: omega.clone(),
            omega_list: omega.to_vec(),
            components,
            comp_nbrs,
            comp_of,
        }
    }

    /// Number of distinct components met by `set` (which avoids `Ω`).
    fn components_met(&self, set: &VertexSet) -> usize {
        let mut seen: Vec<usize> = set.iter().map(|v| self.comp_of[v]).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    fn second_neighbourhood(&self, x: &VertexSet) -> VertexSet {
        let once = self.g.closed_neighborhood_of_set(x);
        self.g.closed_neighborhood_of_set(&once)
    }
}

/// Reduced label of a live node.
struct Reduced {
    y: VertexSet,
    b: VertexSet,
}

/// Required shrink of `B` relative to the parent node: `den·|B'| <= num·|B|`.
#[derive(Clone, Copy)]
struct Shrink {
    parent_b: usize,
    num: usize,
    den: usize,
    branch: &'static str,
}

struct Enumerator<'a> {
    view: BagView<'a>,
    cfg: &'a EdsConfig,
    seen: HashSet<State>,
    states: Vec<State>,
    stats: EnumerationStats,
}

impl Enumerator<'_> {
    /// Normalise `(X0, Y)` and apply the Reduction Rule exhaustively.
    /// `None` means the branch is dead.
    fn reduce(&self, x0: &VertexSet, y: &VertexSet) -> Option<Reduced> {
        let g = self.view.g;
        if !g.pairwise_distance_at_least(x0, 3) {
            return None;
        }
        let mut y = y - &self.view.second_neighbourhood(x0);
        let dominated_x0 = g.closed_neighborhood_of_set(x0);
        let a = &self.view.omega - &dominated_x0;
        loop {
            if g.closed_neighborhood_of_set(&(x0 | &y)) != g.vertices() {
                return None;
            }
            let b = VertexSet::from_vertices(
                g.n(),
                a.iter()
                    .filter(|&v| self.view.components_met(&(g.neighbors(v) & &y)) >= 2),
            );
            let mut fired = false;
            'rule: for v in &b {
                for u in &(g.neighbors(v) & &y) {
                    let reach = &g.closed_neighborhood(u) & &y;
                    if reach.is_subset(g.neighbors(v)) {
                        let home = &self.view.components[self.view.comp_of[u]];
                        y.difference_with(&(g.neighbors(v) - home));
                        fired = true;
                        break 'rule;
                    }
                }
            }
            if !fired {
                return Some(Reduced { y, b });
            }
        }
    }

    fn emit(&mut self, x0: &VertexSet, y: &VertexSet) {
        let g = self.view.g;
        let values = self
            .view
            .omega_list
            .iter()
            .map(|&v| {
                if x0.contains(v) {
                    return StateValue::Bot;
                }
                let from_x0 = g.neighbors(v) & x0;
                // N(v) meets X0 at most once since X0 is 3-scattered
                if let Some(u) = from_x0.first() {
                    return if self.view.omega.contains(u) {
                        StateValue::Omega
                    } else {
                        StateValue::Component(self.view.comp_of[u])
                    };
                }
                let u = (g.neighbors(v) & y)
                    .first()
                    .expect("live leaves dominate every bag vertex");
                StateValue::Component(self.view.comp_of[u])
            })
            .collect();
        let state = State { values };
        self.stats.leaves += 1;
        if self.seen.insert(state.clone()) {
            self.states.push(state);
        }
    }

    fn node(&mut self, x0: VertexSet, y: VertexSet, shrink: Option<Shrink>) -> Result<(), EdsError> {
        self.stats.nodes += 1;
        if let Some(budget) = self.cfg.node_budget {
            if self.stats.nodes > budget {
                return Err(EdsError::BudgetExceeded(budget));
            }
        }
        let Some(Reduced { y, b }) = self.reduce(&x0, &y) else {
            self.stats.dead_branches += 1;
            return Ok(());
        };
        if let Some(s) = shrink {
            if s.den * b.len() > s.num * s.parent_b {
                let msg = format!(
                    "{}: |B| went from {} to {}, expected at most {}/{} of it",
                    s.branch,
                    s.parent_b,
                    b.len(),
                    s.num,
                    s.den
                );
                if self.cfg.assert_shrink {
                    return Err(EdsError::StructureViolation(msg));
                }
                warn!("{msg}");
                self.stats.shrink_warnings += 1;
            }
        }
        if b.is_empty() {
            self.emit(&x0, &y);
            return Ok(());
        }
        let g = self.view.g;

        // chain of active components by B-neighbourhood
        let mut active: Vec<usize> = (0..self.view.components.len())
            .filter(|&c| self.view.components[c].intersects(&y))
            .collect();
        let nb = |c: usize| &self.view.comp_nbrs[c] & &b;
        active.sort_by_key(|&c| (std::cmp::Reverse(nb(c).len()), c));
        let chain_ok = active.len() >= 2
            && nb(active[0]) == b
            && nb(active[1]) == b
            && active.windows(2).all(|w| nb(w[1]).is_subset(&nb(w[0])));
        if !chain_ok {
            return Err(EdsError::StructureViolation(
                "B-neighbourhoods of active components do not form a chain".into(),
            ));
        }

        // make the two leading components linked
        let (c1, c2) = (active[0], active[1]);
        if &self.view.comp_nbrs[c1] | &self.view.comp_nbrs[c2] == self.view.omega {
            let side = [c1, c2].into_iter().find(|&c| {
                let comp = &self.view.components[c];
                self.view.omega.iter().any(|w| comp.is_subset(g.neighbors(w)))
            });
            let Some(c) = side else {
                return Err(EdsError::StructureViolation(
                    "neither leading component has a fully adjacent bag vertex".into(),
                ));
            };
            let inside = &self.view.components[c] & &y;
            let rest = &y - &inside;
            for guess in &inside {
                self.stats.repair_branches += 1;
                let mut x = x0.clone();
                x.insert(guess);
                self.node(x, rest.clone(), None)?;
            }
            return Ok(());
        }

        let heavy: Vec<usize> = y
            .iter()
            .filter(|&v| 16 * g.neighbors(v).intersection_len(&b) >= b.len())
            .collect();
        let mut bad = None;
        for &v in &heavy {
            let mut x = x0.clone();
            x.insert(v);
            if let Some(r) = self.reduce(&x, &y) {
                if !r.b.is_empty() {
                    bad = Some((v, r));
                    break;
                }
            }
        }

        if let Some((v, after)) = bad {
            let nb_v = g.neighbors(v) & &b;
            for z in &(&g.closed_neighborhood(v) & &y) {
                let nz = g.neighbors(z);
                if !nb_v.is_subset(nz) && !after.b.is_subset(nz) {
                    return Err(EdsError::StructureViolation(format!(
                        "dominator candidate {z} of bad vertex {v} covers neither side"
                    )));
                }
            }
            let home = self.view.components[self.view.comp_of[v]].clone();
            let shrink = Shrink {
                parent_b: b.len(),
                num: 15,
                den: 16,
                branch: "bad-vertex branch",
            };
            for target in [nb_v, after.b] {
                let drop = &g.open_neighborhood(&target) - &home;
                let next = &y - &drop;
                if next == y {
                    return Err(EdsError::StructureViolation(
                        "bad-vertex branch makes no progress".into(),
                    ));
                }
                self.stats.bad_vertex_branches += 1;
                self.node(x0.clone(), next, Some(shrink))?;
            }
            return Ok(());
        }

        if heavy.is_empty() {
            return Err(EdsError::StructureViolation(
                "no candidate sees a sixteenth of B, so the final branch cannot progress".into(),
            ));
        }
        let heavy_set = VertexSet::from_vertices(g.n(), heavy.iter().copied());
        self.stats.final_branches += 1;
        self.node(
            x0.clone(),
            &y - &heavy_set,
            Some(Shrink {
                parent_b: b.len(),
                num: 1,
                den: 2,
                branch: "final branch",
            }),
        )?;
        for &v in &heavy {
            let mut x = x0.clone();
            x.insert(v);
            self.node(x, y.clone(), None)?;
        }
        Ok(())
    }
}

/// States of `Ω` covering every efficient dominating set of `G`: each such
/// set is consistent with at least one returned state.
pub fn enumerate_states(g: &Graph, omega: &VertexSet, cfg: &EdsConfig) -> Result<StateFamily, EdsError> {
    if !is_pmc(g, omega) {
        return Err(EdsError::NotAPmc(omega.clone()));
    }
    let mut e = Enumerator {
        view: BagView::new(g, omega),
        cfg,
        seen: HashSet::new(),
        states: Vec::new(),
        stats: EnumerationStats::default(),
    };
    let cap = cfg.root_layer_cap();
    let omega_list = e.view.omega_list.clone();
    let mut guesses = Vec::new();
    scattered_subsets(g, &omega_list, 0, &mut Vec::new(), cap, &mut guesses);
    for guess in guesses {
        let x = VertexSet::from_vertices(g.n(), guess);
        let y = &(&g.vertices() - &e.view.second_neighbourhood(&x)) - omega;
        e.node(x, y, None)?;
    }
    Ok(StateFamily {
        omega: omega.clone(),
        omega_list,
        components: e.view.components,
        states: e.states,
        stats: e.stats,
    })
}

/// Subsets of `pool` of size at most `cap` whose members are pairwise at
/// distance at least three.
fn scattered_subsets(
    g: &Graph,
    pool: &[usize],
    from: usize,
    current: &mut Vec<usize>,
    cap: usize,
    out: &mut Vec<Vec<usize>>,
) {
    out.push(current.clone());
    if current.len() == cap {
        return;
    }
    for i in from..pool.len() {
        let v = pool[i];
        let far = current
            .iter()
            .all(|&u| !g.has_edge(u, v) && g.neighbors(u).is_disjoint(g.neighbors(v)));
        if far {
            current.push(v);
            scattered_subsets(g, pool, i + 1, current, cap, out);
            current.pop();
        }
    }
}
