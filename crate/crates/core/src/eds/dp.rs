//! Bottom-up dynamic program over a rooted clique tree.

use log::debug;

use super::{enumerate_states, EdsConfig, EdsError, EdsMode, State, StateFamily, StateValue};
use crate::chordal::{triangulated_clique_tree, RootedCliqueTree};
use crate::graph::{Graph, VertexSet, WeightedGraph};
use crate::mwis::Solution;
use crate::oracle::{eds_bruteforce, OracleLimits};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdsStats {
    pub components: usize,
    pub bags: usize,
    /// `|S_t|` for every bag, in processing order.
    pub state_counts: Vec<usize>,
    pub max_states: usize,
    pub branch_nodes: u64,
    pub shrink_warnings: u64,
    /// Components solved by exhaustive search after a structure violation.
    pub fallbacks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdsOutcome {
    /// `None` when the graph has no efficient dominating set.
    pub solution: Option<Solution>,
    pub stats: EdsStats,
}

/// `Y ⊆ γ(t)`, closed neighbourhoods of members pairwise disjoint, and
/// `N[Y] ⊇ γ(t) \ β(t)`.
pub fn is_partial_solution(g: &Graph, tree: &RootedCliqueTree, t: usize, y: &VertexSet) -> bool {
    let cone = &tree.cones[t];
    if !y.is_subset(cone) {
        return false;
    }
    if (0..g.n()).any(|w| g.closed_neighborhood(w).intersection_len(y) > 1) {
        return false;
    }
    (cone - &tree.bags[t]).is_subset(&g.closed_neighborhood_of_set(y))
}

/// Whether some member of `y` adjacent to `v` lies in the region of `value`.
fn dominated_within(g: &Graph, fam: &StateFamily, v: usize, value: StateValue, y: &VertexSet) -> bool {
    match value {
        StateValue::Bot => false,
        other => (g.neighbors(v) & y).intersects(&fam.region(other)),
    }
}

/// A partial solution consistent with state `f` at node `t`.
fn consistent(g: &Graph, tree: &RootedCliqueTree, t: usize, fam: &StateFamily, f: &State, y: &VertexSet) -> bool {
    if (y & &tree.bags[t]) != fam.bottom(f) {
        return false;
    }
    let dominated = g.open_neighborhood(y);
    let cone = &tree.cones[t];
    fam.omega_list.iter().zip(&f.values).all(|(&v, &val)| {
        if y.contains(v) {
            true
        } else if dominated.contains(v) {
            dominated_within(g, fam, v, val, y)
        } else {
            match val {
                StateValue::Component(c) => fam.components[c].is_disjoint(cone),
                _ => false,
            }
        }
    })
}

/// The three clauses relating a child's table entry `y_child` to the
/// parent's state `f`.
pub fn partially_consistent(
    g: &Graph,
    tree: &RootedCliqueTree,
    parent: usize,
    child: usize,
    fam: &StateFamily,
    f: &State,
    y_child: &VertexSet,
) -> bool {
    let shared = &tree.bags[parent] & &tree.bags[child];
    if (y_child & &shared) != (&fam.bottom(f) & &tree.bags[child]) {
        return false;
    }
    let dominated = g.open_neighborhood(y_child);
    let child_cone = &tree.cones[child];
    fam.omega_list.iter().zip(&f.values).all(|(&v, &val)| {
        if dominated.contains(v) {
            dominated_within(g, fam, v, val, y_child)
        } else if y_child.contains(v) {
            true
        } else {
            match val {
                StateValue::Component(c) => fam.components[c].is_disjoint(child_cone),
                _ => true,
            }
        }
    })
}

type Entry = Option<(i64, VertexSet)>;

/// Solve one connected graph; `Ok(None)` when it has no efficient dominating set.
fn solve_connected(gw: &WeightedGraph, cfg: &EdsConfig, stats: &mut EdsStats) -> Result<Option<Solution>, EdsError> {
    let g = &gw.graph;
    let (_, ct) = triangulated_clique_tree(g);
    let tree = ct.rooted(0);
    let mut families = Vec::with_capacity(tree.len());
    for bag in &tree.bags {
        let fam = enumerate_states(g, bag, cfg)?;
        stats.bags += 1;
        stats.state_counts.push(fam.len());
        stats.max_states = stats.max_states.max(fam.len());
        stats.branch_nodes += fam.stats.nodes;
        stats.shrink_warnings += fam.stats.shrink_warnings;
        families.push(fam);
    }
    let mut tables: Vec<Vec<Entry>> = vec![Vec::new(); tree.len()];
    for &t in &tree.postorder {
        let fam = &families[t];
        let mut table = Vec::with_capacity(fam.len());
        for f in &fam.states {
            let mut y = fam.bottom(f);
            let mut alive = true;
            for &c in &tree.children[t] {
                let forgotten = &tree.cones[c] - &tree.bags[t];
                let best = tables[c]
                    .iter()
                    .flatten()
                    .filter(|(_, yc)| {
                        forgotten.is_subset(&g.closed_neighborhood_of_set(yc))
                            && partially_consistent(g, &tree, t, c, fam, f, yc)
                    })
                    .fold(None::<&(i64, VertexSet)>, |acc, e| match acc {
                        Some(a) if a.0 >= e.0 => Some(a),
                        _ => Some(e),
                    });
                match best {
                    Some((_, yc)) => y.union_with(yc),
                    None => {
                        alive = false;
                        break;
                    }
                }
            }
            let entry = (alive && is_partial_solution(g, &tree, t, &y) && consistent(g, &tree, t, fam, f, &y))
                .then(|| (gw.weight_of(&y), y));
            table.push(entry);
        }
        tables[t] = table;
    }
    let best = tables[tree.root]
        .iter()
        .flatten()
        .filter(|(_, y)| g.is_efficient_dominating(y))
        .fold(None::<&(i64, VertexSet)>, |acc, e| match acc {
            Some(a) if a.0 >= e.0 => Some(a),
            _ => Some(e),
        });
    Ok(best.map(|(weight, chosen)| Solution {
        weight: *weight,
        chosen: chosen.clone(),
    }))
}

/// Maximum weight efficient dominating set, solved per connected component.
pub fn solve_eds(gw: &WeightedGraph, cfg: &EdsConfig) -> Result<EdsOutcome, EdsError> {
    let g = &gw.graph;
    let mut stats = EdsStats::default();
    let mut total = Solution {
        weight: 0,
        chosen: VertexSet::new(g.n()),
    };
    for comp in g.connected_components(&g.vertices()) {
        stats.components += 1;
        let (part, map) = gw.induced_subgraph(&comp);
        let answer = match solve_connected(&part, cfg, &mut stats) {
            Ok(a) => a,
            Err(EdsError::StructureViolation(why)) => match cfg.mode {
                EdsMode::Fallback { cap } if part.n() <= cap => {
                    debug!("falling back to exhaustive search on {} vertices: {why}", part.n());
                    stats.fallbacks += 1;
                    let limits = OracleLimits {
                        eds: cap,
                        ..OracleLimits::default()
                    };
                    eds_bruteforce(&part, &limits)
                        .map_err(|e| EdsError::StructureViolation(format!("{why}; fallback failed: {e}")))?
                        .map(|o| o.best)
                }
                _ => return Err(EdsError::StructureViolation(why)),
            },
            Err(e) => return Err(e),
        };
        match answer {
            Some(sol) => {
                total.weight += sol.weight;
                total.chosen.union_with(&map.lift(&sol.chosen));
            }
            None => {
                return Ok(EdsOutcome { solution: None, stats });
            }
        }
    }
    if !g.is_efficient_dominating(&total.chosen) {
        return Err(EdsError::StructureViolation(
            "assembled set is not an efficient dominating set".into(),
        ));
    }
    Ok(EdsOutcome {
        solution: Some(total),
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::clique_tree;
    use crate::chordal::FillEdges;
    use crate::gen;
    use crate::oracle::eds_bruteforce;
    use proptest::prelude::*;

    fn solve(gw: &WeightedGraph) -> Option<Solution> {
        solve_eds(gw, &EdsConfig::default()).unwrap().solution
    }

    #[test]
    fn examples() {
        let p4 = WeightedGraph::new(Graph::path(4), vec![5, 1, 1, 5]).unwrap();
        let sol = solve(&p4).unwrap();
        assert_eq!(sol.weight, 10);
        assert_eq!(sol.chosen, VertexSet::from_vertices(4, [0, 3]));
        assert_eq!(
            solve(&WeightedGraph::new(Graph::cycle(4), vec![3, -1, 4, 2]).unwrap()),
            None
        );
        let k3 = WeightedGraph::new(Graph::complete(3), vec![-2, -5, 1]).unwrap();
        let sol = solve(&k3).unwrap();
        assert_eq!((sol.weight, sol.chosen), (1, VertexSet::singleton(3, 2)));
        let empty = solve(&WeightedGraph::unit(Graph::empty(0))).unwrap();
        assert_eq!(empty.weight, 0);
        let single = solve(&WeightedGraph::new(Graph::empty(1), vec![-3]).unwrap()).unwrap();
        assert_eq!(single.weight, -3);
    }

    #[test]
    fn partial_solution_examples() {
        let p4 = Graph::path(4);
        let t = clique_tree(&p4, &FillEdges::default()).unwrap();
        let root = t.bags.iter().position(|b| b.to_vec() == vec![1, 2]).unwrap();
        let rooted = t.rooted(root);
        let leaf = rooted.postorder[0];
        assert!(rooted.children[leaf].is_empty());
        assert!(is_partial_solution(&p4, &rooted, leaf, &VertexSet::new(4)));
        assert!(!is_partial_solution(
            &p4,
            &rooted,
            root,
            &VertexSet::from_vertices(4, [1, 2])
        ));

        let child = rooted.bags.iter().position(|b| b.to_vec() == vec![0, 1]).unwrap();
        let fam = enumerate_states(&p4, &rooted.bags[root], &EdsConfig::default()).unwrap();
        let f = State {
            values: vec![StateValue::Component(0), StateValue::Component(1)],
        };
        assert!(partially_consistent(
            &p4,
            &rooted,
            root,
            child,
            &fam,
            &f,
            &VertexSet::singleton(4, 0)
        ));
        let wrong = State {
            values: vec![StateValue::Omega, StateValue::Component(1)],
        };
        assert!(!partially_consistent(
            &p4,
            &rooted,
            root,
            child,
            &fam,
            &wrong,
            &VertexSet::singleton(4, 0)
        ));
        let g = State {
            values: vec![StateValue::Component(1), StateValue::Component(1)],
        };
        assert!(partially_consistent(
            &p4,
            &rooted,
            root,
            child,
            &fam,
            &g,
            &VertexSet::new(4)
        ));
        assert!(!partially_consistent(
            &p4,
            &rooted,
            root,
            child,
            &fam,
            &f,
            &VertexSet::new(4)
        ));
        assert!(!partially_consistent(
            &p4,
            &rooted,
            root,
            child,
            &fam,
            &f,
            &VertexSet::singleton(4, 1)
        ));
    }

    #[test]
    fn disconnected_inputs_combine_per_component() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (4, 5), (5, 6)]).unwrap();
        let gw = WeightedGraph::new(g, vec![5, 1, 1, 5, 1, 9, 1]).unwrap();
        assert_eq!(solve(&gw).unwrap().weight, 19);
        let with_c4 = Graph::from_edges(6, [(0, 1), (2, 3), (3, 4), (4, 5), (5, 2)]).unwrap();
        assert_eq!(solve(&WeightedGraph::unit(with_c4)), None);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(250))]

        #[test]
        fn matches_oracle_on_p6_free_graphs(seed in any::<u64>(), n in 1usize..=14) {
            let g = gen::random_pkfree(n, 0.3, 6, seed, n).unwrap();
            let gw = gen::assign_weights(&g, -50, 50, seed ^ 7).unwrap();
            let expected = eds_bruteforce(&gw, &OracleLimits::default()).unwrap();
            let got = solve_eds(&gw, &EdsConfig::default()).unwrap().solution;
            prop_assert_eq!(got.as_ref().map(|s| s.weight), expected.as_ref().map(|e| e.best.weight));
            if let Some(s) = got {
                prop_assert!(g.is_efficient_dominating(&s.chosen));
                prop_assert_eq!(gw.weight_of(&s.chosen), s.weight);
                prop_assert_eq!(s.chosen.len(), expected.unwrap().cardinalities[0]);
            }
        }

        #[test]
        fn fallback_mode_is_total(g in crate::testutil::arb_graph(10), seed in any::<u64>()) {
            let gw = gen::assign_weights(&g, -5, 5, seed).unwrap();
            let expected = eds_bruteforce(&gw, &OracleLimits::default()).unwrap();
            let got = solve_eds(&gw, &EdsConfig::fallback()).unwrap().solution;
            prop_assert_eq!(got.map(|s| s.weight), expected.map(|e| e.best.weight));
        }

        #[test]
        fn blowups_match_oracle(seed in any::<u64>()) {
            let g = gen::p6_free_blowup(7, 3, seed);
            prop_assume!(g.n() <= 18);
            let gw = gen::assign_weights(&g, -20, 20, seed).unwrap();
            let expected = eds_bruteforce(&gw, &OracleLimits::default()).unwrap();
            let got = solve_eds(&gw, &EdsConfig::default()).unwrap().solution;
            prop_assert_eq!(got.map(|s| s.weight), expected.map(|e| e.best.weight));
        }
    }
}
