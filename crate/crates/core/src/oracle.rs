//! Brute-force reference implementations.
//!
//! Everything here works on plain `u64` adjacency masks and exhaustive
//! enumeration, sharing no search code with the solvers it checks.

use thiserror::Error;

use crate::graph::{Graph, VertexSet, WeightedGraph};
use crate::mwis::Solution;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} oracle limited to {limit} vertices, got {n}")]
    LimitExceeded { what: &'static str, n: usize, limit: usize },
    #[error("negative weight on vertex {0}")]
    NegativeWeight(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub mwis: usize,
    pub eds: usize,
    pub separators: usize,
    pub pmcs: usize,
    pub induced_path: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            mwis: 30,
            eds: 25,
            separators: 16,
            pmcs: 16,
            induced_path: 12,
        }
    }
}

fn check(what: &'static str, n: usize, limit: usize) -> Result<(), OracleError> {
    if n > limit || n > 63 {
        Err(OracleError::LimitExceeded { what, n, limit })
    } else {
        Ok(())
    }
}

fn masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, u| m | 1 << u))
        .collect()
}

fn to_set(n: usize, mask: u64) -> VertexSet {
    VertexSet::from_vertices(n, (0..n).filter(|&i| mask >> i & 1 == 1))
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask >> i & 1 == 1)
}

fn all_vertices(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Vertices reachable from `start` inside `within`.
fn reach(adj: &[u64], start: u64, within: u64) -> u64 {
    let mut seen = start & within;
    loop {
        let grown = bits(seen).fold(seen, |m, v| m | (adj[v] & within));
        if grown == seen {
            return seen;
        }
        seen = grown;
    }
}

fn components(adj: &[u64], within: u64) -> Vec<u64> {
    let mut left = within;
    let mut out = Vec::new();
    while left != 0 {
        let c = reach(adj, left & left.wrapping_neg(), within);
        out.push(c);
        left &= !c;
    }
    out
}

fn neighbourhood(adj: &[u64], set: u64) -> u64 {
    bits(set).fold(0, |m, v| m | adj[v]) & !set
}

fn weight_of(w: &[i64], mask: u64) -> i64 {
    bits(mask).map(|v| w[v]).sum()
}

/// Include/exclude branching on a maximum-degree vertex of the remaining graph.
pub fn mwis_bruteforce(gw: &WeightedGraph, limits: &OracleLimits) -> Result<Solution, OracleError> {
    let n = gw.n();
    check("mwis", n, limits.mwis)?;
    if let Some(v) = (0..n).find(|&v| gw.weights[v] < 0) {
        return Err(OracleError::NegativeWeight(v));
    }
    let adj = masks(&gw.graph);
    fn go(adj: &[u64], w: &[i64], left: u64) -> (i64, u64) {
        if left == 0 {
            return (0, 0);
        }
        let v = bits(left)
            .max_by_key(|&v| ((adj[v] & left).count_ones(), std::cmp::Reverse(v)))
            .unwrap();
        if adj[v] & left == 0 {
            // all remaining vertices are isolated
            return (weight_of(w, left), left);
        }
        let (out_w, out_s) = go(adj, w, left & !(1 << v));
        let (in_w, in_s) = go(adj, w, left & !(1 << v) & !adj[v]);
        if in_w + w[v] > out_w {
            (in_w + w[v], in_s | 1 << v)
        } else {
            (out_w, out_s)
        }
    }
    let (weight, chosen) = go(&adj, &gw.weights, all_vertices(n));
    Ok(Solution {
        weight,
        chosen: to_set(n, chosen),
    })
}

/// Plain `2^n` scan, used to validate [`mwis_bruteforce`] itself.
pub fn mwis_by_subsets(gw: &WeightedGraph) -> i64 {
    let n = gw.n();
    assert!(n <= 20);
    let adj = masks(&gw.graph);
    (0..1u64 << n)
        .filter(|&s| bits(s).all(|v| adj[v] & s == 0))
        .map(|s| weight_of(&gw.weights, s))
        .max()
        .unwrap_or(0)
}

/// Outcome of exhaustive efficient-domination search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdsOracle {
    pub best: Solution,
    pub solution_count: u64,
    /// Distinct cardinalities seen across all efficient dominating sets.
    pub cardinalities: Vec<usize>,
}

/// All efficient dominating sets by backtracking over vertices in id order.
pub fn eds_bruteforce(gw: &WeightedGraph, limits: &OracleLimits) -> Result<Option<EdsOracle>, OracleError> {
    eds_search(gw, limits, false).map(|(best, _)| best)
}

/// Every efficient dominating set, in the order the backtracking finds them.
pub fn eds_all_bruteforce(g: &Graph, limits: &OracleLimits) -> Result<Vec<VertexSet>, OracleError> {
    let gw = WeightedGraph::unit(g.clone());
    eds_search(&gw, limits, true).map(|(_, all)| all)
}

fn eds_search(
    gw: &WeightedGraph,
    limits: &OracleLimits,
    keep_all: bool,
) -> Result<(Option<EdsOracle>, Vec<VertexSet>), OracleError> {
    let n = gw.n();
    check("eds", n, limits.eds)?;
    let closed: Vec<u64> = masks(&gw.graph).iter().enumerate().map(|(v, m)| m | 1 << v).collect();
    // last[u] = largest index in N[u]; once we pass it, u must be dominated
    let last: Vec<usize> = closed.iter().map(|m| 63 - m.leading_zeros() as usize).collect();

    struct Search<'a> {
        n: usize,
        closed: &'a [u64],
        last: &'a [usize],
        w: &'a [i64],
        best: Option<(i64, u64)>,
        count: u64,
        cards: Vec<usize>,
        keep_all: bool,
        all: Vec<u64>,
    }
    impl Search<'_> {
        fn go(&mut self, i: usize, chosen: u64, dominated: u64) {
            // every vertex whose closed neighbourhood is fully decided must be dominated
            if i > 0 {
                let done = i - 1;
                for u in 0..self.n {
                    if self.last[u] == done && dominated >> u & 1 == 0 {
                        return;
                    }
                }
            }
            if i == self.n {
                self.count += 1;
                if self.keep_all {
                    self.all.push(chosen);
                }
                let card = chosen.count_ones() as usize;
                if !self.cards.contains(&card) {
                    self.cards.push(card);
                }
                let wt = weight_of(self.w, chosen);
                if self.best.is_none_or(|(bw, _)| wt > bw) {
                    self.best = Some((wt, chosen));
                }
                return;
            }
            if self.closed[i] & dominated == 0 {
                self.go(i + 1, chosen | 1 << i, dominated | self.closed[i]);
            }
            self.go(i + 1, chosen, dominated);
        }
    }
    let mut s = Search {
        n,
        closed: &closed,
        last: &last,
        w: &gw.weights,
        best: None,
        count: 0,
        cards: Vec::new(),
        keep_all,
        all: Vec::new(),
    };
    if n == 0 {
        let best = EdsOracle {
            best: Solution {
                weight: 0,
                chosen: VertexSet::new(0),
            },
            solution_count: 1,
            cardinalities: vec![0],
        };
        return Ok((Some(best), vec![VertexSet::new(0)]));
    }
    s.go(0, 0, 0);
    s.cards.sort_unstable();
    let all = s.all.iter().map(|&m| to_set(n, m)).collect();
    let best = s.best.map(|(weight, chosen)| EdsOracle {
        best: Solution {
            weight,
            chosen: to_set(n, chosen),
        },
        solution_count: s.count,
        cardinalities: s.cards,
    });
    Ok((best, all))
}

/// Sets `S` that are an inclusion-minimal `s`-`t` separator for some pair:
/// `s` and `t` are disconnected by `S`, and putting back any single vertex of
/// `S` reconnects them.
pub fn minimal_separators_bruteforce(g: &Graph, limits: &OracleLimits) -> Result<Vec<VertexSet>, OracleError> {
    let n = g.n();
    check("separator", n, limits.separators)?;
    let adj = masks(g);
    let full = all_vertices(n);
    let mut out = Vec::new();
    for s in 0..=full {
        let rest = full & !s;
        let comps = components(&adj, rest);
        let reps: Vec<u64> = comps.iter().map(|c| c & c.wrapping_neg()).collect();
        let separates_minimally = (0..reps.len()).any(|i| {
            (i + 1..reps.len()).any(|j| {
                bits(s).all(|x| {
                    let opened = rest | 1 << x;
                    reach(&adj, reps[i], opened) & reps[j] != 0
                })
            })
        });
        if separates_minimally {
            out.push(to_set(n, s));
        }
    }
    Ok(out)
}

/// Non-empty sets with no component neighbourhood equal to the whole set
/// and every internal non-edge covered by some component neighbourhood.
pub fn pmcs_bruteforce(g: &Graph, limits: &OracleLimits) -> Result<Vec<VertexSet>, OracleError> {
    let n = g.n();
    check("pmc", n, limits.pmcs)?;
    let adj = masks(g);
    let full = all_vertices(n);
    let mut out = Vec::new();
    for omega in 1..=full {
        let nbrs: Vec<u64> = components(&adj, full & !omega)
            .into_iter()
            .map(|c| neighbourhood(&adj, c))
            .collect();
        if nbrs.contains(&omega) {
            continue;
        }
        let covered = bits(omega).all(|x| {
            bits(omega & !adj[x] & !(1 << x)).all(|y| nbrs.iter().any(|&m| m >> x & 1 == 1 && m >> y & 1 == 1))
        });
        if covered {
            out.push(to_set(n, omega));
        }
    }
    Ok(out)
}

/// Scans every `k`-subset for one inducing a path (connected, `k - 1`
/// edges, maximum degree two).
pub fn induced_path_bruteforce(g: &Graph, k: usize, limits: &OracleLimits) -> Result<bool, OracleError> {
    let n = g.n();
    check("induced path", n, limits.induced_path)?;
    if k == 0 {
        return Ok(true);
    }
    if k > n {
        return Ok(false);
    }
    let adj = masks(g);
    for s in 0..=all_vertices(n) {
        if s.count_ones() as usize != k {
            continue;
        }
        let degrees: Vec<u32> = bits(s).map(|v| (adj[v] & s).count_ones()).collect();
        let edges: u32 = degrees.iter().sum::<u32>() / 2;
        if edges as usize == k - 1 && degrees.iter().all(|&d| d <= 2) && reach(&adj, s & s.wrapping_neg(), s) == s {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::arb_graph;
    use proptest::prelude::*;

    fn lim() -> OracleLimits {
        OracleLimits::default()
    }

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied())
    }

    #[test]
    fn mwis_examples() {
        let p4 = WeightedGraph::new(Graph::path(4), vec![1, 3, 3, 1]).unwrap();
        assert_eq!(mwis_bruteforce(&p4, &lim()).unwrap().weight, 4);
        assert_eq!(mwis_by_subsets(&p4), 4);
        let k5 = WeightedGraph::unit(Graph::complete(5));
        assert_eq!(mwis_bruteforce(&k5, &lim()).unwrap().weight, 1);
        let empty = WeightedGraph::unit(Graph::empty(0));
        assert_eq!(mwis_bruteforce(&empty, &lim()).unwrap().weight, 0);
        let big = WeightedGraph::unit(Graph::empty(31));
        assert!(matches!(
            mwis_bruteforce(&big, &lim()),
            Err(OracleError::LimitExceeded { .. })
        ));
        let neg = WeightedGraph::new(Graph::path(2), vec![1, -1]).unwrap();
        assert_eq!(mwis_bruteforce(&neg, &lim()), Err(OracleError::NegativeWeight(1)));
    }

    #[test]
    fn eds_examples() {
        let p4 = WeightedGraph::unit(Graph::path(4));
        let r = eds_bruteforce(&p4, &lim()).unwrap().unwrap();
        assert_eq!(r.best.chosen, set(4, &[0, 3]));
        assert_eq!(r.cardinalities, vec![2]);
        assert_eq!(
            eds_bruteforce(&WeightedGraph::unit(Graph::cycle(4)), &lim()).unwrap(),
            None
        );
        let single = WeightedGraph::new(Graph::empty(1), vec![-3]).unwrap();
        assert_eq!(eds_bruteforce(&single, &lim()).unwrap().unwrap().best.weight, -3);
    }

    #[test]
    fn all_eds_examples() {
        let mut c6 = eds_all_bruteforce(&Graph::cycle(6), &lim()).unwrap();
        c6.sort();
        assert_eq!(c6, vec![set(6, &[0, 3]), set(6, &[1, 4]), set(6, &[2, 5])]);
        assert_eq!(
            eds_all_bruteforce(&Graph::path(4), &lim()).unwrap(),
            vec![set(4, &[0, 3])]
        );
        assert!(eds_all_bruteforce(&Graph::cycle(4), &lim()).unwrap().is_empty());
    }

    #[test]
    fn separator_examples() {
        assert_eq!(
            minimal_separators_bruteforce(&Graph::path(4), &lim()).unwrap(),
            vec![set(4, &[1]), set(4, &[2])]
        );
        assert_eq!(
            minimal_separators_bruteforce(&Graph::cycle(4), &lim()).unwrap(),
            vec![set(4, &[0, 2]), set(4, &[1, 3])]
        );
        assert!(minimal_separators_bruteforce(&Graph::complete(5), &lim())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn pmc_examples() {
        assert_eq!(
            pmcs_bruteforce(&Graph::path(4), &lim()).unwrap(),
            vec![set(4, &[0, 1]), set(4, &[1, 2]), set(4, &[2, 3])]
        );
        assert_eq!(
            pmcs_bruteforce(&Graph::complete(3), &lim()).unwrap(),
            vec![set(3, &[0, 1, 2])]
        );
        let mut c4 = pmcs_bruteforce(&Graph::cycle(4), &lim()).unwrap();
        c4.sort_by_key(VertexSet::to_vec);
        assert_eq!(
            c4,
            vec![
                set(4, &[0, 1, 2]),
                set(4, &[0, 1, 3]),
                set(4, &[0, 2, 3]),
                set(4, &[1, 2, 3])
            ]
        );
    }

    #[test]
    fn induced_path_examples() {
        assert!(!induced_path_bruteforce(&Graph::cycle(6), 6, &lim()).unwrap());
        assert!(induced_path_bruteforce(&Graph::path(6), 6, &lim()).unwrap());
        assert!(!induced_path_bruteforce(&Graph::complete(4), 3, &lim()).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn mwis_branching_matches_subset_scan(g in arb_graph(12), seed in any::<u64>()) {
            let weights: Vec<i64> = (0..g.n()).map(|i| ((seed >> (i % 60)) & 7) as i64).collect();
            let gw = WeightedGraph::new(g, weights).unwrap();
            let sol = mwis_bruteforce(&gw, &lim()).unwrap();
            prop_assert_eq!(sol.weight, mwis_by_subsets(&gw));
            prop_assert!(gw.graph.is_independent(&sol.chosen));
        }

        #[test]
        fn efficient_dominating_sets_share_a_cardinality(g in arb_graph(12)) {
            let gw = WeightedGraph::unit(g);
            if let Some(r) = eds_bruteforce(&gw, &lim()).unwrap() {
                prop_assert_eq!(r.cardinalities.len(), 1);
                prop_assert!(gw.graph.is_efficient_dominating(&r.best.chosen));
            }
        }

        #[test]
        fn pmc_component_neighbourhoods_are_separators(g in arb_graph(8)) {
            let seps = minimal_separators_bruteforce(&g, &lim()).unwrap();
            for omega in pmcs_bruteforce(&g, &lim()).unwrap() {
                for c in g.connected_components(&(&g.vertices() - &omega)) {
                    prop_assert!(seps.contains(&g.open_neighborhood(&c)));
                }
            }
        }
    }
}
