//! Induced paths and small induced patterns.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// Default cap on DFS extensions before a search gives up.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern search budget of {0} extensions exceeded")]
    BudgetExceeded(u64),
}

/// Vertices of an induced path, in path order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedPath {
    pub vertices: Vec<usize>,
}

impl InducedPath {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Checks distinctness, consecutive adjacency and the absence of chords.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let vs = &self.vertices;
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if vs[i] == vs[j] || g.has_edge(vs[i], vs[j]) != (j == i + 1) {
                    return false;
                }
            }
        }
        true
    }
}

struct PathSearch<'a> {
    g: &'a Graph,
    k: usize,
    budget: u64,
    used: u64,
    path: Vec<usize>,
}

impl PathSearch<'_> {
    /// `blocked` holds the path and the closed neighbourhoods of all path
    /// vertices except the last one.
    fn extend(&mut self, blocked: &VertexSet) -> Result<bool, PatternError> {
        if self.path.len() == self.k {
            return Ok(true);
        }
        let last = *self.path.last().unwrap();
        let candidates = self.g.neighbors(last) - blocked;
        if candidates.is_empty() {
            return Ok(false);
        }
        let next_blocked = blocked | &self.g.closed_neighborhood(last);
        for w in &candidates {
            self.used += 1;
            if self.used > self.budget {
                return Err(PatternError::BudgetExceeded(self.budget));
            }
            self.path.push(w);
            if self.extend(&next_blocked)? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }
}

/// First induced path on `k` vertices in DFS order (start vertex ascending,
/// extensions ascending), with the default budget.
pub fn find_induced_path(g: &Graph, k: usize) -> Result<Option<InducedPath>, PatternError> {
    find_induced_path_with_budget(g, k, DEFAULT_BUDGET)
}

pub fn find_induced_path_with_budget(g: &Graph, k: usize, budget: u64) -> Result<Option<InducedPath>, PatternError> {
    if k == 0 {
        return Ok(Some(InducedPath { vertices: vec![] }));
    }
    if k > g.n() {
        return Ok(None);
    }
    let mut search = PathSearch {
        g,
        k,
        budget,
        used: 0,
        path: Vec::with_capacity(k),
    };
    for start in 0..g.n() {
        search.path.clear();
        search.path.push(start);
        let blocked = VertexSet::singleton(g.n(), start);
        if search.extend(&blocked)? {
            return Ok(Some(InducedPath { vertices: search.path }));
        }
    }
    Ok(None)
}

pub fn is_pk_free(g: &Graph, k: usize) -> Result<bool, PatternError> {
    Ok(find_induced_path(g, k)?.is_none())
}

pub fn is_pk_free_with_budget(g: &Graph, k: usize, budget: u64) -> Result<bool, PatternError> {
    Ok(find_induced_path_with_budget(g, k, budget)?.is_none())
}

/// A small pattern graph `H` for induced-subgraph tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternGraph {
    graph: Graph,
}

impl PatternGraph {
    pub const MAX_VERTICES: usize = 8;

    pub fn new(graph: Graph) -> Option<Self> {
        (graph.n() <= Self::MAX_VERTICES).then_some(PatternGraph { graph })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn path(k: usize) -> Self {
        Self::new(Graph::path(k)).expect("path pattern too large")
    }

    /// `P5` (0-1-2-3-4) with a pendant vertex 5 on the middle vertex.
    pub fn e_graph() -> Self {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]).unwrap();
        PatternGraph { graph: g }
    }
}

/// True iff `H` embeds into `G` preserving both adjacency and non-adjacency.
pub fn contains_induced(g: &Graph, h: &PatternGraph) -> bool {
    let h = &h.graph;
    if h.n() == 0 {
        return true;
    }
    if h.n() > g.n() {
        return false;
    }
    // Place each pattern vertex after one of its neighbours where possible.
    let mut order = Vec::with_capacity(h.n());
    let mut placed = h.empty_set();
    while order.len() < h.n() {
        let next = (0..h.n())
            .filter(|&v| !placed.contains(v))
            .max_by_key(|&v| (h.neighbors(v).intersection_len(&placed), std::cmp::Reverse(v)))
            .unwrap();
        placed.insert(next);
        order.push(next);
    }
    let mut image = vec![usize::MAX; h.n()];
    let mut used = g.empty_set();
    embed(g, h, &order, 0, &mut image, &mut used)
}

fn embed(g: &Graph, h: &Graph, order: &[usize], depth: usize, image: &mut [usize], used: &mut VertexSet) -> bool {
    if depth == order.len() {
        return true;
    }
    let p = order[depth];
    let anchor = order[..depth].iter().find(|&&q| h.has_edge(p, q));
    let candidates = match anchor {
        Some(&q) => g.neighbors(image[q]) - used,
        None => &g.vertices() - used,
    };
    'cand: for c in &candidates {
        for &q in &order[..depth] {
            if h.has_edge(p, q) != g.has_edge(c, image[q]) {
                continue 'cand;
            }
        }
        image[p] = c;
        used.insert(c);
        if embed(g, h, order, depth + 1, image, used) {
            return true;
        }
        used.remove(c);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::oracle;
    use crate::testutil::arb_graph;
    use proptest::prelude::*;

    #[test]
    fn path_graph_is_its_own_witness() {
        let p7 = Graph::path(7);
        let w = find_induced_path(&p7, 7).unwrap().unwrap();
        assert_eq!(w.len(), 7);
        assert!(w.is_valid_in(&p7));
    }

    #[test]
    fn six_cycle_has_no_induced_p6() {
        let c6 = Graph::cycle(6);
        assert!(find_induced_path(&c6, 6).unwrap().is_none());
        assert!(find_induced_path(&c6, 5).unwrap().is_some());
    }

    #[test]
    fn nuke_counterexample_has_p6_but_no_p7() {
        let ce = gen::counterexample_nuke(4);
        let p6 = find_induced_path(&ce.graph, 6).unwrap().unwrap();
        assert!(p6.is_valid_in(&ce.graph));
        assert!(find_induced_path(&ce.graph, 7).unwrap().is_none());
    }

    #[test]
    fn pk_free_examples() {
        assert!(is_pk_free(&Graph::complete(5), 3).unwrap());
        assert!(!is_pk_free(&Graph::path(6), 6).unwrap());
        let cograph = gen::cograph(12, 3);
        assert!(is_pk_free(&cograph, 4).unwrap());
        assert!(is_pk_free(&Graph::empty(3), 2).unwrap());
        assert!(!is_pk_free(&Graph::empty(3), 1).unwrap());
    }

    #[test]
    fn budget_is_reported_not_guessed() {
        let g = Graph::path(30);
        assert_eq!(
            find_induced_path_with_budget(&g, 30, 5),
            Err(PatternError::BudgetExceeded(5))
        );
    }

    #[test]
    fn e_graph_examples() {
        let e = PatternGraph::e_graph();
        assert!(!contains_induced(&Graph::star(5), &e));
        assert!(contains_induced(e.graph(), &e));
        let ce = gen::counterexample_separator(3);
        assert!(!contains_induced(&ce.graph, &e));
        // a longer spider does contain it
        let spider = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]).unwrap();
        assert!(contains_induced(&spider, &e));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(600))]

        #[test]
        fn agrees_with_subset_oracle(g in arb_graph(10), k in 1usize..=7) {
            let fast = find_induced_path(&g, k).unwrap();
            let slow = oracle::induced_path_bruteforce(&g, k, &oracle::OracleLimits::default()).unwrap();
            prop_assert_eq!(fast.is_some(), slow);
            if let Some(w) = fast {
                prop_assert_eq!(w.len(), k);
                prop_assert!(w.is_valid_in(&g));
            }
        }

        #[test]
        fn witnesses_are_prefix_closed(g in arb_graph(10), k in 1usize..=7) {
            if let Some(w) = find_induced_path(&g, k).unwrap() {
                for j in 1..=k {
                    let prefix = InducedPath { vertices: w.vertices[..j].to_vec() };
                    prop_assert!(prefix.is_valid_in(&g));
                    prop_assert!(find_induced_path(&g, j).unwrap().is_some());
                }
            }
        }

        #[test]
        fn pattern_embedding_matches_path_search(g in arb_graph(10), k in 1usize..=6) {
            prop_assert_eq!(
                contains_induced(&g, &PatternGraph::path(k)),
                !is_pk_free(&g, k).unwrap()
            );
        }
    }
}
