//! Dense bitset graphs.
//!
//! Every vertex set is a fixed-width bit vector sized to its host graph, so
//! neighbourhood queries such as `N(v) ∩ Y` are a handful of word operations.
//! Algorithms work on the host graph together with an "alive" [`VertexSet`]
//! instead of materialising induced subgraphs at every step.

use std::collections::VecDeque;
use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Sub, SubAssign};

use thiserror::Error;

const WORD: usize = 64;

/// A set of vertex ids drawn from `0..capacity`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    words: Vec<u64>,
    capacity: usize,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet {
            words: vec![0; capacity.div_ceil(WORD)],
            capacity,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::new(capacity);
        for w in s.words.iter_mut() {
            *w = !0;
        }
        s.trim();
        s
    }

    pub fn singleton(capacity: usize, v: usize) -> Self {
        let mut s = Self::new(capacity);
        s.insert(v);
        s
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(capacity: usize, vertices: I) -> Self {
        let mut s = Self::new(capacity);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.capacity % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Size of the id universe (the host graph's vertex count).
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.capacity && self.words[v / WORD] & (1 << (v % WORD)) != 0
    }

    /// Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(
            v < self.capacity,
            "vertex {v} outside universe of size {}",
            self.capacity
        );
        let (i, bit) = (v / WORD, 1u64 << (v % WORD));
        let fresh = self.words[i] & bit == 0;
        self.words[i] |= bit;
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.capacity {
            return false;
        }
        let (i, bit) = (v / WORD, 1u64 << (v % WORD));
        let present = self.words[i] & bit != 0;
        self.words[i] &= !bit;
        present
    }

    pub fn clear(&mut self) {
        for w in self.words.iter_mut() {
            *w = 0;
        }
    }

    /// Smallest member.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn check_universe(&self, other: &VertexSet) {
        debug_assert_eq!(self.capacity, other.capacity, "vertex sets over different universes");
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.check_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        !self.is_disjoint(other)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl BitOr for &VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: &VertexSet) -> VertexSet {
        self.union(rhs)
    }
}

impl BitAnd for &VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: &VertexSet) -> VertexSet {
        self.intersection(rhs)
    }
}

impl Sub for &VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: &VertexSet) -> VertexSet {
        self.difference(rhs)
    }
}

impl BitOrAssign<&VertexSet> for VertexSet {
    fn bitor_assign(&mut self, rhs: &VertexSet) {
        self.union_with(rhs)
    }
}

impl BitAndAssign<&VertexSet> for VertexSet {
    fn bitand_assign(&mut self, rhs: &VertexSet) {
        self.intersect_with(rhs)
    }
}

impl SubAssign<&VertexSet> for VertexSet {
    fn sub_assign(&mut self, rhs: &VertexSet) {
        self.difference_with(rhs)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![VertexSet::new(n); n],
        }
    }

    /// Builds a graph, rejecting self-loops, repeated edges and bad ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { v: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.connect(u, v);
        }
        Ok(g)
    }

    fn connect(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    /// `self` plus the given extra edges; edges already present are ignored.
    pub fn with_edges<I>(&self, extra: I) -> Graph
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = self.clone();
        for (u, v) in extra {
            assert!(u != v && u < g.n() && v < g.n(), "invalid extra edge {u}-{v}");
            g.connect(u, v);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    /// `K_{1,leaves}` with the centre at vertex 0.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.n())
    }

    /// `N(A)`: vertices outside `A` with a neighbour in `A`.
    pub fn open_neighborhood(&self, a: &VertexSet) -> VertexSet {
        let mut out = self.empty_set();
        for v in a {
            out.union_with(&self.adj[v]);
        }
        out.difference_with(a);
        out
    }

    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut out = self.adj[v].clone();
        out.insert(v);
        out
    }

    /// `N[A]`.
    pub fn closed_neighborhood_of_set(&self, a: &VertexSet) -> VertexSet {
        let mut out = a.clone();
        for v in a {
            out.union_with(&self.adj[v]);
        }
        out
    }

    /// All vertices within distance two of `v`, including `v`.
    pub fn second_closed_neighborhood(&self, v: usize) -> VertexSet {
        let first = self.closed_neighborhood(v);
        self.closed_neighborhood_of_set(&first)
    }

    /// Components of `G[within]`, ordered by smallest member.
    pub fn connected_components(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut rest = within.clone();
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let comp = self.component_of(start, &rest);
            rest.difference_with(&comp);
            out.push(comp);
        }
        out
    }

    /// The component of `G[within]` containing `start` (which must lie in `within`).
    pub fn component_of(&self, start: usize, within: &VertexSet) -> VertexSet {
        let mut comp = VertexSet::singleton(self.n(), start);
        let mut frontier = comp.clone();
        while !frontier.is_empty() {
            let mut next = self.empty_set();
            for v in &frontier {
                next.union_with(&self.adj[v]);
            }
            next.intersect_with(within);
            next.difference_with(&comp);
            comp.union_with(&next);
            frontier = next;
        }
        comp
    }

    pub fn is_connected_within(&self, within: &VertexSet) -> bool {
        match within.first() {
            None => true,
            Some(s) => self.component_of(s, within).len() == within.len(),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(&self.vertices())
    }

    /// Number of neighbours of `v` inside `within`.
    pub fn degree_within(&self, v: usize, within: &VertexSet) -> usize {
        self.adj[v].intersection_len(within)
    }

    pub fn induced_subgraph(&self, s: &VertexSet) -> InducedSubgraph {
        let to_host = s.to_vec();
        let mut from_host = vec![None; self.n()];
        for (i, &v) in to_host.iter().enumerate() {
            from_host[v] = Some(i);
        }
        let mut g = Graph::empty(to_host.len());
        for (i, &v) in to_host.iter().enumerate() {
            for u in self.adj[v].iter() {
                if let Some(j) = from_host[u] {
                    if j > i {
                        g.connect(i, j);
                    }
                }
            }
        }
        InducedSubgraph {
            graph: g,
            to_host,
            from_host,
        }
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for u in &self.adj[v] {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// True iff every two distinct members of `s` are at distance at least `d`.
    pub fn pairwise_distance_at_least(&self, s: &VertexSet, d: usize) -> bool {
        if d <= 1 {
            return true;
        }
        for u in s {
            // ball of radius d-1 around u
            let mut ball = VertexSet::singleton(self.n(), u);
            let mut frontier = ball.clone();
            for _ in 0..d - 1 {
                let mut next = self.open_neighborhood(&frontier);
                next.difference_with(&ball);
                if next.is_empty() {
                    break;
                }
                ball.union_with(&next);
                frontier = next;
            }
            if ball.intersection_len(s) > 1 {
                return false;
            }
        }
        true
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint(s))
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| {
            let mut rest = s.clone();
            rest.remove(v);
            rest.is_subset(&self.adj[v])
        })
    }

    /// Every vertex has exactly one member of `s` in its closed neighbourhood.
    pub fn is_efficient_dominating(&self, s: &VertexSet) -> bool {
        (0..self.n()).all(|v| self.closed_neighborhood(v).intersection_len(s) == 1)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

/// An induced subgraph together with the id translation back to its host.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `to_host[new] = old`
    pub to_host: Vec<usize>,
    /// `from_host[old] = Some(new)` for members of the inducing set
    pub from_host: Vec<Option<usize>>,
}

impl InducedSubgraph {
    pub fn lift(&self, s: &VertexSet) -> VertexSet {
        VertexSet::from_vertices(self.from_host.len(), s.iter().map(|v| self.to_host[v]))
    }

    /// Members of `s` that belong to the subgraph, in local ids.
    pub fn restrict(&self, s: &VertexSet) -> VertexSet {
        VertexSet::from_vertices(self.graph.n(), s.iter().filter_map(|v| self.from_host[v]))
    }
}

/// A graph with one integer weight per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    pub graph: Graph,
    pub weights: Vec<i64>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: Vec<i64>) -> Result<Self, GraphError> {
        if weights.len() != graph.n() {
            return Err(GraphError::WeightCount {
                expected: graph.n(),
                got: weights.len(),
            });
        }
        Ok(WeightedGraph { graph, weights })
    }

    pub fn unit(graph: Graph) -> Self {
        let n = graph.n();
        WeightedGraph {
            graph,
            weights: vec![1; n],
        }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn weight_of(&self, s: &VertexSet) -> i64 {
        s.iter().map(|v| self.weights[v]).sum()
    }

    pub fn induced_subgraph(&self, s: &VertexSet) -> (WeightedGraph, InducedSubgraph) {
        let sub = self.graph.induced_subgraph(s);
        let weights = sub.to_host.iter().map(|&v| self.weights[v]).collect();
        (
            WeightedGraph {
                graph: sub.graph.clone(),
                weights,
            },
            sub,
        )
    }
}
