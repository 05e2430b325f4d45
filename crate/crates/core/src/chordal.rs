//! Chordality, minimal triangulations, clique trees, minimal separators and
//! potential maximal cliques.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::nuke::Measure;
use crate::rational::{ratio, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChordalError {
    #[error("graph with fill edges is not chordal")]
    NotChordal,
    #[error("no bag of the clique tree is central")]
    CentralBagNotFound,
    #[error("structure violation: {0}")]
    StructureViolation(String),
}

/// Perfect elimination ordering of `G` if it is chordal.
///
/// Uses maximum cardinality search (ties to the smallest id); the elimination
/// order is the reverse of the visit order.
pub fn is_chordal(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut numbered = g.empty_set();
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !numbered.contains(v))
            .max_by_key(|&v| (g.degree_within(v, &numbered), std::cmp::Reverse(v)))
            .unwrap();
        numbered.insert(v);
        visit.push(v);
    }
    visit.reverse();
    is_perfect_elimination_ordering(g, &visit).then_some(visit)
}

/// Checks that for every vertex its later neighbours form a clique, using
/// the usual "earliest later neighbour" test.
pub fn is_perfect_elimination_ordering(g: &Graph, order: &[usize]) -> bool {
    let n = g.n();
    if order.len() != n {
        return false;
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if pos[v] != usize::MAX {
            return false;
        }
        pos[v] = i;
    }
    for &v in order {
        let later: Vec<usize> = g.neighbors(v).iter().filter(|&u| pos[u] > pos[v]).collect();
        if let Some(&parent) = later.iter().min_by_key(|&&u| pos[u]) {
            for &u in &later {
                if u != parent && !g.has_edge(u, parent) {
                    return false;
                }
            }
        }
    }
    true
}

/// Fill edges `(u, v)` with `u < v`, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FillEdges {
    pub edges: Vec<(usize, usize)>,
}

impl FillEdges {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn apply(&self, g: &Graph) -> Graph {
        g.with_edges(self.edges.iter().copied())
    }

    /// Chordal result, disjoint from `E(G)`, and no single fill edge can be dropped.
    pub fn is_minimal_triangulation_of(&self, g: &Graph) -> bool {
        if self.edges.iter().any(|&(u, v)| g.has_edge(u, v)) {
            return false;
        }
        if is_chordal(&self.apply(g)).is_none() {
            return false;
        }
        (0..self.edges.len()).all(|skip| {
            let fewer = self
                .edges
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &e)| e);
            is_chordal(&g.with_edges(fewer)).is_none()
        })
    }
}

/// Minimal triangulation by MCS-M.
///
/// Each step numbers an unnumbered vertex `v` of maximum weight (ties to the
/// smallest id), then raises the weight of, and adds a fill edge to, every
/// unnumbered `u` reachable from `v` through unnumbered vertices of weight
/// strictly below `w(u)`.
pub fn minimal_triangulation(g: &Graph) -> FillEdges {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut unnumbered = g.vertices();
    let mut fill = Vec::new();
    for _ in 0..n {
        let v = unnumbered
            .iter()
            .max_by_key(|&u| (weight[u], std::cmp::Reverse(u)))
            .unwrap();
        unnumbered.remove(v);

        let mut levels: Vec<usize> = unnumbered.iter().map(|u| weight[u]).collect();
        levels.sort_unstable();
        levels.dedup();

        let mut reached = g.neighbors(v) & &unnumbered;
        for &level in &levels {
            let low = VertexSet::from_vertices(n, unnumbered.iter().filter(|&x| weight[x] < level));
            let seeds = g.neighbors(v) & &low;
            let mut closure = seeds.clone();
            let mut frontier = seeds;
            while !frontier.is_empty() {
                let mut next = g.open_neighborhood(&frontier);
                next.intersect_with(&low);
                next.difference_with(&closure);
                closure.union_with(&next);
                frontier = next;
            }
            let boundary = g.open_neighborhood(&closure);
            for u in boundary
                .iter()
                .filter(|&u| unnumbered.contains(u) && weight[u] == level)
            {
                reached.insert(u);
            }
        }
        for u in &reached {
            weight[u] += 1;
            if !g.has_edge(u, v) {
                fill.push((u.min(v), u.max(v)));
            }
        }
    }
    fill.sort_unstable();
    FillEdges { edges: fill }
}

/// Maximal cliques of a chordal graph from one of its perfect elimination
/// orderings, listed in elimination order of their lowest vertex.
pub fn maximal_cliques(h: &Graph, peo: &[usize]) -> Vec<VertexSet> {
    let n = h.n();
    let mut pos = vec![0; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    let candidates: Vec<VertexSet> = peo
        .iter()
        .map(|&v| {
            let mut c = VertexSet::from_vertices(n, h.neighbors(v).iter().filter(|&u| pos[u] > pos[v]));
            c.insert(v);
            c
        })
        .collect();
    candidates
        .iter()
        .enumerate()
        .filter(|&(i, c)| !candidates.iter().enumerate().any(|(j, d)| j != i && c.is_subset(d)))
        .map(|(_, c)| c.clone())
        .collect()
}

/// Tree over the maximal cliques of a triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueTree {
    pub bags: Vec<VertexSet>,
    pub tree_edges: Vec<(usize, usize)>,
    pub root: Option<usize>,
}

impl CliqueTree {
    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.tree_edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        adj
    }

    /// Vertex and edge coverage plus the subtree (coherence) property.
    pub fn is_tree_decomposition_of(&self, g: &Graph) -> bool {
        let k = self.bags.len();
        if g.n() == 0 {
            return true;
        }
        if k == 0 || self.tree_edges.len() + 1 != k {
            return false;
        }
        for v in 0..g.n() {
            if !self.bags.iter().any(|b| b.contains(v)) {
                return false;
            }
        }
        for (u, v) in g.edges() {
            if !self.bags.iter().any(|b| b.contains(u) && b.contains(v)) {
                return false;
            }
        }
        let adj = self.adjacency();
        // the tree itself must be connected
        if reachable_bags(&adj, 0, |_| true).len() != k {
            return false;
        }
        for v in 0..g.n() {
            let holding: Vec<usize> = (0..k).filter(|&i| self.bags[i].contains(v)).collect();
            let reach = reachable_bags(&adj, holding[0], |i| self.bags[i].contains(v));
            if reach.len() != holding.len() {
                return false;
            }
        }
        true
    }

    pub fn rooted(&self, root: usize) -> RootedCliqueTree {
        RootedCliqueTree::new(self, root)
    }
}

fn reachable_bags(adj: &[Vec<usize>], start: usize, keep: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut out = Vec::new();
    while let Some(b) = stack.pop() {
        out.push(b);
        for &c in &adj[b] {
            if !seen[c] && keep(c) {
                seen[c] = true;
                stack.push(c);
            }
        }
    }
    out
}

/// Clique tree of `G + F`: maximal cliques from a perfect elimination
/// ordering, joined by a maximum-weight spanning tree of the clique
/// intersection graph (weight `|B_i ∩ B_j|`, ties to smaller indices).
pub fn clique_tree(g: &Graph, fill: &FillEdges) -> Result<CliqueTree, ChordalError> {
    let h = fill.apply(g);
    let peo = is_chordal(&h).ok_or(ChordalError::NotChordal)?;
    let bags = maximal_cliques(&h, &peo);
    let k = bags.len();
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            pairs.push((bags[i].intersection_len(&bags[j]), i, j));
        }
    }
    pairs.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    let mut tree_edges = Vec::with_capacity(k.saturating_sub(1));
    for (_, i, j) in pairs {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
            tree_edges.push((i, j));
        }
    }
    Ok(CliqueTree {
        bags,
        tree_edges,
        root: None,
    })
}

/// Triangulate with MCS-M and build the clique tree in one go.
pub fn triangulated_clique_tree(g: &Graph) -> (FillEdges, CliqueTree) {
    let fill = minimal_triangulation(g);
    let tree = clique_tree(g, &fill).expect("MCS-M output is chordal");
    (fill, tree)
}

/// First bag (in index order) leaving only components of at most `⌊n/2⌋` vertices.
pub fn central_bag(g: &Graph, tree: &CliqueTree) -> Result<usize, ChordalError> {
    let n = g.n();
    tree.bags
        .iter()
        .position(|bag| {
            g.connected_components(&(&g.vertices() - bag))
                .iter()
                .all(|c| 2 * c.len() <= n)
        })
        .ok_or(ChordalError::CentralBagNotFound)
}

/// First bag leaving only components of measure at most one half.
pub fn weighted_central_bag(g: &Graph, tree: &CliqueTree, mu: &Measure) -> Result<usize, ChordalError> {
    let half = ratio(1, 2);
    tree.bags
        .iter()
        .position(|bag| {
            g.connected_components(&(&g.vertices() - bag))
                .iter()
                .all(|c| mu.mass_of(c) <= half)
        })
        .ok_or(ChordalError::CentralBagNotFound)
}

/// Components `C` of `G - S` with `S ⊆ N(C)`.
pub fn full_components(g: &Graph, s: &VertexSet) -> Vec<VertexSet> {
    g.connected_components(&(&g.vertices() - s))
        .into_iter()
        .filter(|c| s.is_subset(&g.open_neighborhood(c)))
        .collect()
}

/// `S` is a minimal separator iff `G - S` has at least two full components.
pub fn is_minimal_separator(g: &Graph, s: &VertexSet) -> bool {
    full_components(g, s).len() >= 2
}

/// Potential maximal clique test: every component neighbourhood is a proper
/// subset of `Ω`, and every non-edge inside `Ω` is covered by a component.
pub fn is_pmc(g: &Graph, omega: &VertexSet) -> bool {
    if omega.is_empty() {
        return false;
    }
    let nbrs: Vec<VertexSet> = g
        .connected_components(&(&g.vertices() - omega))
        .iter()
        .map(|c| g.open_neighborhood(c))
        .collect();
    if nbrs.iter().any(|nc| nc == omega) {
        return false;
    }
    for x in omega {
        for y in omega.iter().filter(|&y| y > x) {
            if !g.has_edge(x, y) && !nbrs.iter().any(|nc| nc.contains(x) && nc.contains(y)) {
                return false;
            }
        }
    }
    true
}

/// `N(C)` for every component `C` of `G - Ω`, each checked to be a minimal separator.
pub fn component_separators(g: &Graph, omega: &VertexSet) -> Result<Vec<VertexSet>, ChordalError> {
    g.connected_components(&(&g.vertices() - omega))
        .iter()
        .map(|c| {
            let s = g.open_neighborhood(c);
            if is_minimal_separator(g, &s) {
                Ok(s)
            } else {
                Err(ChordalError::StructureViolation(format!(
                    "neighbourhood {s:?} of component {c:?} is not a minimal separator"
                )))
            }
        })
        .collect()
}

/// Clique tree rooted at a bag, with children lists, a post-order and the
/// cone `γ(t)` (union of the bags in the subtree of `t`) of every node.
#[derive(Clone, Debug)]
pub struct RootedCliqueTree {
    pub bags: Vec<VertexSet>,
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    pub postorder: Vec<usize>,
    pub cones: Vec<VertexSet>,
}

impl RootedCliqueTree {
    pub fn new(tree: &CliqueTree, root: usize) -> Self {
        let k = tree.bags.len();
        let adj = tree.adjacency();
        let mut parent = vec![None; k];
        let mut children = vec![Vec::new(); k];
        let mut preorder = Vec::with_capacity(k);
        let mut seen = vec![false; k];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(t) = stack.pop() {
            preorder.push(t);
            for &c in adj[t].iter().rev() {
                if !seen[c] {
                    seen[c] = true;
                    parent[c] = Some(t);
                    stack.push(c);
                }
            }
        }
        for &t in &preorder {
            if let Some(p) = parent[t] {
                children[p].push(t);
            }
        }
        for list in children.iter_mut() {
            list.sort_unstable();
        }
        let postorder: Vec<usize> = preorder.iter().rev().copied().collect();
        let mut cones = tree.bags.clone();
        for &t in &postorder {
            for &c in &children[t] {
                let child_cone = cones[c].clone();
                cones[t].union_with(&child_cone);
            }
        }
        RootedCliqueTree {
            bags: tree.bags.clone(),
            root,
            parent,
            children,
            postorder,
            cones,
        }
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }
}

/// Convenience: measure-free uniform mass check used by the harnesses.
pub fn uniform_mass(members: usize, of: usize) -> Rational {
    ratio(members as i64, of as i64)
}
