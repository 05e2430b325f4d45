//! Instance generators: random `P_k`-free graphs, cographs, substitution
//! blow-ups, the two clique-block counterexample families, and weights.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, VertexSet, WeightedGraph};
use crate::pattern::{self, PatternError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("repair budget of {0} deletions exhausted before the graph became P_k-free")]
    RepairBudgetExhausted(usize),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sample `G(n, p)`, then delete the median vertex of a witness path until
/// no induced `P_k` remains.
pub fn random_pkfree(n: usize, p: f64, k: usize, seed: u64, max_repair: usize) -> Result<Graph, GenError> {
    if k < 4 {
        return Err(GenError::InvalidParameters(format!("k must be at least 4, got {k}")));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(GenError::InvalidParameters(format!(
            "edge probability {p} outside (0, 1)"
        )));
    }
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let mut g = Graph::from_edges(n, edges).expect("sampled edges are simple");
    let mut deletions = 0;
    while let Some(witness) = pattern::find_induced_path(&g, k)? {
        if deletions == max_repair {
            return Err(GenError::RepairBudgetExhausted(max_repair));
        }
        let victim = witness.vertices[k / 2];
        let keep = &g.vertices() - &VertexSet::singleton(g.n(), victim);
        g = g.induced_subgraph(&keep).graph;
        deletions += 1;
    }
    Ok(g)
}

/// Connected `P_k`-free graph on exactly `n` vertices, built one vertex at a
/// time. Each new vertex gets a random non-empty neighbourhood among the
/// earlier ones (each edge with probability `p`); a draw that creates an
/// induced `P_k` is rejected. After `attempts` rejections the vertex becomes
/// a true twin of a random earlier vertex, which cannot create an induced
/// path on four or more vertices.
pub fn grow_pkfree(n: usize, p: f64, k: usize, seed: u64, attempts: usize) -> Result<Graph, GenError> {
    if k < 4 {
        return Err(GenError::InvalidParameters(format!("k must be at least 4, got {k}")));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(GenError::InvalidParameters(format!(
            "edge probability {p} outside (0, 1)"
        )));
    }
    let mut r = rng(seed);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 1..n {
        let mut placed = false;
        for _ in 0..attempts {
            let nbrs: Vec<usize> = (0..v).filter(|_| r.gen_bool(p)).collect();
            if nbrs.is_empty() {
                continue;
            }
            let trial: Vec<_> = edges.iter().copied().chain(nbrs.iter().map(|&u| (u, v))).collect();
            let g = Graph::from_edges(v + 1, trial.iter().copied()).expect("simple");
            if pattern::is_pk_free(&g, k)? {
                edges = trial;
                placed = true;
                break;
            }
        }
        if !placed {
            let twin = r.gen_range(0..v);
            let g = Graph::from_edges(v, edges.iter().copied()).expect("simple");
            edges.extend(g.neighbors(twin).iter().map(|u| (u, v)));
            edges.push((twin, v));
        }
    }
    let g = Graph::from_edges(n, edges).expect("simple");
    debug_assert!(n == 0 || g.is_connected());
    Ok(g)
}

/// Cotree: leaves are vertices, inner nodes take disjoint union or join.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cotree {
    Leaf,
    Union(Box<Cotree>, Box<Cotree>),
    Join(Box<Cotree>, Box<Cotree>),
}

impl Cotree {
    pub fn leaves(&self) -> usize {
        match self {
            Cotree::Leaf => 1,
            Cotree::Union(a, b) | Cotree::Join(a, b) => a.leaves() + b.leaves(),
        }
    }

    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::new();
        self.collect(0, &mut edges);
        Graph::from_edges(self.leaves(), edges).unwrap()
    }

    fn collect(&self, offset: usize, edges: &mut Vec<(usize, usize)>) -> usize {
        match self {
            Cotree::Leaf => 1,
            Cotree::Union(a, b) | Cotree::Join(a, b) => {
                let la = a.collect(offset, edges);
                let lb = b.collect(offset + la, edges);
                if matches!(self, Cotree::Join(..)) {
                    for u in offset..offset + la {
                        for v in offset + la..offset + la + lb {
                            edges.push((u, v));
                        }
                    }
                }
                la + lb
            }
        }
    }

    pub fn random(n: usize, r: &mut impl Rng) -> Cotree {
        assert!(n >= 1, "a cotree needs at least one leaf");
        if n == 1 {
            return Cotree::Leaf;
        }
        let left = r.gen_range(1..n);
        let a = Box::new(Cotree::random(left, r));
        let b = Box::new(Cotree::random(n - left, r));
        if r.gen_bool(0.5) {
            Cotree::Union(a, b)
        } else {
            Cotree::Join(a, b)
        }
    }
}

/// Random cograph on exactly `n` vertices.
pub fn cograph(n: usize, seed: u64) -> Graph {
    if n == 0 {
        return Graph::empty(0);
    }
    Cotree::random(n, &mut rng(seed)).to_graph()
}

/// Replace every vertex of a random tree of radius at most two by a random
/// cograph module.
///
/// The tree has no path on six vertices and cographs have no `P_4`; since
/// paths on four or more vertices are prime, substitution keeps the result
/// `P_6`-free. The blow-up is connected whenever the tree has two or more
/// nodes. Module sizes are drawn from `1..=max_module`.
pub fn p6_free_blowup(tree_nodes: usize, max_module: usize, seed: u64) -> Graph {
    assert!(tree_nodes >= 1 && max_module >= 1);
    let mut r = rng(seed);
    // node 0 is the centre; hubs hang off it, the rest hang off hubs
    let hubs = if tree_nodes == 1 {
        0
    } else {
        r.gen_range(1..=(tree_nodes / 2).clamp(1, tree_nodes - 1))
    };
    let mut tree_edges = Vec::new();
    for h in 1..=hubs {
        tree_edges.push((0, h));
    }
    for leaf in hubs + 1..tree_nodes {
        let parent = r.gen_range(1..=hubs);
        tree_edges.push((parent, leaf));
    }
    let mut modules: Vec<Vec<usize>> = Vec::with_capacity(tree_nodes);
    let mut inner = Vec::new();
    let mut next = 0;
    for _ in 0..tree_nodes {
        let size = r.gen_range(1..=max_module);
        let module_graph = Cotree::random(size, &mut r).to_graph();
        inner.extend(module_graph.edges().map(|(u, v)| (u + next, v + next)));
        modules.push((next..next + size).collect());
        next += size;
    }
    let mut edges = inner;
    for (a, b) in tree_edges {
        for &u in &modules[a] {
            for &v in &modules[b] {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(next, edges).unwrap()
}

/// `A, C_1, …, C_k` cliques of size `k`; the first vertex `c_i` of `C_i`
/// is joined to `a_i ∈ A`.
#[derive(Clone, Debug)]
pub struct NukeCounterexample {
    pub k: usize,
    pub graph: Graph,
    pub a: Vec<usize>,
    pub c: Vec<usize>,
    pub tau: usize,
}

impl NukeCounterexample {
    pub fn nuke_set(&self) -> VertexSet {
        VertexSet::from_vertices(self.graph.n(), self.c.iter().copied())
    }
}

fn clique_edges(block: &[usize], edges: &mut Vec<(usize, usize)>) {
    for (i, &u) in block.iter().enumerate() {
        for &v in &block[i + 1..] {
            edges.push((u, v));
        }
    }
}

pub fn counterexample_nuke(k: usize) -> NukeCounterexample {
    assert!(k >= 2, "the family starts at k = 2");
    let n = k * (k + 1);
    let a: Vec<usize> = (0..k).collect();
    let mut edges = Vec::new();
    clique_edges(&a, &mut edges);
    let mut c = Vec::with_capacity(k);
    for (i, &ai) in a.iter().enumerate() {
        let block: Vec<usize> = (k + i * k..k + (i + 1) * k).collect();
        clique_edges(&block, &mut edges);
        edges.push((ai, block[0]));
        c.push(block[0]);
    }
    let graph = Graph::from_edges(n, edges).unwrap();
    NukeCounterexample {
        k,
        graph,
        a,
        c,
        tau: suggested_tau(n),
    }
}

/// `⌈0.85 n⌉` clamped into `[⌈0.8 n⌉, ⌊0.9 n⌋]`.
pub fn suggested_tau(n: usize) -> usize {
    let lo = (8 * n).div_ceil(10);
    let hi = (9 * n) / 10;
    (85 * n).div_ceil(100).clamp(lo, hi.max(lo))
}

/// `A, B, S_1, …, S_k` cliques of size `k`; every vertex of `S_i` is joined
/// to `a_i ∈ A` and `b_i ∈ B`.
#[derive(Clone, Debug)]
pub struct SeparatorCounterexample {
    pub k: usize,
    pub graph: Graph,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
}

impl SeparatorCounterexample {
    pub fn separator(&self) -> VertexSet {
        VertexSet::from_vertices(self.graph.n(), self.blocks.iter().flatten().copied())
    }
}

pub fn counterexample_separator(k: usize) -> SeparatorCounterexample {
    assert!(k >= 2, "the family starts at k = 2");
    let n = k * (k + 2);
    let a: Vec<usize> = (0..k).collect();
    let b: Vec<usize> = (k..2 * k).collect();
    let mut edges = Vec::new();
    clique_edges(&a, &mut edges);
    clique_edges(&b, &mut edges);
    let mut blocks = Vec::with_capacity(k);
    for i in 0..k {
        let block: Vec<usize> = (2 * k + i * k..2 * k + (i + 1) * k).collect();
        clique_edges(&block, &mut edges);
        for &s in &block {
            edges.push((a[i], s));
            edges.push((b[i], s));
        }
        blocks.push(block);
    }
    SeparatorCounterexample {
        k,
        graph: Graph::from_edges(n, edges).unwrap(),
        a,
        b,
        blocks,
    }
}

/// Independent uniform weights from `lo..=hi`.
pub fn assign_weights(g: &Graph, lo: i64, hi: i64, seed: u64) -> Result<WeightedGraph, GenError> {
    if lo > hi {
        return Err(GenError::InvalidParameters(format!("empty weight range [{lo}, {hi}]")));
    }
    let mut r = rng(seed);
    let weights = (0..g.n()).map(|_| r.gen_range(lo..=hi)).collect();
    Ok(WeightedGraph::new(g.clone(), weights).expect("one weight per vertex"))
}

/// Apply a random relabelling (useful to break id-order coincidences).
pub fn shuffle_ids(g: &Graph, seed: u64) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(&mut rng(seed));
    Graph::from_edges(g.n(), g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}

/// Everything the command line can ask for.
#[derive(Clone, Debug, PartialEq)]
pub enum GenSpec {
    RandomPkFree {
        n: usize,
        p: f64,
        k: usize,
        seed: u64,
        max_repair: usize,
    },
    GrownPkFree {
        n: usize,
        p: f64,
        k: usize,
        seed: u64,
    },
    Cograph {
        n: usize,
        seed: u64,
    },
    Blowup {
        tree_nodes: usize,
        max_module: usize,
        seed: u64,
    },
    NukeCounterexample {
        k: usize,
    },
    SeparatorCounterexample {
        k: usize,
    },
}

impl GenSpec {
    pub fn generate(&self) -> Result<Graph, GenError> {
        match *self {
            GenSpec::RandomPkFree {
                n,
                p,
                k,
                seed,
                max_repair,
            } => random_pkfree(n, p, k, seed, max_repair),
            GenSpec::GrownPkFree { n, p, k, seed } => grow_pkfree(n, p, k, seed, 20),
            GenSpec::Cograph { n, seed } => {
                if n == 0 {
                    return Err(GenError::InvalidParameters("cograph needs n >= 1".into()));
                }
                Ok(cograph(n, seed))
            }
            GenSpec::Blowup {
                tree_nodes,
                max_module,
                seed,
            } => {
                if tree_nodes == 0 || max_module == 0 {
                    return Err(GenError::InvalidParameters("blow-up sizes must be positive".into()));
                }
                Ok(p6_free_blowup(tree_nodes, max_module, seed))
            }
            GenSpec::NukeCounterexample { k } | GenSpec::SeparatorCounterexample { k } if k < 2 => {
                Err(GenError::InvalidParameters(format!("k must be at least 2, got {k}")))
            }
            GenSpec::NukeCounterexample { k } => Ok(counterexample_nuke(k).graph),
            GenSpec::SeparatorCounterexample { k } => Ok(counterexample_separator(k).graph),
        }
    }
}
