//! Exact solvers for Maximum Weight Independent Set and Maximum Weight
//! Efficient Dominating Set on P6-free graphs.
//!
//! The independent-set solver ([`mwis`]) is a branching algorithm that
//! alternates between high-degree branching and "nuke" phases seeded from a
//! central potential maximal clique. The efficient-domination solver
//! ([`eds`]) is a dynamic program over the clique tree of a minimal
//! triangulation whose per-bag state space is produced by a dedicated
//! branching enumeration. Both rest on the structural toolkit in
//! [`chordal`] and [`nuke`], and every answer can be cross-checked against
//! the brute-force references in [`oracle`].

pub mod chordal;
pub mod eds;
pub mod gen;
pub mod graph;
pub mod io;
pub mod mwis;
pub mod nuke;
pub mod oracle;
pub mod pattern;
pub mod rational;
pub mod verify;

pub use graph::{Graph, GraphError, InducedSubgraph, VertexSet, WeightedGraph};
pub use rational::Rational;

#[cfg(test)]
pub(crate) mod testutil {
    use crate::Graph;
    use proptest::prelude::*;

    /// Arbitrary simple graphs on `1..=max_n` vertices.
    pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if bits[k] {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, edges).unwrap()
            })
        })
    }
}
