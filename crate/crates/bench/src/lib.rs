//! Deterministic benchmark corpora.

use pfree::gen;
use pfree::{Graph, WeightedGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Cograph,
    /// Connected P6-free graphs grown vertex by vertex.
    Grown,
    /// Cograph modules substituted into a tree of radius two.
    Blowup,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Cograph, Family::Grown, Family::Blowup];

    pub fn name(self) -> &'static str {
        match self {
            Family::Cograph => "cograph",
            Family::Grown => "grown",
            Family::Blowup => "blowup",
        }
    }

    /// A graph with roughly `n` vertices (exactly `n` except for blow-ups).
    pub fn graph(self, n: usize, seed: u64) -> Graph {
        match self {
            Family::Cograph => gen::cograph(n, seed),
            Family::Grown => gen::grow_pkfree(n, 0.2, 6, seed, 20).expect("valid parameters"),
            Family::Blowup => gen::p6_free_blowup((n / 2).max(1), 3, seed),
        }
    }

    pub fn weighted(self, n: usize, seed: u64) -> WeightedGraph {
        gen::assign_weights(&self.graph(n, seed), 0, 100, seed).expect("valid range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pfree::pattern::is_pk_free;

    #[test]
    fn corpora_are_p6_free_and_deterministic() {
        for f in Family::ALL {
            let g = f.graph(30, 4);
            assert!(is_pk_free(&g, 6).unwrap(), "{}", f.name());
            assert_eq!(g, f.graph(30, 4));
        }
        assert_eq!(Family::Grown.graph(25, 1).n(), 25);
    }
}
