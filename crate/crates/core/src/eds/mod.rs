//! Maximum Weight Efficient Dominating Set.
//!
//! An efficient dominating set contains exactly one vertex of every closed
//! neighbourhood. The solver runs a dynamic program over the clique tree of a
//! minimal triangulation. For every bag `Ω` it only considers states
//! `f: Ω -> {component of G - Ω, Ω, ⊥}` produced by [`enumerate_states`],
//! which records where the unique dominator of each bag vertex lives.

mod dp;
mod states;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::rational::{ratio, Rational};

pub use dp::{is_partial_solution, partially_consistent, solve_eds, EdsOutcome, EdsStats};
pub use states::{enumerate_states, EnumerationStats};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EdsError {
    #[error("structure violation (input is not P6-free): {0}")]
    StructureViolation(String),
    #[error("state enumeration budget of {0} nodes exhausted")]
    BudgetExceeded(u64),
    #[error("bag {0:?} is not a potential maximal clique")]
    NotAPmc(VertexSet),
}

/// What happens when a structural guarantee fails inside a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EdsMode {
    /// Report the violation as an error.
    #[default]
    Strict,
    /// Solve the offending component by exhaustive search if it has at most
    /// `cap` vertices.
    Fallback { cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdsConfig {
    /// The root layer guesses at most `⌈1/β⌉` solution vertices inside the bag.
    pub beta: Rational,
    pub mode: EdsMode,
    /// Cap on branching nodes per bag.
    pub node_budget: Option<u64>,
    /// Treat a branch that fails to shrink `B` by the promised factor as a
    /// structure violation instead of a counted warning.
    pub assert_shrink: bool,
}

impl Default for EdsConfig {
    fn default() -> Self {
        EdsConfig {
            beta: ratio(1, 576),
            mode: EdsMode::Strict,
            node_budget: None,
            assert_shrink: false,
        }
    }
}

impl EdsConfig {
    pub fn fallback() -> Self {
        EdsConfig {
            mode: EdsMode::Fallback { cap: 25 },
            ..EdsConfig::default()
        }
    }

    pub fn root_layer_cap(&self) -> usize {
        (ratio(1, 1) / self.beta).ceil().to_integer() as usize
    }
}

/// Where the dominator of a bag vertex lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateValue {
    /// Index into [`StateFamily::components`].
    Component(usize),
    Omega,
    /// The vertex itself is in the solution.
    Bot,
}

/// One value per bag vertex, in increasing vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    pub values: Vec<StateValue>,
}

/// A bag together with the components of `G - Ω` and a family of states.
#[derive(Clone, Debug)]
pub struct StateFamily {
    pub omega: VertexSet,
    pub omega_list: Vec<usize>,
    pub components: Vec<VertexSet>,
    pub states: Vec<State>,
    pub stats: EnumerationStats,
}

impl StateFamily {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn value(&self, f: &State, v: usize) -> StateValue {
        let i = self.omega_list.binary_search(&v).expect("vertex outside the bag");
        f.values[i]
    }

    /// `f⁻¹(⊥)`.
    pub fn bottom(&self, f: &State) -> VertexSet {
        VertexSet::from_vertices(
            self.omega.capacity(),
            self.omega_list
                .iter()
                .zip(&f.values)
                .filter(|(_, &val)| val == StateValue::Bot)
                .map(|(&v, _)| v),
        )
    }

    /// Vertex set a value stands for (`Ω` itself for [`StateValue::Omega`],
    /// empty for [`StateValue::Bot`]).
    pub fn region(&self, value: StateValue) -> VertexSet {
        match value {
            StateValue::Component(c) => self.components[c].clone(),
            StateValue::Omega => self.omega.clone(),
            StateValue::Bot => VertexSet::new(self.omega.capacity()),
        }
    }

    pub fn contains_consistent(&self, g: &Graph, x: &VertexSet) -> bool {
        self.states.iter().any(|f| state_consistent(self, f, x, g))
    }
}

/// `X ∩ Ω = f⁻¹(⊥)`, and for every `v ∈ Ω \ X` the unique vertex of
/// `N(v) ∩ X` lies in `f(v)` (in `Ω` when `f(v)` is the `Ω` marker).
pub fn state_consistent(family: &StateFamily, f: &State, x: &VertexSet, g: &Graph) -> bool {
    if &family.omega & x != family.bottom(f) {
        return false;
    }
    family.omega_list.iter().zip(&f.values).all(|(&v, &val)| {
        if x.contains(v) {
            return true;
        }
        let dominators = g.neighbors(v) & x;
        if dominators.len() != 1 {
            return false;
        }
        let u = dominators.first().unwrap();
        match val {
            StateValue::Bot => false,
            StateValue::Omega => family.omega.contains(u),
            StateValue::Component(c) => family.components[c].contains(u),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family_for(g: &Graph, omega: &[usize]) -> StateFamily {
        enumerate_states(
            g,
            &VertexSet::from_vertices(g.n(), omega.iter().copied()),
            &EdsConfig::default(),
        )
        .unwrap()
    }

    #[test]
    fn consistency_examples() {
        let k3 = Graph::complete(3);
        let fam = family_for(&k3, &[0, 1, 2]);
        let x = VertexSet::singleton(3, 0);
        let f = State {
            values: vec![StateValue::Bot, StateValue::Omega, StateValue::Omega],
        };
        assert!(state_consistent(&fam, &f, &x, &k3));
        let g = State {
            values: vec![StateValue::Bot, StateValue::Bot, StateValue::Omega],
        };
        assert!(!state_consistent(&fam, &g, &x, &k3));

        let p4 = Graph::path(4);
        let fam = family_for(&p4, &[1, 2]);
        assert_eq!(fam.components.len(), 2);
        let x = VertexSet::from_vertices(4, [0, 3]);
        let f = State {
            values: vec![StateValue::Component(0), StateValue::Component(1)],
        };
        assert!(state_consistent(&fam, &f, &x, &p4));
        assert!(fam.contains_consistent(&p4, &x));
    }

    #[test]
    fn cliques_get_one_state_per_vertex() {
        let k4 = Graph::complete(4);
        let fam = family_for(&k4, &[0, 1, 2, 3]);
        assert_eq!(fam.len(), 4);
        for v in 0..4 {
            assert!(fam.contains_consistent(&k4, &VertexSet::singleton(4, v)));
        }
        for f in &fam.states {
            assert_eq!(f.values.iter().filter(|&&x| x == StateValue::Bot).count(), 1);
            assert_eq!(f.values.iter().filter(|&&x| x == StateValue::Omega).count(), 3);
        }
    }

    #[test]
    fn root_layer_cap() {
        assert_eq!(EdsConfig::default().root_layer_cap(), 576);
    }
}
