//! Deterministic builders for the extremal constructions and seeded random
//! instance families used by the fuzz suites.

mod construction;
mod random;

use itertools::Itertools;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, VertexSet, Violation};

pub use construction::{construction_42, construction_42_link_colouring, Construction42Spec, LinkCase};
pub use random::{
    planted_bromeliad, random_graph, random_hypergraph, random_t_intersecting, PlantedBromeliad,
};

/// Default vertex cap for [`construction_42`].
pub const DEFAULT_VERTEX_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("instance would have {vertices} vertices, cap is {cap}")]
    SizeCapExceeded { vertices: u128, cap: usize },
    #[error("could not satisfy the request: {0}")]
    Unsatisfiable(String),
    #[error("input is not a 2-uniform hypergraph (edge {0})")]
    NotAGraph(usize),
    #[error(transparent)]
    Invalid(#[from] Violation),
}

/// All `k`-subsets of `0..n`.
pub fn complete_uniform(n: usize, k: usize) -> Result<Hypergraph, GeneratorError> {
    if k == 0 || k > n {
        return Err(GeneratorError::InvalidParameters(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    Ok(Hypergraph::new(n, (0..n).combinations(k).collect())?)
}

/// Adds the same `t - 1` fresh vertices to every edge of a graph, giving a
/// `(t + 1)`-uniform hypergraph in which every sunflower has a kernel of at
/// least `t - 1` vertices.
pub fn kernel_augmented(g: &Hypergraph, t: usize) -> Result<Hypergraph, GeneratorError> {
    if t == 0 {
        return Err(GeneratorError::InvalidParameters("t must be at least 1".into()));
    }
    if let Some(i) = g.edges().iter().position(|e| e.len() != 2) {
        return Err(GeneratorError::NotAGraph(i));
    }
    let n = g.n();
    let shared = VertexSet::range(n, n + t - 1);
    Ok(Hypergraph::from_sets(n + t - 1, g.edges().iter().map(|e| e.union(&shared)))?)
}

/// A bare sunflower: kernel `0..kernel_size` and `p` disjoint petals of
/// `petal_size` vertices each, laid out consecutively after the kernel.
pub fn sunflower_gen(p: usize, kernel_size: usize, petal_size: usize) -> Result<Hypergraph, GeneratorError> {
    if p < 2 || petal_size == 0 {
        return Err(GeneratorError::InvalidParameters(format!(
            "need p >= 2 and petal_size >= 1, got p={p}, petal_size={petal_size}"
        )));
    }
    let kernel = VertexSet::range(0, kernel_size);
    let edges = (0..p).map(|i| {
        let start = kernel_size + i * petal_size;
        kernel.union(&VertexSet::range(start, start + petal_size))
    });
    Ok(Hypergraph::from_sets(kernel_size + p * petal_size, edges)?)
}
