//! Regions, split-degenerate sequences and bromeliads.

mod bromeliad;
mod ramsey;
mod regions;

use thiserror::Error;

use crate::hypergraph::VertexSet;

pub use bromeliad::{
    bromeliad_witness, crown_compare, find_bromeliad, find_first_bromeliad, Bromeliad, BromeliadViolation, Compatibility, FoundBromeliad,
};
pub use ramsey::{blue_pair_region, red_clique_to_bromeliad, triple_classify, TripleColour};
pub use regions::{
    is_k_split_degenerate, regions, subsequence_check, Region, RegionPartition, SplitFailure, SplitReason,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("sequence edge {position} ({edge}) is not an edge of the hypergraph")]
    UnknownEdge { position: usize, edge: VertexSet },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant broken: {0}")]
    InvariantBroken(String),
    #[error("a single-edge bromeliad has no crown")]
    NoCrown,
}
