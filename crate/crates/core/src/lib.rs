//! Exact tools for c-strong colourings of hypergraphs.
//!
//! A colouring is *c-strong* when every edge `e` sees at least `min(c, |e|)`
//! colours. This crate provides:
//!
//! * [`hypergraph`]: canonical hypergraphs, links, t-intersection,
//!   sunflowers and matchings;
//! * [`colouring`]: colourings, the c-strong check, product colourings and an
//!   exact solver for `χ(H, c)` with a brute-force cross-check;
//! * [`structure`]: regions, split-degenerate sequences and bromeliads;
//! * [`procedures`]: the constructive colouring procedures built on them;
//! * [`generators`]: extremal constructions and seeded random families;
//! * [`acceptance`]: the self-check suite behind `hypercol verify`.

pub mod acceptance;
pub mod colouring;
pub mod generators;
pub mod hypergraph;
pub mod procedures;
pub mod structure;

pub use colouring::{chi_strong, is_c_strong, Colouring};
pub use hypergraph::{Hypergraph, VertexSet};
