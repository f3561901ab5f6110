//! Vertex colourings, the c-strong predicate, product colourings, and exact
//! c-strong chromatic numbers.
//!
//! An edge `e` is satisfied by a colouring when it sees at least
//! `min(c, |e|)` distinct colours. `c = 2` is a weak (proper) colouring;
//! `c ≥ max |e|` forces every edge to be rainbow.

mod link_chi;
mod solver;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{Hypergraph, Link, VertexSet};

pub use link_chi::{chi_t_ell, chi_t_ell_with_jobs, rainbow_forced, LinkChi};
pub use solver::{chi_strong, chi_strong_auto, chi_strong_bruteforce, colourable, ChiMethod, ChiResult, BRUTEFORCE_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ColouringError {
    #[error("colour {colour} at vertex {vertex} is not below k = {k}")]
    ColourOutOfRange { vertex: usize, colour: usize, k: usize },
    #[error("a colouring of {n} vertices needs k >= 1")]
    NoColours { n: usize },
    #[error("colouring covers {got} vertices, hypergraph has {expected}")]
    WrongVertexCount { expected: usize, got: usize },
    #[error("product of an empty list of colourings")]
    EmptyProduct,
    #[error("brute force needs k^n = {k}^{n} assignments, above the limit")]
    BruteForceTooLarge { k: usize, n: usize },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawColouring {
    pub k: usize,
    pub colours: Vec<usize>,
}

/// Total assignment of a colour in `0..k` to every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawColouring", into = "RawColouring")]
pub struct Colouring {
    k: usize,
    colours: Vec<usize>,
}

impl TryFrom<RawColouring> for Colouring {
    type Error = ColouringError;

    fn try_from(raw: RawColouring) -> Result<Self, Self::Error> {
        Colouring::new(raw.k, raw.colours)
    }
}

impl From<Colouring> for RawColouring {
    fn from(c: Colouring) -> Self {
        RawColouring { k: c.k, colours: c.colours }
    }
}

impl Colouring {
    pub fn new(k: usize, colours: Vec<usize>) -> Result<Self, ColouringError> {
        if k == 0 && !colours.is_empty() {
            return Err(ColouringError::NoColours { n: colours.len() });
        }
        if let Some((vertex, &colour)) = colours.iter().enumerate().find(|(_, &c)| c >= k) {
            return Err(ColouringError::ColourOutOfRange { vertex, colour, k });
        }
        Ok(Colouring { k, colours })
    }

    /// Colouring with `k` one more than the largest colour present.
    pub fn from_colours(colours: Vec<usize>) -> Self {
        let k = colours.iter().max().map_or(0, |&m| m + 1);
        Colouring { k, colours }
    }

    pub fn constant(n: usize) -> Self {
        Colouring { k: usize::from(n > 0), colours: vec![0; n] }
    }

    /// Every vertex its own colour.
    pub fn rainbow(n: usize) -> Self {
        Colouring { k: n, colours: (0..n).collect() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn colours(&self) -> &[usize] {
        &self.colours
    }

    pub fn num_vertices(&self) -> usize {
        self.colours.len()
    }

    pub fn colour(&self, v: usize) -> usize {
        self.colours[v]
    }

    /// Number of distinct colours actually used.
    pub fn num_used(&self) -> usize {
        let mut seen = vec![false; self.k];
        self.colours.iter().filter(|&&c| !std::mem::replace(&mut seen[c], true)).count()
    }

    pub fn distinct_on(&self, set: &VertexSet) -> usize {
        let mut seen: Vec<usize> = set.iter().map(|v| self.colours[v]).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Re-indexes colours densely in order of first occurrence.
    pub fn compacted(&self) -> Colouring {
        let mut map = HashMap::new();
        let colours = self
            .colours
            .iter()
            .map(|&c| {
                let next = map.len();
                *map.entry(c).or_insert(next)
            })
            .collect();
        Colouring { k: map.len(), colours }
    }

    /// Restriction to the vertex set of a link, in link ids.
    pub fn restrict_to_link(&self, link: &Link) -> Colouring {
        Colouring { k: self.k, colours: link.vertex_map.iter().map(|&v| self.colours[v]).collect() }
    }

    /// Lifts a colouring of a link back to its host on `n` vertices; the
    /// linked set itself gets colour `fill`.
    pub fn lift_from_link(&self, link: &Link, n: usize, fill: usize) -> Colouring {
        let mut colours = vec![fill; n];
        for (local, &host) in link.vertex_map.iter().enumerate() {
            colours[host] = self.colours[local];
        }
        let k = if n == 0 { 0 } else { self.k.max(fill + 1) };
        Colouring { k, colours }
    }
}

/// Proof that a colouring is c-strong: colour counts per edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongColourCert {
    pub colouring: Colouring,
    pub c: usize,
    pub edge_colour_counts: Vec<usize>,
}

/// The lowest-index edge that sees too few colours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailingEdge {
    pub index: usize,
    pub edge: VertexSet,
    pub seen: usize,
    pub required: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrongCheck {
    Strong(StrongColourCert),
    Fails(FailingEdge),
}

impl StrongCheck {
    pub fn is_strong(&self) -> bool {
        matches!(self, StrongCheck::Strong(_))
    }

    pub fn cert(self) -> Option<StrongColourCert> {
        match self {
            StrongCheck::Strong(cert) => Some(cert),
            StrongCheck::Fails(_) => None,
        }
    }
}

pub fn is_c_strong(h: &Hypergraph, col: &Colouring, c: usize) -> Result<StrongCheck, ColouringError> {
    if col.num_vertices() != h.n() {
        return Err(ColouringError::WrongVertexCount { expected: h.n(), got: col.num_vertices() });
    }
    let mut counts = Vec::with_capacity(h.num_edges());
    for (index, e) in h.edges().iter().enumerate() {
        let seen = col.distinct_on(e);
        let required = c.min(e.len());
        if seen < required {
            return Ok(StrongCheck::Fails(FailingEdge { index, edge: e.clone(), seen, required }));
        }
        counts.push(seen);
    }
    Ok(StrongCheck::Strong(StrongColourCert { colouring: col.clone(), c, edge_colour_counts: counts }))
}

/// Vertex-wise tuple of several colourings, re-indexed densely in order of
/// first occurrence over ascending vertex id.
pub fn product_colouring(cols: &[Colouring]) -> Result<Colouring, ColouringError> {
    let first = cols.first().ok_or(ColouringError::EmptyProduct)?;
    let n = first.num_vertices();
    if let Some(bad) = cols.iter().find(|c| c.num_vertices() != n) {
        return Err(ColouringError::WrongVertexCount { expected: n, got: bad.num_vertices() });
    }
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let colours = (0..n)
        .map(|v| {
            let tuple: Vec<usize> = cols.iter().map(|c| c.colours[v]).collect();
            let next = index.len();
            *index.entry(tuple).or_insert(next)
        })
        .collect();
    Ok(Colouring { k: index.len(), colours })
}
