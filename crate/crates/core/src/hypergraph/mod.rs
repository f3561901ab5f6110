//! Finite hypergraphs on dense vertex ids, their links, and set-family
//! predicates (t-intersection, sunflowers, matchings).
//!
//! A [`Hypergraph`] is always in canonical form: every edge is a non-empty
//! sorted [`VertexSet`] inside `0..n`, edges are pairwise distinct, and the
//! edge list itself is sorted lexicographically. Edge indices used anywhere
//! in the crate refer to this canonical order.

mod sunflower;
mod vertex_set;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use sunflower::{find_sunflower, max_matching_at_least, Sunflower, SunflowerViolation};
pub use vertex_set::VertexSet;

/// The interchange form `{"n": .., "edges": [[..], ..]}` before validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawHypergraph {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

/// First invariant broken by a [`RawHypergraph`].
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("edge {edge} is empty")]
    EmptyEdge { edge: usize },
    #[error("edge {edge} contains vertex {vertex}, but n = {n}")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("edge {edge} duplicates edge {first} as a set")]
    DuplicateEdge { edge: usize, first: usize },
}

/// Checks the hypergraph invariants in input order and names the first one
/// that fails. Unsorted edges and repeated members within an edge are fine.
pub fn validate(raw: &RawHypergraph) -> Result<(), Violation> {
    let mut seen = std::collections::HashMap::new();
    for (i, edge) in raw.edges.iter().enumerate() {
        if edge.is_empty() {
            return Err(Violation::EmptyEdge { edge: i });
        }
        if let Some(&v) = edge.iter().find(|&&v| v >= raw.n) {
            return Err(Violation::VertexOutOfRange { edge: i, vertex: v, n: raw.n });
        }
        let set = VertexSet::from_unsorted(edge.clone());
        if let Some(&first) = seen.get(&set) {
            return Err(Violation::DuplicateEdge { edge: i, first });
        }
        seen.insert(set, i);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct Hypergraph {
    n: usize,
    edges: Vec<VertexSet>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Violation;

    fn try_from(raw: RawHypergraph) -> Result<Self, Self::Error> {
        validate(&raw)?;
        let mut edges: Vec<VertexSet> = raw.edges.into_iter().map(VertexSet::from_unsorted).collect();
        edges.sort();
        Ok(Hypergraph { n: raw.n, edges })
    }
}

impl From<Hypergraph> for RawHypergraph {
    fn from(h: Hypergraph) -> Self {
        RawHypergraph { n: h.n, edges: h.edges.into_iter().map(Vec::from).collect() }
    }
}

/// Result of [`Hypergraph::link`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    pub hypergraph: Hypergraph,
    /// `vertex_map[i]` is the host id of link vertex `i`.
    pub vertex_map: Vec<usize>,
    /// Whether the host had an edge equal to the linked set; its empty
    /// remainder is dropped from the link.
    pub dropped_kernel_edge: bool,
}

impl Link {
    /// Host id to link id, or `None` for vertices of the linked set.
    pub fn local_id(&self, host: usize) -> Option<usize> {
        self.vertex_map.binary_search(&host).ok()
    }

    pub fn to_host(&self, local: &VertexSet) -> VertexSet {
        VertexSet::from_sorted(local.iter().map(|v| self.vertex_map[v]).collect())
    }

    pub fn to_local(&self, host: &VertexSet) -> Option<VertexSet> {
        host.iter().map(|v| self.local_id(v)).collect::<Option<Vec<_>>>().map(VertexSet::from_sorted)
    }
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self, Violation> {
        Hypergraph::try_from(RawHypergraph { n, edges })
    }

    pub fn from_sets(n: usize, edges: impl IntoIterator<Item = VertexSet>) -> Result<Self, Violation> {
        Hypergraph::new(n, edges.into_iter().map(Vec::from).collect())
    }

    pub fn edgeless(n: usize) -> Self {
        Hypergraph { n, edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::range(0, self.n)
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Option<&VertexSet> {
        self.edges.get(index)
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Index of `edge` in canonical order.
    pub fn edge_index(&self, edge: &VertexSet) -> Option<usize> {
        self.edges.binary_search(edge).ok()
    }

    pub fn contains_edge(&self, edge: &VertexSet) -> bool {
        self.edge_index(edge).is_some()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    /// Sub-hypergraph on the same vertex set keeping the listed edges.
    ///
    /// Panics on an out-of-range index.
    pub fn sub_hypergraph(&self, edge_indices: &[usize]) -> Hypergraph {
        let mut idx = edge_indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        Hypergraph { n: self.n, edges: idx.into_iter().map(|i| self.edges[i].clone()).collect() }
    }

    /// Sub-hypergraph of the edges satisfying `keep`, with their host indices.
    pub fn filter_edges(&self, mut keep: impl FnMut(&VertexSet) -> bool) -> (Hypergraph, Vec<usize>) {
        let idx: Vec<usize> = (0..self.edges.len()).filter(|&i| keep(&self.edges[i])).collect();
        (self.sub_hypergraph(&idx), idx)
    }

    /// The link `H_S`: vertex set `V ∖ S` (re-indexed ascending) and edges
    /// `e ∖ S` for every edge `e ⊇ S`, empty remainders dropped.
    ///
    /// Vertices of `s` outside `0..n` are ignored.
    pub fn link(&self, s: &VertexSet) -> Link {
        let vertex_map: Vec<usize> = (0..self.n).filter(|&v| !s.contains(v)).collect();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertex_map.iter().enumerate() {
            local[v] = i;
        }
        let mut dropped_kernel_edge = false;
        let mut edges = Vec::new();
        for e in self.edges.iter().filter(|e| s.is_subset(e)) {
            let rest: Vec<usize> = e.iter().filter(|&v| !s.contains(v)).map(|v| local[v]).collect();
            if rest.is_empty() {
                dropped_kernel_edge = true;
            } else {
                edges.push(VertexSet::from_sorted(rest));
            }
        }
        // Distinct host edges containing S stay distinct after removing S.
        edges.sort();
        let hypergraph = Hypergraph { n: vertex_map.len(), edges };
        Link { hypergraph, vertex_map, dropped_kernel_edge }
    }

    /// True iff every pair of distinct edges shares at least `t` vertices.
    pub fn is_t_intersecting(&self, t: usize) -> bool {
        self.first_non_intersecting_pair(t).is_none()
    }

    /// Lexicographically first pair of edge indices meeting in fewer than `t`
    /// vertices.
    pub fn first_non_intersecting_pair(&self, t: usize) -> Option<(usize, usize)> {
        let m = self.edges.len();
        (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .find(|&(i, j)| self.edges[i].intersection_len(&self.edges[j]) < t)
    }

    /// Edges smaller than `t`. They are legal in a t-intersecting hypergraph
    /// (only distinct pairs are constrained) but never occur in practice.
    pub fn small_edge_lint(&self, t: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].len() < t).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn validate_accepts_well_formed() {
        assert_eq!(validate(&RawHypergraph { n: 3, edges: vec![vec![0, 1], vec![1, 2]] }), Ok(()));
    }

    #[test]
    fn validate_rejects_empty_edge() {
        let raw = RawHypergraph { n: 2, edges: vec![vec![]] };
        assert_eq!(validate(&raw), Err(Violation::EmptyEdge { edge: 0 }));
    }

    #[test]
    fn validate_rejects_duplicate_edge() {
        let raw = RawHypergraph { n: 2, edges: vec![vec![0, 1], vec![1, 0]] };
        assert_eq!(validate(&raw), Err(Violation::DuplicateEdge { edge: 1, first: 0 }));
    }

    #[test]
    fn validate_rejects_out_of_range() {
        let raw = RawHypergraph { n: 2, edges: vec![vec![0, 2]] };
        assert_eq!(validate(&raw), Err(Violation::VertexOutOfRange { edge: 0, vertex: 2, n: 2 }));
    }

    #[test]
    fn canonical_order() {
        let h = hg(4, &[&[3, 1], &[0, 2, 1], &[0, 1]]);
        let edges: Vec<Vec<usize>> = h.edges().iter().map(|e| e.as_slice().to_vec()).collect();
        assert_eq!(edges, vec![vec![0, 1], vec![0, 1, 2], vec![1, 3]]);
        assert_eq!(h.edge_index(&VertexSet::from([1, 3])), Some(2));
    }

    #[test]
    fn json_normalises() {
        let h: Hypergraph = serde_json::from_str(r#"{"n":3,"edges":[[2,1],[0,1]]}"#).unwrap();
        assert_eq!(serde_json::to_string(&h).unwrap(), r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        assert!(serde_json::from_str::<Hypergraph>(r#"{"n":2,"edges":[[]]}"#).is_err());
    }

    #[test]
    fn link_of_single_vertex() {
        let h = hg(4, &[&[0, 1, 2], &[0, 3]]);
        let link = h.link(&VertexSet::from([0]));
        assert_eq!(link.vertex_map, vec![1, 2, 3]);
        // host {1,2} -> local {0,1}; host {3} -> local {2}
        assert_eq!(link.hypergraph, hg(3, &[&[0, 1], &[2]]));
        assert!(!link.dropped_kernel_edge);
    }

    #[test]
    fn link_of_empty_set_is_identity() {
        let h = hg(4, &[&[0, 1, 2], &[0, 3]]);
        assert_eq!(h.link(&VertexSet::new()).hypergraph, h);
    }

    #[test]
    fn link_without_containing_edges() {
        let h = hg(3, &[&[0, 1]]);
        let link = h.link(&VertexSet::from([2]));
        assert_eq!(link.hypergraph.num_edges(), 0);
        assert_eq!(link.hypergraph.n(), 2);
    }

    #[test]
    fn link_flags_kernel_edge() {
        let h = hg(3, &[&[0], &[0, 1]]);
        let link = h.link(&VertexSet::from([0]));
        assert!(link.dropped_kernel_edge);
        assert_eq!(link.hypergraph.num_edges(), 1);
    }

    #[test]
    fn t_intersecting_examples() {
        assert!(hg(4, &[&[0, 1, 2], &[1, 2, 3]]).is_t_intersecting(2));
        assert!(!hg(4, &[&[0, 1], &[2, 3]]).is_t_intersecting(1));
        assert!(hg(4, &[&[0]]).is_t_intersecting(5));
    }

    #[test]
    fn small_edges_are_linted() {
        let h = hg(4, &[&[0], &[0, 1, 2]]);
        assert!(h.is_t_intersecting(1));
        assert_eq!(h.small_edge_lint(2), vec![0]);
    }
}
