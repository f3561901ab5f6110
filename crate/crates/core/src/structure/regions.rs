use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::StructureError;
use crate::hypergraph::{Hypergraph, VertexSet};

/// One block of a region partition: the vertices lying in exactly the
/// sequence edges named by `signature` (1-based positions).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub signature: Vec<usize>,
    pub vertices: VertexSet,
}

/// The partition of the vertex set cut out by an edge sequence. Blocks are
/// non-empty and sorted by signature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionPartition {
    pub edges: Vec<VertexSet>,
    pub blocks: Vec<Region>,
}

impl RegionPartition {
    /// Partition of `0..n` by `seq`; membership of the edges is not checked.
    pub fn of(n: usize, seq: &[VertexSet]) -> RegionPartition {
        let mut blocks: std::collections::BTreeMap<Vec<usize>, Vec<usize>> = Default::default();
        for v in 0..n {
            let sig: Vec<usize> = (0..seq.len()).filter(|&i| seq[i].contains(v)).map(|i| i + 1).collect();
            blocks.entry(sig).or_default().push(v);
        }
        RegionPartition {
            edges: seq.to_vec(),
            blocks: blocks
                .into_iter()
                .map(|(signature, vs)| Region { signature, vertices: VertexSet::from_sorted(vs) })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block(&self, signature: &[usize]) -> Option<&VertexSet> {
        self.blocks.iter().find(|r| r.signature == signature).map(|r| &r.vertices)
    }

    pub fn region_of(&self, v: usize) -> Option<&Region> {
        self.blocks.iter().find(|r| r.vertices.contains(v))
    }

    /// Blocks that `e` meets.
    pub fn met_by<'a>(&'a self, e: &'a VertexSet) -> impl Iterator<Item = &'a Region> + 'a {
        self.blocks.iter().filter(move |r| r.vertices.meets(e))
    }
}

/// Regions of an edge sequence of `h`. Every edge must belong to `h`.
pub fn regions(h: &Hypergraph, seq: &[VertexSet]) -> Result<RegionPartition, StructureError> {
    if let Some(position) = seq.iter().position(|e| !h.contains_edge(e)) {
        return Err(StructureError::UnknownEdge { position, edge: seq[position].clone() });
    }
    Ok(RegionPartition::of(h.n(), seq))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "reason")]
pub enum SplitReason {
    TooManyRegions { met: usize, k: usize },
    ContainsRegion { region: VertexSet },
}

/// The first edge (1-based `index`) breaking split-degeneracy.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("edge {index} of the sequence fails: {reason:?}")]
pub struct SplitFailure {
    pub index: usize,
    pub reason: SplitReason,
}

/// Checks that each edge meets at most `k` regions of its predecessors and
/// contains none of them. For each position the region count is checked
/// before containment.
pub fn is_k_split_degenerate(h: &Hypergraph, seq: &[VertexSet], k: usize) -> Result<(), SplitFailure> {
    let mut blocks: Vec<VertexSet> = if h.n() > 0 { vec![h.vertices()] } else { Vec::new() };
    for (j, e) in seq.iter().enumerate() {
        let met = blocks.iter().filter(|b| b.meets(e)).count();
        if met > k {
            return Err(SplitFailure { index: j + 1, reason: SplitReason::TooManyRegions { met, k } });
        }
        if let Some(region) = blocks.iter().find(|b| b.is_subset(e)) {
            return Err(SplitFailure { index: j + 1, reason: SplitReason::ContainsRegion { region: region.clone() } });
        }
        blocks = blocks
            .iter()
            .flat_map(|b| [b.intersection(e), b.difference(e)])
            .filter(|b| !b.is_empty())
            .collect();
    }
    Ok(())
}

/// Checks that the subsequence at `indices` of a k-split-degenerate
/// sequence is again k-split-degenerate. A failure here is a bug in the
/// split-degeneracy check, never bad input.
pub fn subsequence_check(h: &Hypergraph, seq: &[VertexSet], k: usize, indices: &[usize]) -> Result<(), StructureError> {
    if let Err(f) = is_k_split_degenerate(h, seq, k) {
        return Err(StructureError::Precondition(format!("sequence is not {k}-split-degenerate: {f}")));
    }
    if !indices.windows(2).all(|w| w[0] < w[1]) || indices.last().is_some_and(|&i| i >= seq.len()) {
        return Err(StructureError::Precondition("indices must be increasing and in range".into()));
    }
    let sub: Vec<VertexSet> = indices.iter().map(|&i| seq[i].clone()).collect();
    is_k_split_degenerate(h, &sub, k)
        .map_err(|f| StructureError::InvariantBroken(format!("subsequence {indices:?} lost split-degeneracy: {f}")))
}
