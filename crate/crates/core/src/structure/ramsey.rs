//! The triple colouring behind the extraction of bromeliads from intersecting
//! split-degenerate sequences.
//!
//! For `i < j < l`, the triple is blue when `(e_i Δ e_j) ∩ e_l ≠ ∅` and red
//! otherwise. Large blue cliques cannot exist in a split-degenerate
//! sequence, and a red clique of pairwise-intersecting edges is a bromeliad
//! with `C_i = e_{a(i)} ∩ e_{a(1)}` and `P_i = e_{a(i)} ∖ e_{a(1)}`.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{bromeliad_witness, is_k_split_degenerate, Bromeliad, Region, RegionPartition, StructureError};
use crate::hypergraph::{Hypergraph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TripleColour {
    Blue,
    Red,
}

pub fn triple_classify(e1: &VertexSet, e2: &VertexSet, e3: &VertexSet) -> TripleColour {
    if e1.symmetric_difference(e2).meets(e3) {
        TripleColour::Blue
    } else {
        TripleColour::Red
    }
}

/// For a blue triple `(alpha, beta, last)` of positions in `seq`, the region
/// of `R(seq[..last])` inside `e_alpha Δ e_beta` that `e_last` meets. When
/// several qualify, the one with the smallest signature is returned.
pub fn blue_pair_region(n: usize, seq: &[VertexSet], alpha: usize, beta: usize, last: usize) -> Option<Region> {
    if !(alpha < beta && beta < last && last < seq.len()) {
        return None;
    }
    let diff = seq[alpha].symmetric_difference(&seq[beta]);
    RegionPartition::of(n, &seq[..last])
        .blocks
        .into_iter()
        .find(|r| r.vertices.is_subset(&diff) && r.vertices.meets(&seq[last]))
}

/// Builds the bromeliad carried by a red clique `a(1) < .. < a(b)` of an
/// intersecting k-split-degenerate sequence.
///
/// Precondition failures are reported as such; a constructed witness that
/// fails validation is reported as [`StructureError::InvariantBroken`].
pub fn red_clique_to_bromeliad(
    h: &Hypergraph,
    seq: &[VertexSet],
    k: usize,
    clique: &[usize],
) -> Result<Bromeliad, StructureError> {
    if clique.is_empty() || !clique.windows(2).all(|w| w[0] < w[1]) || clique[clique.len() - 1] >= seq.len() {
        return Err(StructureError::Precondition("clique positions must be increasing and in range".into()));
    }
    if let Err(f) = is_k_split_degenerate(h, seq, k) {
        return Err(StructureError::Precondition(format!("host sequence is not {k}-split-degenerate: {f}")));
    }
    let edges: Vec<&VertexSet> = clique.iter().map(|&i| &seq[i]).collect();
    if let Some((x, y)) = (0..edges.len()).tuple_combinations().find(|&(x, y)| edges[x].is_disjoint(edges[y])) {
        return Err(StructureError::Precondition(format!("clique edges {} and {} are disjoint", clique[x], clique[y])));
    }
    if let Some((x, y, z)) = (0..edges.len())
        .tuple_combinations()
        .find(|&(x, y, z)| triple_classify(edges[x], edges[y], edges[z]) == TripleColour::Blue)
    {
        return Err(StructureError::Precondition(format!(
            "triple ({}, {}, {}) is blue",
            clique[x], clique[y], clique[z]
        )));
    }
    let outer = edges[0];
    let bromeliad = Bromeliad {
        edges: edges.iter().map(|&e| e.clone()).collect(),
        cores: edges.iter().map(|e| e.intersection(outer)).collect(),
        petals: edges.iter().map(|e| e.difference(outer)).collect(),
    };
    bromeliad
        .check()
        .map_err(|v| StructureError::InvariantBroken(format!("red clique {clique:?} gave an invalid bromeliad: {v}")))?;
    debug_assert_eq!(bromeliad_witness(&bromeliad.edges).as_ref(), Ok(&bromeliad));
    Ok(bromeliad)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(ids: &[usize]) -> VertexSet {
        VertexSet::from_unsorted(ids.to_vec())
    }

    #[test]
    fn classification() {
        assert_eq!(triple_classify(&vs(&[1, 2]), &vs(&[1, 3]), &vs(&[2, 4])), TripleColour::Blue);
        assert_eq!(triple_classify(&vs(&[1, 2]), &vs(&[1, 3]), &vs(&[1, 5])), TripleColour::Red);
        let e = vs(&[1, 2]);
        assert_eq!(triple_classify(&e, &e, &vs(&[1, 2, 3])), TripleColour::Red);
    }

    #[test]
    fn single_edge_clique() {
        let seq = [vs(&[0, 1])];
        let h = Hypergraph::from_sets(4, seq.clone()).unwrap();
        let b = red_clique_to_bromeliad(&h, &seq, 3, &[0]).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b.cores[0], seq[0]);
    }

    #[test]
    fn three_edge_clique_matches_witness() {
        let seq = [vs(&[1, 2, 3]), vs(&[2, 3, 4]), vs(&[3, 5])];
        let h = Hypergraph::from_sets(7, seq.clone()).unwrap();
        assert!(is_k_split_degenerate(&h, &seq, 3).is_ok());
        let b = red_clique_to_bromeliad(&h, &seq, 3, &[0, 1, 2]).unwrap();
        assert_eq!(b, bromeliad_witness(&seq).unwrap());
    }

    #[test]
    fn blue_triple_rejected() {
        let seq = [vs(&[1, 2]), vs(&[1, 3]), vs(&[2, 4])];
        let h = Hypergraph::from_sets(6, seq.clone()).unwrap();
        let err = red_clique_to_bromeliad(&h, &seq, 5, &[0, 1, 2]).unwrap_err();
        assert!(matches!(err, StructureError::Precondition(_)));
    }

    #[test]
    fn blue_region_lookup() {
        let seq = [vs(&[1, 2]), vs(&[1, 3]), vs(&[2, 4])];
        let r = blue_pair_region(6, &seq, 0, 1, 2).unwrap();
        assert_eq!(r.vertices, vs(&[2]));
        assert_eq!(r.signature, vec![1]);
        assert!(blue_pair_region(6, &seq, 1, 0, 2).is_none());
    }
}
