use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{saturating_pow, ProcedureError};
use crate::colouring::{chi_strong, is_c_strong, product_colouring, Colouring, StrongCheck, StrongColourCert};
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::structure::{is_k_split_degenerate, regions, RegionPartition, StructureError};

/// Colours each region of `seq` from its own palette: regions smaller than
/// `c` are rainbow, larger ones are cut (ascending) into `c` contiguous
/// near-equal blocks, earlier blocks taking the extra vertices.
///
/// Uses at most `c·2^|seq|` colours. Panics if `c = 0` while `h` has
/// vertices.
pub fn regional_colouring(h: &Hypergraph, seq: &[VertexSet], c: usize) -> Result<Colouring, StructureError> {
    let partition = regions(h, seq)?;
    Ok(colour_regions(h.n(), &partition, c))
}

fn colour_regions(n: usize, partition: &RegionPartition, c: usize) -> Colouring {
    assert!(c > 0 || n == 0, "regional colouring needs c >= 1");
    let mut colours = vec![0; n];
    let mut next = 0;
    for region in &partition.blocks {
        let vs = region.vertices.as_slice();
        if vs.len() < c {
            for &v in vs {
                colours[v] = next;
                next += 1;
            }
            continue;
        }
        let (q, r) = (vs.len() / c, vs.len() % c);
        let mut at = 0;
        for block in 0..c {
            let size = q + usize::from(block < r);
            for &v in &vs[at..at + size] {
                colours[v] = next;
            }
            at += size;
            next += 1;
        }
    }
    Colouring::new(next, colours).expect("every colour is below the palette size")
}

/// `(t+ℓ)·2^L·K^((t+ℓ−1)·2^L)`, saturating.
pub fn split_colour_bound(t: usize, ell: usize, seq_len: usize, link_colours: usize) -> u128 {
    let regions = 1u128.checked_shl(seq_len as u32).unwrap_or(u128::MAX);
    let c = (t + ell) as u128;
    let head = c.saturating_mul(regions);
    let exp = c.saturating_sub(1).saturating_mul(regions);
    head.saturating_mul(saturating_pow(link_colours as u128, exp))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "branch")]
pub enum ExtensionOutcome {
    /// `edge` (index `edge_index` in the host) extends the sequence.
    Extended { edge_index: usize, edge: VertexSet, sequence: Vec<VertexSet> },
    /// The product colouring is (t+ℓ)-strong.
    Certified { certificate: StrongColourCert },
}

/// One extension step, with the colour accounting of its product colouring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extension {
    pub outcome: ExtensionOutcome,
    pub product: Colouring,
    /// Vertices in regions of size below `t + ℓ`, whose link colourings
    /// enter the product.
    pub small_region_vertices: Vec<usize>,
    /// Largest colour count among the link colourings (at least 1).
    pub link_colours: usize,
    pub bound: u128,
}

/// Extends a (t+ℓ−1)-split-degenerate sequence by one edge, or certifies
/// that no extension is forced.
///
/// The product of the (t+ℓ)-regional colouring with a colouring `c_v` per
/// small-region vertex is checked: the lowest-index edge seeing fewer than
/// `min(t+ℓ, |e|)` colours extends the sequence; if there is none the
/// product is a (t+ℓ)-strong colouring. Each `c_v` must be
/// (t+ℓ−1)-strong on the link of `v`; missing ones are computed exactly
/// and lifted with `v` coloured 0.
pub fn extend_split_degenerate(
    h: &Hypergraph,
    seq: &[VertexSet],
    t: usize,
    ell: usize,
    link_colourings: Option<&BTreeMap<usize, Colouring>>,
) -> Result<Extension, ProcedureError> {
    let c = t + ell;
    if c == 0 {
        return Err(ProcedureError::Precondition("t + ℓ must be positive".into()));
    }
    let k = c - 1;
    let partition = regions(h, seq)?;
    if let Err(f) = is_k_split_degenerate(h, seq, k) {
        return Err(ProcedureError::Precondition(format!("sequence is not {k}-split-degenerate: {f}")));
    }
    let small: Vec<usize> = partition
        .blocks
        .iter()
        .filter(|r| r.vertices.len() < c)
        .flat_map(|r| r.vertices.iter())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();

    let mut factors = vec![colour_regions(h.n(), &partition, c)];
    let mut link_colours = 1;
    for &v in &small {
        let link = h.link(&VertexSet::from_sorted(vec![v]));
        let cv = match link_colourings.and_then(|m| m.get(&v)) {
            Some(cv) => {
                let check = is_c_strong(&link.hypergraph, &cv.restrict_to_link(&link), k).map_err(|e| {
                    ProcedureError::InvalidLinkColouring { vertex: v, reason: e.to_string() }
                })?;
                if let StrongCheck::Fails(f) = check {
                    return Err(ProcedureError::InvalidLinkColouring {
                        vertex: v,
                        reason: format!("link edge {} sees {} < {} colours", f.edge, f.seen, f.required),
                    });
                }
                cv.clone()
            }
            None => chi_strong(&link.hypergraph, k).witness.lift_from_link(&link, h.n(), 0),
        };
        link_colours = link_colours.max(cv.num_used());
        factors.push(cv);
    }
    let product = product_colouring(&factors)?;
    let bound = split_colour_bound(t, ell, seq.len(), link_colours);

    let outcome = match is_c_strong(h, &product, c)? {
        StrongCheck::Strong(certificate) => ExtensionOutcome::Certified { certificate },
        StrongCheck::Fails(f) => {
            let mut sequence = seq.to_vec();
            sequence.push(f.edge.clone());
            if let Err(why) = is_k_split_degenerate(h, &sequence, k) {
                return Err(ProcedureError::InvariantBroken(format!(
                    "edge {} seeing {} colours does not extend the sequence: {why}",
                    f.edge, f.seen
                )));
            }
            ExtensionOutcome::Extended { edge_index: f.index, edge: f.edge, sequence }
        }
    };
    Ok(Extension { outcome, product, small_region_vertices: small, link_colours, bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(ids: &[usize]) -> VertexSet {
        VertexSet::from_unsorted(ids.to_vec())
    }

    #[test]
    fn one_region_three_blocks() {
        let h = Hypergraph::edgeless(6);
        let col = regional_colouring(&h, &[], 3).unwrap();
        assert_eq!(col.colours(), &[0, 0, 1, 1, 2, 2]);
        let col = regional_colouring(&Hypergraph::edgeless(7), &[], 3).unwrap();
        assert_eq!(col.colours(), &[0, 0, 0, 1, 1, 2, 2]);
    }

    #[test]
    fn small_region_is_rainbow() {
        let h = Hypergraph::new(6, vec![vec![0, 1]]).unwrap();
        let col = regional_colouring(&h, &[vs(&[0, 1])], 3).unwrap();
        // Region {} = {2..5} comes first by signature, then {1} = {0, 1}.
        assert_eq!(col.colours(), &[3, 4, 0, 0, 1, 2]);
        assert_eq!(col.k(), 5);
    }

    #[test]
    fn bound_saturates() {
        assert_eq!(split_colour_bound(1, 1, 0, 1), 2);
        assert_eq!(split_colour_bound(1, 2, 1, 3), 3 * 2 * 3u128.pow(4));
        assert_eq!(split_colour_bound(3, 3, 40, 5), u128::MAX);
    }

    #[test]
    fn strong_product_certifies() {
        // The one region splits into blocks {0,1},{2,3}, so the edge already
        // sees two colours.
        let h = Hypergraph::new(4, vec![vec![0, 1, 2, 3]]).unwrap();
        let ext = extend_split_degenerate(&h, &[], 1, 1, None).unwrap();
        assert!(matches!(ext.outcome, ExtensionOutcome::Certified { .. }));
        assert!(ext.small_region_vertices.is_empty());
    }

    #[test]
    fn small_edge_extends() {
        // With an empty sequence the single region {0..4} gets 3 blocks
        // {0,1},{2,3},{4}; the edge {0,1} sees one colour.
        let h = Hypergraph::new(5, vec![vec![0, 1], vec![0, 2, 4]]).unwrap();
        let ext = extend_split_degenerate(&h, &[], 1, 2, None).unwrap();
        match ext.outcome {
            ExtensionOutcome::Extended { edge_index, edge, sequence } => {
                assert_eq!(edge, vs(&[0, 1]));
                assert_eq!(edge_index, 0);
                assert!(is_k_split_degenerate(&h, &sequence, 2).is_ok());
            }
            other => panic!("expected an extension, got {other:?}"),
        }
    }

    #[test]
    fn bad_link_colouring_rejected() {
        let h = Hypergraph::new(4, vec![vec![0, 1], vec![0, 1, 2]]).unwrap();
        let seq = [vs(&[0, 1, 2])];
        // Region {1} = {0,1,2} is large (c = 2 < 3), {} = {3} is small.
        let mut supplied = BTreeMap::new();
        supplied.insert(3, Colouring::constant(4));
        let ext = extend_split_degenerate(&h, &seq, 1, 1, Some(&supplied)).unwrap();
        assert_eq!(ext.small_region_vertices, vec![3]);

        // With t + ℓ = 3 vertex 0 is small and its link {1},{1,2} needs a
        // 2-strong colouring, which a constant one is not.
        let seq = [vs(&[0, 1])];
        let mut supplied = BTreeMap::new();
        supplied.insert(0, Colouring::constant(4));
        let err = extend_split_degenerate(&h, &seq, 2, 1, Some(&supplied)).unwrap_err();
        assert!(matches!(err, ProcedureError::InvalidLinkColouring { vertex: 0, .. }));
    }

    #[test]
    fn rejects_non_degenerate_sequence() {
        let h = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        let err = extend_split_degenerate(&h, &[vs(&[0, 1])], 1, 1, None).unwrap_err();
        assert!(matches!(err, ProcedureError::Precondition(_)));
    }
}
