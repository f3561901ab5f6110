use serde::{Deserialize, Serialize};

use super::ProcedureError;
use crate::colouring::{colourable, is_c_strong, product_colouring, Colouring, StrongCheck, StrongColourCert};
use crate::hypergraph::Hypergraph;
use crate::structure::Bromeliad;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "branch")]
pub enum PruneOutcome {
    /// `H_j`, the edges of `h` missing petal `P_j` (1-based `j ≥ 2`), has
    /// `χ(H_j, b−1) ≥ r`. `edge_indices` index into `h`.
    SubHypergraph { j: usize, edge_indices: Vec<usize>, hypergraph: Hypergraph },
    /// Every `H_j` is (b−1)-strong colourable with `r−1` colours; their
    /// product with the petal colouring certifies `χ(h, b−1) ≤ b(r−1)^{b−1}`.
    Coloured { certificate: StrongColourCert, bound: u128 },
}

/// Splits `h` along the petals of a b-bromeliad.
///
/// For `j = 2..b` the edges disjoint from `P_j` form `H_j`. The first `j`
/// with `χ(H_j, b−1) ≥ r` (decided exactly) is returned. Otherwise the
/// product of the petal colouring (`P_j ↦ j−1`, all else `0`) with an
/// optimal (b−1)-strong colouring of each `H_j` is (b−1)-strong: an edge
/// meeting every petal sees `b−1` petal colours, and any other edge lies in
/// some `H_j`.
pub fn prune(h: &Hypergraph, bromeliad: &Bromeliad, r: usize) -> Result<PruneOutcome, ProcedureError> {
    let b = bromeliad.len();
    if b < 2 {
        return Err(ProcedureError::Precondition(format!("pruning needs b >= 2, got {b}")));
    }
    if let Err(v) = bromeliad.check() {
        return Err(ProcedureError::Precondition(format!("not a bromeliad: {v}")));
    }
    if let Some(i) = bromeliad.edges.iter().position(|e| !h.contains_edge(e)) {
        return Err(ProcedureError::Precondition(format!("bromeliad edge {} ({}) is not in h", i + 1, bromeliad.edges[i])));
    }
    let c = b - 1;
    let mut factors = Vec::with_capacity(b);
    let mut petal_colours = vec![0; h.n()];
    for j in 2..=b {
        let petal = &bromeliad.petals[j - 1];
        let (hj, edge_indices) = h.filter_edges(|e| e.is_disjoint(petal));
        let colouring = if r == 0 { None } else { colourable(&hj, c, r - 1) };
        match colouring {
            None => return Ok(PruneOutcome::SubHypergraph { j, edge_indices, hypergraph: hj }),
            Some(cj) => factors.push(cj),
        }
        for v in petal.iter() {
            petal_colours[v] = j - 1;
        }
    }
    let petal_colouring = Colouring::new(b, petal_colours)?;
    factors.insert(0, petal_colouring);
    let product = product_colouring(&factors)?;
    let bound = (b as u128).saturating_mul(super::saturating_pow((r - 1) as u128, c as u128));
    if product.k() as u128 > bound {
        return Err(ProcedureError::InvariantBroken(format!("product uses {} > {bound} colours", product.k())));
    }
    match is_c_strong(h, &product, c)? {
        StrongCheck::Strong(certificate) => Ok(PruneOutcome::Coloured { certificate, bound }),
        StrongCheck::Fails(f) => Err(ProcedureError::InvariantBroken(format!(
            "pruning product fails edge {} ({} < {} colours)",
            f.edge, f.seen, f.required
        ))),
    }
}
