use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{is_k_split_degenerate, StructureError};
use crate::hypergraph::{Hypergraph, VertexSet};

/// An edge sequence `e_1..e_b` with cores `C_i` and petals `P_i`
/// partitioning each edge, where `e_1 = C_1 ⊋ C_2 ⊋ .. ⊋ C_b ≠ ∅` and
/// `P_1, .., P_b, C_1` are pairwise disjoint.
///
/// The witness is unique: `C_i = e_i ∩ e_1` and `P_i = e_i ∖ e_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bromeliad {
    pub edges: Vec<VertexSet>,
    pub cores: Vec<VertexSet>,
    pub petals: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum BromeliadViolation {
    #[error("a bromeliad has at least one edge")]
    Empty,
    #[error("{edges} edges, {cores} cores, {petals} petals")]
    Shape { edges: usize, cores: usize, petals: usize },
    #[error("core and petal {0} do not partition edge {0}")]
    NotPartition(usize),
    #[error("first core differs from the outer edge")]
    OuterCore,
    #[error("core {0} is not a proper subset of core {prev}", prev = .0 - 1)]
    NotNested(usize),
    #[error("last core is empty")]
    EmptyCore,
    #[error("petals {0} and {1} overlap")]
    PetalsOverlap(usize, usize),
    #[error("petal {0} meets the outer edge")]
    PetalMeetsOuter(usize),
    #[error("edges {0} and {1} disagree with the witness")]
    WitnessMismatch(usize, usize),
}

impl Bromeliad {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn outer(&self) -> &VertexSet {
        &self.edges[0]
    }

    /// `C_2 = e_2 ∩ e_1`; absent for single-edge bromeliads.
    pub fn crown(&self) -> Option<&VertexSet> {
        self.cores.get(1)
    }

    /// Re-checks every clause of the definition plus the pairwise witness
    /// identities, in a fixed order; the first failing clause is reported
    /// with 1-based positions.
    pub fn check(&self) -> Result<(), BromeliadViolation> {
        let b = self.edges.len();
        if b == 0 {
            return Err(BromeliadViolation::Empty);
        }
        if self.cores.len() != b || self.petals.len() != b {
            return Err(BromeliadViolation::Shape { edges: b, cores: self.cores.len(), petals: self.petals.len() });
        }
        for i in 0..b {
            let (c, p) = (&self.cores[i], &self.petals[i]);
            if c.meets(p) || c.union(p) != self.edges[i] {
                return Err(BromeliadViolation::NotPartition(i + 1));
            }
        }
        if self.cores[0] != self.edges[0] {
            return Err(BromeliadViolation::OuterCore);
        }
        for i in 1..b {
            if !self.cores[i].is_proper_subset(&self.cores[i - 1]) {
                return Err(BromeliadViolation::NotNested(i + 1));
            }
        }
        if self.cores[b - 1].is_empty() {
            return Err(BromeliadViolation::EmptyCore);
        }
        for i in 0..b {
            if self.petals[i].meets(&self.cores[0]) {
                return Err(BromeliadViolation::PetalMeetsOuter(i + 1));
            }
            for j in i + 1..b {
                if self.petals[i].meets(&self.petals[j]) {
                    return Err(BromeliadViolation::PetalsOverlap(i + 1, j + 1));
                }
            }
        }
        for i in 0..b {
            for j in i + 1..b {
                let (ei, ej) = (&self.edges[i], &self.edges[j]);
                if ei.intersection(ej) != self.cores[j] || ej.difference(ei) != self.petals[j] {
                    return Err(BromeliadViolation::WitnessMismatch(i + 1, j + 1));
                }
            }
        }
        Ok(())
    }
}

/// Computes the only possible witness of `seq` and validates it.
pub fn bromeliad_witness(seq: &[VertexSet]) -> Result<Bromeliad, BromeliadViolation> {
    let outer = seq.first().ok_or(BromeliadViolation::Empty)?;
    let bromeliad = Bromeliad {
        edges: seq.to_vec(),
        cores: seq.iter().map(|e| e.intersection(outer)).collect(),
        petals: seq.iter().map(|e| e.difference(outer)).collect(),
    };
    bromeliad.check()?;
    Ok(bromeliad)
}

/// The order `≺`: compares crown sizes.
pub fn crown_compare(a: &Bromeliad, b: &Bromeliad) -> Result<Ordering, StructureError> {
    match (a.crown(), b.crown()) {
        (Some(x), Some(y)) => Ok(x.len().cmp(&y.len())),
        _ => Err(StructureError::NoCrown),
    }
}

/// A bromeliad found in a pool, with the pool positions it uses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundBromeliad {
    pub bromeliad: Bromeliad,
    pub pool_indices: Vec<usize>,
}

/// Compatibility requirement: every bromeliad edge appended alone to `seq`
/// must keep it k-split-degenerate.
#[derive(Clone, Copy, Debug)]
pub struct Compatibility<'a> {
    pub seq: &'a [VertexSet],
    pub k: usize,
}

/// The `≺`-minimal b-bromeliad among the sequences of `b` distinct pool
/// edges (in any order), ties broken by the lexicographically smallest
/// position tuple.
/// For `b = 1` there is no crown and the first admissible edge wins.
pub fn find_bromeliad(
    h: &Hypergraph,
    pool: &[VertexSet],
    b: usize,
    compat: Option<Compatibility<'_>>,
) -> Option<FoundBromeliad> {
    search_bromeliad(h, pool, b, compat, false)
}

/// The b-bromeliad with the lexicographically smallest position tuple,
/// ignoring `≺`.
pub fn find_first_bromeliad(
    h: &Hypergraph,
    pool: &[VertexSet],
    b: usize,
    compat: Option<Compatibility<'_>>,
) -> Option<FoundBromeliad> {
    search_bromeliad(h, pool, b, compat, true)
}

fn search_bromeliad(
    h: &Hypergraph,
    pool: &[VertexSet],
    b: usize,
    compat: Option<Compatibility<'_>>,
    first_only: bool,
) -> Option<FoundBromeliad> {
    if b == 0 {
        return None;
    }
    let admissible: Vec<usize> = (0..pool.len())
        .filter(|&i| {
            compat.is_none_or(|c| {
                let mut s = c.seq.to_vec();
                s.push(pool[i].clone());
                is_k_split_degenerate(h, &s, c.k).is_ok()
            })
        })
        .collect();
    let first_only = first_only || b == 1;
    let mut search = BromeliadSearch { pool, admissible: &admissible, b, first_only, chosen: Vec::new(), best: None };
    for &first in &admissible {
        search.chosen.push(first);
        let outer = &pool[first];
        search.extend(outer, outer, &VertexSet::new());
        search.chosen.pop();
        if search.done() {
            break;
        }
    }
    let (_, indices) = search.best?;
    let seq: Vec<VertexSet> = indices.iter().map(|&i| pool[i].clone()).collect();
    let bromeliad = bromeliad_witness(&seq).expect("search only assembles valid bromeliads");
    Some(FoundBromeliad { bromeliad, pool_indices: indices })
}

struct BromeliadSearch<'a> {
    pool: &'a [VertexSet],
    admissible: &'a [usize],
    b: usize,
    first_only: bool,
    chosen: Vec<usize>,
    best: Option<(usize, Vec<usize>)>,
}

impl BromeliadSearch<'_> {
    fn done(&self) -> bool {
        self.first_only && self.best.is_some()
    }

    // Cores strictly shrink, so no position can repeat and every slot may be
    // tried at every depth.
    fn extend(&mut self, outer: &VertexSet, last_core: &VertexSet, petals: &VertexSet) {
        if self.chosen.len() == self.b {
            let crown = if self.b >= 2 { self.pool[self.chosen[1]].intersection_len(outer) } else { 0 };
            if self.best.as_ref().is_none_or(|(c, _)| crown < *c) {
                self.best = Some((crown, self.chosen.clone()));
            }
            return;
        }
        for &idx in self.admissible {
            if self.done() {
                return;
            }
            let e = &self.pool[idx];
            let core = e.intersection(outer);
            if core.is_empty() || !core.is_proper_subset(last_core) {
                continue;
            }
            if !self.first_only && self.chosen.len() == 1 && self.best.as_ref().is_some_and(|(c, _)| core.len() >= *c) {
                continue;
            }
            let petal = e.difference(outer);
            if petal.meets(petals) {
                continue;
            }
            self.chosen.push(idx);
            self.extend(outer, &core, &petals.union(&petal));
            self.chosen.pop();
        }
    }
}
