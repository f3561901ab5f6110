//! The main finiteness loop, run literally on a small hypergraph.
//!
//! Step `j` picks a b-bromeliad `B_j` in `H_{j−1}` compatible with the
//! pruned edges so far, prunes along one of its petals to get `e_j` and
//! `H_j`, and demands `χ(H_j, b−1) > χ_j`. After `Φ` steps a (b+1)-bromeliad
//! inside `(e_1..e_Φ)` yields a diagonal bromeliad `B′` with a strictly
//! smaller crown than `B_{i_1}`. With ≺-minimal choices that is a
//! contradiction, so a faithful run never gets there; choosing the first
//! bromeliad found instead lets fixtures exercise the final check.

use std::cmp::Ordering;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{prune, ProcedureError, PruneOutcome};
use crate::colouring::{colourable, is_c_strong, StrongColourCert};
use crate::hypergraph::{max_matching_at_least, Hypergraph, VertexSet};
use crate::structure::{
    bromeliad_witness, crown_compare, find_bromeliad, find_first_bromeliad, is_k_split_degenerate, Bromeliad,
    Compatibility,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BromeliadChoice {
    /// A ≺-minimal compatible bromeliad, as the proof requires.
    #[default]
    Minimal,
    /// The compatible bromeliad with the smallest position tuple.
    First,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceParams {
    pub t: usize,
    pub ell: usize,
    pub p: usize,
    /// `χ_0 > χ_1 > .. > χ_Φ`.
    pub thresholds: Vec<usize>,
    pub step_cap: usize,
    #[serde(default)]
    pub choice: BromeliadChoice,
}

impl TraceParams {
    pub fn b(&self) -> usize {
        self.t + self.ell + 1
    }

    pub fn k(&self) -> usize {
        (self.t + self.ell).saturating_sub(1)
    }

    /// `Φ`, the number of steps.
    pub fn steps(&self) -> usize {
        self.thresholds.len().saturating_sub(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    /// `j`, from 1.
    pub step: usize,
    pub bromeliad: Bromeliad,
    /// Host edge indices of `B_j`, in bromeliad order.
    pub bromeliad_edges: Vec<usize>,
    /// Position of `e_j` in `B_j`, from 1; never 1.
    pub pruned_position: usize,
    pub pruned_edge: VertexSet,
    pub petal: VertexSet,
    /// Host edge indices of `H_j`.
    pub remaining_edges: Vec<usize>,
    /// `χ_j`; `χ(H_j, b−1) > χ_j` was verified exactly.
    pub threshold: usize,
}

/// The final contradiction check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalCheck {
    /// Steps `i_1 < .. < i_{b+1}` whose pruned edges form `bromeliad`.
    pub steps: Vec<usize>,
    pub bromeliad: Bromeliad,
    /// `B′`: `bromeliad` without its outer edge.
    pub diagonal: Bromeliad,
    /// `e_{i_2} ∩ e_{i_3} = C_{i_3} ⊊ C_{i_2} = e_{i_1} ∩ e_{i_2}`.
    pub dagger: bool,
    pub diagonal_crown: usize,
    /// Crown size of `B_{i_1}`.
    pub chosen_crown: usize,
    /// `B′ ≺ B_{i_1}`.
    pub precedes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TraceTermination {
    /// `χ(h, t+ℓ) ≤ χ_0`; the loop is not needed.
    Bounded { certificate: StrongColourCert },
    /// `H_{step−1}` has no compatible b-bromeliad.
    NoBromeliad { step: usize },
    /// Every pruned part of `H_{step−1}` is `χ_step`-colourable, so
    /// `χ(H_{step−1}, b−1) ≤ bound`; for step 1 this bounds `h` itself.
    ThresholdUnmet { step: usize, certificate: StrongColourCert, bound: u128 },
    /// All `Φ` steps ran; `diagonal` is present when `(e_1..e_Φ)` holds a
    /// (b+1)-bromeliad.
    Completed { diagonal: Option<DiagonalCheck> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub params: TraceParams,
    pub b: usize,
    pub k: usize,
    /// `h` has no matching of size `p`.
    pub matching_free: bool,
    pub steps: Vec<TraceStep>,
    pub termination: TraceTermination,
}

pub type TraceOutcome = Result<TraceRecord, ProcedureError>;

impl TraceRecord {
    /// `(e_1, .., e_j)` for the recorded steps.
    pub fn sequence(&self) -> Vec<VertexSet> {
        self.steps.iter().map(|s| s.pruned_edge.clone()).collect()
    }
}

pub fn trace_main_loop(h: &Hypergraph, params: &TraceParams) -> TraceOutcome {
    let th = &params.thresholds;
    if th.is_empty() || !th.windows(2).all(|w| w[0] > w[1]) {
        return Err(ProcedureError::ThresholdsNotDecreasing);
    }
    if params.p < 2 {
        return Err(ProcedureError::Precondition(format!("p must be at least 2, got {}", params.p)));
    }
    if params.t + params.ell == 0 {
        return Err(ProcedureError::Precondition("t + ℓ must be positive".into()));
    }
    if params.steps() > params.step_cap {
        return Err(ProcedureError::StepCapExceeded { steps: params.steps(), cap: params.step_cap });
    }
    let (b, k) = (params.b(), params.k());
    let mut record = TraceRecord {
        params: params.clone(),
        b,
        k,
        matching_free: !max_matching_at_least(h, params.p),
        steps: Vec::new(),
        termination: TraceTermination::Completed { diagonal: None },
    };
    if let Some(col) = colourable(h, b - 1, th[0]) {
        let certificate = is_c_strong(h, &col, b - 1)?
            .cert()
            .ok_or_else(|| ProcedureError::InvariantBroken("solver colouring is not strong".into()))?;
        record.termination = TraceTermination::Bounded { certificate };
        return Ok(record);
    }

    let mut current: Vec<usize> = (0..h.num_edges()).collect();
    let mut seq: Vec<VertexSet> = Vec::new();
    for (j, &threshold) in th.iter().enumerate().skip(1) {
        let hj = h.sub_hypergraph(&current);
        let pool = hj.edges();
        let compat = Some(Compatibility { seq: &seq, k });
        let found = match params.choice {
            BromeliadChoice::Minimal => find_bromeliad(&hj, pool, b, compat),
            BromeliadChoice::First => find_first_bromeliad(&hj, pool, b, compat),
        };
        let Some(found) = found else {
            record.termination = TraceTermination::NoBromeliad { step: j };
            return Ok(record);
        };
        match prune(&hj, &found.bromeliad, threshold + 1)? {
            PruneOutcome::Coloured { certificate, bound } => {
                record.termination = TraceTermination::ThresholdUnmet { step: j, certificate, bound };
                return Ok(record);
            }
            PruneOutcome::SubHypergraph { j: position, edge_indices, .. } => {
                let pruned_edge = found.bromeliad.edges[position - 1].clone();
                let petal = found.bromeliad.petals[position - 1].clone();
                let bromeliad_edges = found.pool_indices.iter().map(|&i| current[i]).collect();
                let remaining: Vec<usize> = edge_indices.iter().map(|&i| current[i]).collect();
                seq.push(pruned_edge.clone());
                record.steps.push(TraceStep {
                    step: j,
                    bromeliad: found.bromeliad,
                    bromeliad_edges,
                    pruned_position: position,
                    pruned_edge,
                    petal,
                    remaining_edges: remaining.clone(),
                    threshold,
                });
                current = remaining;
            }
        }
    }
    let diagonal = diagonal_check(h, &record.steps, b)?;
    record.termination = TraceTermination::Completed { diagonal };
    Ok(record)
}

/// Looks for a (b+1)-bromeliad among the pruned edges and, if there is one,
/// compares its diagonal b-bromeliad with the bromeliad chosen at its first
/// step.
pub fn diagonal_check(h: &Hypergraph, steps: &[TraceStep], b: usize) -> Result<Option<DiagonalCheck>, ProcedureError> {
    if b < 2 {
        return Err(ProcedureError::Precondition("the diagonal needs b >= 2".into()));
    }
    let seq: Vec<VertexSet> = steps.iter().map(|s| s.pruned_edge.clone()).collect();
    let Some(found) = find_first_bromeliad(h, &seq, b + 1, None) else {
        return Ok(None);
    };
    let big = found.bromeliad;
    let pos = found.pool_indices;
    let (e1, e2, e3) = (&seq[pos[0]], &seq[pos[1]], &seq[pos[2]]);
    let dagger = e2.intersection(e3) == big.cores[2]
        && big.cores[2].is_proper_subset(&big.cores[1])
        && big.cores[1] == e1.intersection(e2);
    let diagonal = bromeliad_witness(&big.edges[1..])
        .map_err(|v| ProcedureError::InvariantBroken(format!("dropping the outer edge broke the bromeliad: {v}")))?;
    let chosen = &steps[pos[0]].bromeliad;
    let order = crown_compare(&diagonal, chosen)?;
    Ok(Some(DiagonalCheck {
        steps: pos.iter().map(|&i| i + 1).collect(),
        diagonal_crown: diagonal.crown().map_or(0, VertexSet::len),
        chosen_crown: chosen.crown().map_or(0, VertexSet::len),
        bromeliad: big,
        diagonal,
        dagger,
        precedes: order == Ordering::Less,
    }))
}

fn compatible(h: &Hypergraph, seq: &[VertexSet], edges: &[&VertexSet], k: usize) -> bool {
    edges.iter().all(|&e| {
        let mut s = seq.to_vec();
        s.push(e.clone());
        is_k_split_degenerate(h, &s, k).is_ok()
    })
}

/// Re-derives every invariant of a trace from scratch, without the search
/// routines that produced it. Returns the first violated invariant.
///
/// Minimality of `B_j` is checked against all b-permutations of `H_{j−1}`
/// when the record was produced with [`BromeliadChoice::Minimal`].
pub fn validate_trace(h: &Hypergraph, record: &TraceRecord) -> Result<(), String> {
    let params = &record.params;
    let (b, k) = (params.b(), params.k());
    if record.b != b || record.k != k {
        return Err(format!("record has b={}, k={}; parameters give b={b}, k={k}", record.b, record.k));
    }
    let all: Vec<usize> = (0..h.num_edges()).collect();
    let mut prev: &[usize] = &all;
    let mut seq: Vec<VertexSet> = Vec::new();
    for (i, step) in record.steps.iter().enumerate() {
        let j = i + 1;
        if step.step != j {
            return Err(format!("step {} recorded at position {j}", step.step));
        }
        let edge = |x: usize| h.edge(x).ok_or_else(|| format!("step {j}: edge index {x} out of range"));
        if !step.remaining_edges.iter().all(|x| prev.binary_search(x).is_ok()) {
            return Err(format!("step {j}: H_{j} is not inside H_{}", j - 1));
        }
        if !step.bromeliad_edges.iter().all(|x| prev.binary_search(x).is_ok()) {
            return Err(format!("step {j}: B_{j} is not inside H_{}", j - 1));
        }
        let b_edges: Vec<VertexSet> = step.bromeliad_edges.iter().map(|&x| edge(x).cloned()).collect::<Result<_, _>>()?;
        if b_edges.len() != b || b_edges != step.bromeliad.edges {
            return Err(format!("step {j}: B_{j} does not match its edge indices"));
        }
        let witness = bromeliad_witness(&b_edges).map_err(|v| format!("step {j}: B_{j} is not a bromeliad: {v}"))?;
        if witness != step.bromeliad {
            return Err(format!("step {j}: B_{j} has a non-canonical witness"));
        }
        if !compatible(h, &seq, &b_edges.iter().collect::<Vec<_>>(), k) {
            return Err(format!("step {j}: B_{j} is not {k}-compatible with the pruned edges"));
        }
        let pos = step.pruned_position;
        if pos < 2 || pos > b || b_edges[pos - 1] != step.pruned_edge || step.pruned_edge == b_edges[0] {
            return Err(format!("step {j}: e_{j} is not a non-outer edge of B_{j}"));
        }
        if step.petal != step.pruned_edge.difference(&b_edges[0]) {
            return Err(format!("step {j}: recorded petal is not the petal of e_{j}"));
        }
        let remaining: Vec<VertexSet> = step.remaining_edges.iter().map(|&x| edge(x).cloned()).collect::<Result<_, _>>()?;
        if let Some(e) = remaining.iter().find(|e| e.meets(&step.petal)) {
            return Err(format!("step {j}: edge {e} of H_{j} meets the petal {}", step.petal));
        }
        let expected: Vec<usize> = prev.iter().copied().filter(|&x| h.edges()[x].is_disjoint(&step.petal)).collect();
        if expected != step.remaining_edges {
            return Err(format!("step {j}: H_{j} is not the part of H_{} missing the petal", j - 1));
        }
        if params.thresholds.get(j) != Some(&step.threshold) {
            return Err(format!("step {j}: threshold differs from the parameters"));
        }
        if colourable(&h.sub_hypergraph(&step.remaining_edges), b - 1, step.threshold).is_some() {
            return Err(format!("step {j}: χ(H_{j}, {}) does not exceed {}", b - 1, step.threshold));
        }
        if params.choice == BromeliadChoice::Minimal {
            let crown = step.bromeliad.crown().map_or(0, VertexSet::len);
            let pool: Vec<&VertexSet> = prev.iter().map(|&x| &h.edges()[x]).collect();
            let better = pool.iter().copied().permutations(b).find(|cand| {
                let owned: Vec<VertexSet> = cand.iter().map(|&e| e.clone()).collect();
                bromeliad_witness(&owned).is_ok_and(|w| w.crown().map_or(0, VertexSet::len) < crown)
                    && compatible(h, &seq, cand, k)
            });
            if let Some(cand) = better {
                return Err(format!("step {j}: B_{j} is not ≺-minimal, {cand:?} has a smaller crown"));
            }
        }
        seq.push(step.pruned_edge.clone());
        prev = &step.remaining_edges;
    }
    if is_k_split_degenerate(h, &seq, k).is_err() {
        return Err(format!("pruned edges are not {k}-split-degenerate"));
    }
    match &record.termination {
        TraceTermination::Completed { diagonal } => {
            if record.steps.len() != params.steps() {
                return Err("completed trace has the wrong number of steps".into());
            }
            if let Some(d) = diagonal {
                let edges: Vec<VertexSet> = d.steps.iter().map(|&s| seq[s - 1].clone()).collect();
                if !d.steps.windows(2).all(|w| w[0] < w[1]) || edges != d.bromeliad.edges {
                    return Err("diagonal bromeliad does not come from the pruned edges".into());
                }
                if bromeliad_witness(&edges).as_ref() != Ok(&d.bromeliad) {
                    return Err("diagonal host is not a (b+1)-bromeliad".into());
                }
                let (e1, e2, e3) = (&edges[0], &edges[1], &edges[2]);
                let c3 = e2.intersection(e3);
                if !d.dagger || !c3.is_proper_subset(&e1.intersection(e2)) || c3 != d.bromeliad.cores[2] {
                    return Err("the inclusion e_{i2} ∩ e_{i3} = C_{i3} ⊊ C_{i2} fails".into());
                }
                let chosen = &record.steps[d.steps[0] - 1].bromeliad;
                let chosen_crown = chosen.crown().map_or(0, VertexSet::len);
                if !d.precedes || c3.len() >= chosen_crown || d.chosen_crown != chosen_crown {
                    return Err("diagonal bromeliad does not precede B_{i1}".into());
                }
                if params.choice == BromeliadChoice::Minimal {
                    return Err("a minimal trace reached the diagonal contradiction".into());
                }
            }
        }
        TraceTermination::NoBromeliad { step } | TraceTermination::ThresholdUnmet { step, .. } => {
            if *step != record.steps.len() + 1 {
                return Err("termination step does not follow the last recorded step".into());
            }
            if let TraceTermination::ThresholdUnmet { certificate, bound, .. } = &record.termination {
                let hj = h.sub_hypergraph(prev);
                if !is_c_strong(&hj, &certificate.colouring, b - 1).is_ok_and(|c| c.is_strong())
                    || certificate.colouring.k() as u128 > *bound
                {
                    return Err(format!("threshold certificate does not colour H_{}", step - 1));
                }
            }
        }
        TraceTermination::Bounded { certificate } => {
            if !record.steps.is_empty()
                || certificate.colouring.k() > params.thresholds[0]
                || !is_c_strong(h, &certificate.colouring, b - 1).is_ok_and(|c| c.is_strong())
            {
                return Err("bounded certificate is invalid".into());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(thresholds: Vec<usize>, choice: BromeliadChoice) -> TraceParams {
        TraceParams { t: 1, ell: 1, p: 2, thresholds, step_cap: 8, choice }
    }

    #[test]
    fn guards() {
        let h = Hypergraph::new(3, vec![vec![0, 1]]).unwrap();
        let bad = params(vec![3, 3], BromeliadChoice::Minimal);
        assert_eq!(trace_main_loop(&h, &bad), Err(ProcedureError::ThresholdsNotDecreasing));
        let long = TraceParams { step_cap: 1, ..params(vec![5, 4, 3], BromeliadChoice::Minimal) };
        assert_eq!(trace_main_loop(&h, &long), Err(ProcedureError::StepCapExceeded { steps: 2, cap: 1 }));
        let p1 = TraceParams { p: 1, ..params(vec![3], BromeliadChoice::Minimal) };
        assert!(matches!(trace_main_loop(&h, &p1), Err(ProcedureError::Precondition(_))));
    }

    #[test]
    fn easy_host_is_bounded() {
        let h = Hypergraph::new(3, vec![vec![0, 1]]).unwrap();
        let rec = trace_main_loop(&h, &params(vec![2, 1], BromeliadChoice::Minimal)).unwrap();
        assert!(matches!(rec.termination, TraceTermination::Bounded { .. }));
        validate_trace(&h, &rec).unwrap();
    }
}
