mod common;

use std::collections::BTreeMap;

use hypercol::acceptance::{diagonal_fixture, single_step_fixture};
use hypercol::colouring::{chi_strong, Colouring};
use hypercol::generators::{planted_bromeliad, random_t_intersecting};
use hypercol::procedures::{
    extend_split_degenerate, prune, theorem41_colouring, trace_main_loop, validate_trace, BromeliadChoice, ExtensionOutcome,
    ProcedureError, PruneOutcome, Thm41Outcome, TraceParams, TraceRecord, TraceTermination,
};
use hypercol::structure::bromeliad_witness;
use hypercol::Hypergraph;

use common::naive_strong;

#[test]
fn pruning_reaches_the_colouring_branch_with_r3() {
    let mut coloured = 0;
    for seed in 0..60 {
        let planted = planted_bromeliad(3, 8, 3, seed).unwrap();
        let h = &planted.hypergraph;
        let b = bromeliad_witness(&planted.bromeliad).unwrap();
        match prune(h, &b, 3).unwrap() {
            PruneOutcome::Coloured { certificate, bound } => {
                coloured += 1;
                assert_eq!(bound, 3 * 2 * 2);
                assert!(certificate.colouring.num_used() as u128 <= bound);
                assert!(naive_strong(h, certificate.colouring.colours(), 2));
            }
            PruneOutcome::SubHypergraph { hypergraph, .. } => assert!(chi_strong(&hypergraph, 2).chi >= 3),
        }
    }
    assert!(coloured > 0, "no fixture reached the colouring branch");
}

#[test]
fn link_extremal_procedure_is_optimal() {
    // Vertex 0 with every edge of K_6 on 1..=6, plus one edge avoiding 0.
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for u in 1..=6 {
        for v in u + 1..=6 {
            edges.push(vec![0, u, v]);
        }
    }
    edges.push(vec![1, 2, 3, 4, 5, 6]);
    let h = Hypergraph::new(7, edges).unwrap();
    match theorem41_colouring(&h, 3).unwrap() {
        Thm41Outcome::Applied { certificate, link_chi, .. } => {
            assert_eq!(link_chi, 6);
            assert_eq!(certificate.colouring.num_used(), 7);
            assert_eq!(chi_strong(&h, 3).chi, 7);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn extension_accepts_supplied_link_colourings() {
    let h = Hypergraph::new(5, vec![vec![0, 1], vec![1, 2, 3], vec![0, 4]]).unwrap();
    let supplied: BTreeMap<usize, Colouring> = (0..5).map(|v| (v, Colouring::rainbow(5))).collect();
    let ext = extend_split_degenerate(&h, &[], 1, 2, Some(&supplied)).unwrap();
    match &ext.outcome {
        ExtensionOutcome::Extended { sequence, .. } => assert_eq!(sequence.len(), 1),
        ExtensionOutcome::Certified { certificate } => assert!(naive_strong(&h, certificate.colouring.colours(), 3)),
    }
    assert!(ext.product.num_used() as u128 <= ext.bound);
}

#[test]
fn diagonal_fixture_reaches_the_final_check() {
    let (h, params) = diagonal_fixture();
    let record = trace_main_loop(&h, &params).unwrap();
    assert_eq!(record.steps.len(), 4);
    match &record.termination {
        TraceTermination::Completed { diagonal: Some(d) } => {
            assert_eq!(d.steps, vec![1, 2, 3, 4]);
            assert!(d.dagger && d.precedes);
            assert_eq!((d.diagonal_crown, d.chosen_crown), (4, 8));
        }
        other => panic!("unexpected {other:?}"),
    }
    validate_trace(&h, &record).unwrap();

    let json = serde_json::to_string(&record).unwrap();
    let back: TraceRecord = serde_json::from_str(&json).unwrap();
    assert_eq!(back, record);
}

#[test]
fn minimal_choices_never_reach_the_diagonal() {
    let (h, params) = diagonal_fixture();
    let minimal = TraceParams { choice: BromeliadChoice::Minimal, ..params };
    let record = trace_main_loop(&h, &minimal).unwrap();
    assert_eq!(record.termination, TraceTermination::NoBromeliad { step: 2 });
    validate_trace(&h, &record).unwrap();

    for seed in 0..40 {
        let h = random_t_intersecting(8, 10, 1, seed).unwrap();
        let params = TraceParams { t: 1, ell: 1, p: 2, thresholds: vec![3, 2, 1, 0], step_cap: 8, choice: BromeliadChoice::Minimal };
        let record = trace_main_loop(&h, &params).unwrap();
        assert!(!matches!(record.termination, TraceTermination::Completed { diagonal: Some(_) }), "seed {seed}");
        validate_trace(&h, &record).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
    }
}

#[test]
fn single_step_fixture_validates() {
    let (h, params) = single_step_fixture();
    let record = trace_main_loop(&h, &params).unwrap();
    assert_eq!(record.steps.len(), 1);
    assert_eq!(record.steps[0].petal.as_slice(), &[3]);
    validate_trace(&h, &record).unwrap();
}

#[test]
fn tampered_records_are_rejected() {
    let (h, params) = single_step_fixture();
    let mut record = trace_main_loop(&h, &params).unwrap();
    record.steps[0].remaining_edges.pop();
    assert!(validate_trace(&h, &record).is_err());
}

#[test]
fn trace_guards() {
    let (h, mut params) = single_step_fixture();
    params.thresholds = vec![3, 3];
    assert!(matches!(trace_main_loop(&h, &params), Err(ProcedureError::ThresholdsNotDecreasing)));
    params.thresholds = (0..20).rev().collect();
    assert!(matches!(trace_main_loop(&h, &params), Err(ProcedureError::StepCapExceeded { .. })));
}
