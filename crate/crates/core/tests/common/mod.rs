#![allow(dead_code)]

use std::collections::BTreeSet;

use hypercol::{Hypergraph, VertexSet};
use proptest::prelude::*;

/// Small hypergraphs: `1..=max_n` vertices, up to `max_m` distinct edges.
pub fn hypergraph(max_n: usize, max_m: usize) -> impl Strategy<Value = Hypergraph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::btree_set(0..n, 1..=n), 0..=max_m).prop_map(move |edges| {
            let distinct: BTreeSet<VertexSet> = edges.into_iter().map(|e| e.into_iter().collect()).collect();
            Hypergraph::from_sets(n, distinct).unwrap()
        })
    })
}

pub fn naive_strong(h: &Hypergraph, colours: &[usize], c: usize) -> bool {
    h.edges().iter().all(|e| e.iter().map(|v| colours[v]).collect::<BTreeSet<_>>().len() >= c.min(e.len()))
}
