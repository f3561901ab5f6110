use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GeneratorError;
use crate::hypergraph::{Hypergraph, VertexSet};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seeded t-intersecting hypergraph with `m` distinct edges on `n` vertices.
///
/// Algorithm: draw one core `T` of `t` vertices (a uniformly shuffled prefix
/// of `0..n`); each edge is `T` plus every other vertex independently with
/// probability 1/2, duplicates (and the empty edge when `t = 0`) rejected.
/// Gives up after `64m + 1024` draws. All edges share `T`, so the family is
/// far from uniform over t-intersecting hypergraphs.
pub fn random_t_intersecting(n: usize, m: usize, t: usize, seed: u64) -> Result<Hypergraph, GeneratorError> {
    if t > n {
        return Err(GeneratorError::InvalidParameters(format!("core size t={t} exceeds n={n}")));
    }
    let available = 1u128
        .checked_shl((n - t) as u32)
        .map(|c| if t == 0 { c - 1 } else { c })
        .unwrap_or(u128::MAX);
    if m as u128 > available {
        return Err(GeneratorError::Unsatisfiable(format!("only {available} distinct edges contain a fixed {t}-set in {n} vertices")));
    }
    let mut rng = rng(seed);
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(&mut rng);
    let core = VertexSet::from_unsorted(ids[..t].to_vec());
    let others = &ids[t..];
    let mut edges = BTreeSet::new();
    let mut draws = 0;
    while edges.len() < m {
        draws += 1;
        if draws > 64 * m + 1024 {
            return Err(GeneratorError::Unsatisfiable(format!("{m} distinct edges not found in {} draws", draws - 1)));
        }
        let extra: VertexSet = others.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        let edge = core.union(&extra);
        if !edge.is_empty() {
            edges.insert(edge);
        }
    }
    let h = Hypergraph::from_sets(n, edges)?;
    if !h.is_t_intersecting(t) {
        return Err(GeneratorError::Unsatisfiable("generated family is not t-intersecting".into()));
    }
    Ok(h)
}

/// Up to `m` distinct random edges with sizes uniform in `1..=max_edge_size`.
/// Fewer edges come back only when distinct ones run out.
pub fn random_hypergraph(n: usize, m: usize, max_edge_size: usize, seed: u64) -> Hypergraph {
    let mut rng = rng(seed);
    let top = max_edge_size.min(n);
    let mut edges = BTreeSet::new();
    if top == 0 {
        return Hypergraph::edgeless(n);
    }
    let ids: Vec<usize> = (0..n).collect();
    for _ in 0..(20 * m + 100) {
        if edges.len() == m {
            break;
        }
        let size = rng.gen_range(1..=top);
        let edge: VertexSet = ids.choose_multiple(&mut rng, size).copied().collect();
        edges.insert(edge);
    }
    Hypergraph::from_sets(n, edges).expect("generated edges are valid")
}

/// Erdős–Rényi graph `G(n, p)` as a 2-uniform hypergraph.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Hypergraph {
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push(vec![u, v]);
            }
        }
    }
    Hypergraph::new(n, edges).expect("generated edges are valid")
}

/// A random hypergraph with a known b-bromeliad planted in it.
#[derive(Clone, Debug)]
pub struct PlantedBromeliad {
    pub hypergraph: Hypergraph,
    /// The planted edges in bromeliad order.
    pub bromeliad: Vec<VertexSet>,
}

/// Plants a b-bromeliad (strictly nested random cores inside the outer
/// edge, disjoint non-empty petals outside it) on at most `max_vertices`
/// vertices, then adds up to `extra_edges` random edges. Vertex ids are
/// shuffled.
pub fn planted_bromeliad(
    b: usize,
    max_vertices: usize,
    extra_edges: usize,
    seed: u64,
) -> Result<PlantedBromeliad, GeneratorError> {
    if b == 0 || 2 * b - 1 > max_vertices {
        return Err(GeneratorError::InvalidParameters(format!("a {b}-bromeliad needs at least {} vertices", 2 * b - 1)));
    }
    let mut rng = rng(seed);
    let slack = max_vertices - (2 * b - 1);
    let outer = b + rng.gen_range(0..=slack.min(2));
    let mut budget = max_vertices - outer - (b - 1);
    let petal_sizes: Vec<usize> = (1..b)
        .map(|_| {
            let extra = rng.gen_range(0..=budget.min(1));
            budget -= extra;
            1 + extra
        })
        .collect();
    let n = outer + petal_sizes.iter().sum::<usize>() + rng.gen_range(0..=budget.min(1));

    // core sizes: outer > s_2 > .. > s_b >= 1
    let mut sizes: Vec<usize> = (1..outer).collect();
    sizes.shuffle(&mut rng);
    sizes.truncate(b - 1);
    sizes.sort_unstable_by(|x, y| y.cmp(x));

    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(&mut rng);
    let mut core_order: Vec<usize> = (0..outer).collect();
    core_order.shuffle(&mut rng);
    let relabel = |ids: &[usize]| -> VertexSet { ids.iter().map(|&v| label[v]).collect() };

    let mut bromeliad = vec![relabel(&core_order)];
    let mut next = outer;
    for (size, petal) in sizes.iter().zip(&petal_sizes) {
        let mut ids = core_order[..*size].to_vec();
        ids.extend(next..next + petal);
        next += petal;
        bromeliad.push(relabel(&ids));
    }
    let noise = random_hypergraph(n, extra_edges, n.min(4), rng.gen());
    let mut edges: BTreeSet<VertexSet> = noise.edges().iter().cloned().collect();
    edges.extend(bromeliad.iter().cloned());
    let hypergraph = Hypergraph::from_sets(n, edges)?;
    Ok(PlantedBromeliad { hypergraph, bromeliad })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_single_edge() {
        assert!(random_t_intersecting(5, 1, 5, 3).is_ok());
        assert!(matches!(random_t_intersecting(5, 3, 5, 3), Err(GeneratorError::Unsatisfiable(_))));
        assert!(random_t_intersecting(3, 1, 4, 0).is_err());
    }

    #[test]
    fn replayable_and_intersecting() {
        let h = random_t_intersecting(6, 4, 2, 7).unwrap();
        assert_eq!(h.num_edges(), 4);
        assert!(h.is_t_intersecting(2));
        assert_eq!(h, random_t_intersecting(6, 4, 2, 7).unwrap());
    }

    #[test]
    fn random_families_are_seeded() {
        assert_eq!(random_hypergraph(7, 6, 3, 11), random_hypergraph(7, 6, 3, 11));
        assert_eq!(random_graph(6, 0.5, 2), random_graph(6, 0.5, 2));
        assert!(random_graph(5, 1.0, 0).num_edges() == 10);
    }

    #[test]
    fn planted_edges_are_present() {
        for seed in 0..50 {
            let p = planted_bromeliad(3, 8, 4, seed).unwrap();
            assert!(p.hypergraph.n() <= 8);
            assert_eq!(p.bromeliad.len(), 3);
            assert!(p.bromeliad.iter().all(|e| p.hypergraph.contains_edge(e)));
        }
    }
}
