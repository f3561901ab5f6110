use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Hypergraph, VertexSet};

/// Edges whose pairwise intersections all equal a common kernel. One petal
/// may be empty (an edge equal to the kernel); edges are distinct, so never
/// two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sunflower {
    /// Indices into the host hypergraph, increasing.
    pub edges: Vec<usize>,
    pub kernel: VertexSet,
    pub petals: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SunflowerViolation {
    #[error("edge index {0} is not an edge of the host")]
    UnknownEdge(usize),
    #[error("edge indices are not strictly increasing")]
    Unordered,
    #[error("{edges} edges but {petals} petals")]
    PetalCount { edges: usize, petals: usize },
    #[error("petal {0} meets the kernel")]
    PetalMeetsKernel(usize),
    #[error("petals {0} and {1} overlap")]
    PetalsOverlap(usize, usize),
    #[error("edge {0} is not kernel plus petal")]
    NotKernelPlusPetal(usize),
    #[error("edges {0} and {1} do not meet exactly in the kernel")]
    WrongIntersection(usize, usize),
}

impl Sunflower {
    pub fn num_petals(&self) -> usize {
        self.petals.len()
    }

    /// Re-checks every sunflower invariant against the host.
    pub fn check(&self, h: &Hypergraph) -> Result<(), SunflowerViolation> {
        if self.edges.len() != self.petals.len() {
            return Err(SunflowerViolation::PetalCount { edges: self.edges.len(), petals: self.petals.len() });
        }
        if !self.edges.windows(2).all(|w| w[0] < w[1]) {
            return Err(SunflowerViolation::Unordered);
        }
        let mut sets = Vec::with_capacity(self.edges.len());
        for &i in &self.edges {
            sets.push(h.edge(i).ok_or(SunflowerViolation::UnknownEdge(i))?);
        }
        for (i, petal) in self.petals.iter().enumerate() {
            if petal.meets(&self.kernel) {
                return Err(SunflowerViolation::PetalMeetsKernel(i));
            }
            if &self.kernel.union(petal) != sets[i] {
                return Err(SunflowerViolation::NotKernelPlusPetal(i));
            }
        }
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if self.petals[i].meets(&self.petals[j]) {
                    return Err(SunflowerViolation::PetalsOverlap(i, j));
                }
                if sets[i].intersection(sets[j]) != self.kernel {
                    return Err(SunflowerViolation::WrongIntersection(i, j));
                }
            }
        }
        Ok(())
    }
}

/// Lexicographically first sunflower with exactly `p` petals and a
/// kernel of at most `max_kernel` vertices, over increasing edge-index tuples.
///
/// Panics if `p < 2`.
pub fn find_sunflower(h: &Hypergraph, p: usize, max_kernel: usize) -> Option<Sunflower> {
    assert!(p >= 2, "a sunflower needs at least two petals");
    let edges = h.edges();
    let m = edges.len();
    if m < p {
        return None;
    }
    let mut chosen = Vec::with_capacity(p);
    for i in 0..=m - p {
        for j in i + 1..m {
            let kernel = edges[i].intersection(&edges[j]);
            if kernel.len() > max_kernel {
                continue;
            }
            chosen.clear();
            chosen.extend([i, j]);
            if extend_sunflower(edges, p, &kernel, &mut chosen) {
                let petals = chosen.iter().map(|&e| edges[e].difference(&kernel)).collect();
                return Some(Sunflower { edges: chosen, kernel, petals });
            }
        }
    }
    None
}

fn extend_sunflower(edges: &[VertexSet], p: usize, kernel: &VertexSet, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == p {
        return true;
    }
    let start = chosen.last().map_or(0, |&l| l + 1);
    let needed = p - chosen.len();
    for j in start..edges.len() {
        if edges.len() - j < needed {
            break;
        }
        let e = &edges[j];
        if !kernel.is_subset(e) {
            continue;
        }
        if chosen.iter().all(|&c| edges[c].intersection_len(e) == kernel.len()) {
            chosen.push(j);
            if extend_sunflower(edges, p, kernel, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// True iff `h` has `p` pairwise-disjoint edges.
pub fn max_matching_at_least(h: &Hypergraph, p: usize) -> bool {
    if p == 0 {
        return true;
    }
    // Small edges first: they block fewer later choices.
    let mut order: Vec<&VertexSet> = h.edges().iter().collect();
    order.sort_by_key(|e| e.len());
    let mut used = vec![false; h.n()];
    matching_dfs(&order, 0, p, &mut used)
}

fn matching_dfs(edges: &[&VertexSet], start: usize, needed: usize, used: &mut [bool]) -> bool {
    if needed == 0 {
        return true;
    }
    let free = used.iter().filter(|&&u| !u).count();
    for i in start..edges.len() {
        if edges.len() - i < needed {
            return false;
        }
        // every remaining edge has at least |edges[i]| vertices
        if needed * edges[i].len() > free {
            return false;
        }
        if edges[i].iter().any(|v| used[v]) {
            continue;
        }
        edges[i].iter().for_each(|v| used[v] = true);
        let found = matching_dfs(edges, i + 1, needed - 1, used);
        edges[i].iter().for_each(|v| used[v] = false);
        if found {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn matching_is_an_empty_kernel_sunflower() {
        let h = hg(6, &[&[0, 1], &[2, 3], &[4, 5]]);
        let s = find_sunflower(&h, 3, 0).unwrap();
        assert!(s.kernel.is_empty());
        assert_eq!(s.edges, vec![0, 1, 2]);
        s.check(&h).unwrap();
    }

    #[test]
    fn common_vertex_kernel() {
        let h = hg(7, &[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]]);
        let s = find_sunflower(&h, 3, 1).unwrap();
        assert_eq!(s.kernel, VertexSet::from([0]));
        s.check(&h).unwrap();
        assert!(find_sunflower(&h, 3, 0).is_none());
    }

    #[test]
    fn kernel_too_large() {
        let h = hg(4, &[&[0, 1, 2], &[1, 2, 3]]);
        assert!(find_sunflower(&h, 2, 0).is_none());
        assert!(find_sunflower(&h, 2, 2).is_some());
    }

    #[test]
    fn edge_equal_to_kernel_has_empty_petal() {
        let h = hg(3, &[&[0], &[0, 1], &[0, 2]]);
        let s = find_sunflower(&h, 2, 1).unwrap();
        assert_eq!(s.edges, vec![0, 1]);
        assert_eq!(s.petals, vec![VertexSet::new(), VertexSet::from([1])]);
        let s = find_sunflower(&h, 3, 1).unwrap();
        s.check(&h).unwrap();
        // Nested edges with a small intersection are what breaks
        // 2-intersection.
        let h = hg(2, &[&[0], &[0, 1]]);
        assert!(!h.is_t_intersecting(2));
        assert!(find_sunflower(&h, 2, 1).is_some());
    }

    #[test]
    fn lexicographically_first_certificate() {
        let h = hg(8, &[&[0, 1], &[2, 3], &[4, 5], &[6, 7]]);
        assert_eq!(find_sunflower(&h, 2, 0).unwrap().edges, vec![0, 1]);
        assert_eq!(find_sunflower(&h, 4, 0).unwrap().edges, vec![0, 1, 2, 3]);
    }

    #[test]
    fn check_catches_bad_certificates() {
        let h = hg(4, &[&[0, 1], &[0, 2], &[1, 2]]);
        let bad = Sunflower {
            edges: vec![0, 2],
            kernel: VertexSet::new(),
            petals: vec![VertexSet::from([0, 1]), VertexSet::from([1, 2])],
        };
        assert_eq!(bad.check(&h), Err(SunflowerViolation::PetalsOverlap(0, 1)));
    }

    #[test]
    fn matchings() {
        assert!(max_matching_at_least(&hg(4, &[&[0, 1], &[2, 3]]), 2));
        assert!(!max_matching_at_least(&hg(3, &[&[0, 1], &[1, 2]]), 2));
        assert!(max_matching_at_least(&hg(3, &[&[0, 1, 2]]), 1));
        assert!(max_matching_at_least(&Hypergraph::edgeless(3), 0));
        assert!(!max_matching_at_least(&Hypergraph::edgeless(3), 1));
    }
}
