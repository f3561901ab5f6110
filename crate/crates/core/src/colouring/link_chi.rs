use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::chi_strong;
use crate::hypergraph::{Hypergraph, VertexSet};

/// `χ(H, t, ℓ)`: the largest ℓ-strong chromatic number of a link of a
/// t-set, floored at 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkChi {
    pub value: usize,
    /// Lexicographically smallest t-set whose link attains the maximum;
    /// `None` when there are no t-sets.
    pub argmax: Option<VertexSet>,
    pub argmax_chi: usize,
}

/// Exact `χ(H, t, ℓ)` over every t-subset of the vertices.
///
/// Links are solved in parallel on the current rayon pool; the result does
/// not depend on the pool size.
pub fn chi_t_ell(h: &Hypergraph, t: usize, ell: usize) -> LinkChi {
    let subsets: Vec<VertexSet> = (0..h.n()).combinations(t).map(VertexSet::from_sorted).collect();
    let chis: Vec<usize> = subsets
        .par_iter()
        .map(|s| {
            if h.edges().iter().any(|e| s.is_subset(e)) {
                chi_strong(&h.link(s).hypergraph, ell).chi
            } else {
                usize::from(h.n() > t)
            }
        })
        .collect();
    let best = chis.iter().copied().enumerate().fold(None, |best: Option<(usize, usize)>, (i, chi)| match best {
        Some((_, b)) if b >= chi => best,
        _ => Some((i, chi)),
    });
    match best {
        Some((i, chi)) => LinkChi { value: chi.max(1), argmax: Some(subsets[i].clone()), argmax_chi: chi },
        None => LinkChi { value: 1, argmax: None, argmax_chi: 0 },
    }
}

/// [`chi_t_ell`] on a dedicated pool of `jobs` threads.
pub fn chi_t_ell_with_jobs(h: &Hypergraph, t: usize, ell: usize, jobs: usize) -> LinkChi {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(|| chi_t_ell(h, t, ell)),
        Err(_) => chi_t_ell(h, t, ell),
    }
}

/// True iff every two distinct vertices share an edge of size at most `c`.
///
/// Such an edge must be rainbow in any c-strong colouring, so then
/// `χ(H, c) = n`.
pub fn rainbow_forced(h: &Hypergraph, c: usize) -> bool {
    let n = h.n();
    let mut together = vec![false; n * n];
    for e in h.edges().iter().filter(|e| e.len() <= c) {
        for (u, v) in e.iter().tuple_combinations() {
            together[u * n + v] = true;
        }
    }
    (0..n).tuple_combinations().all(|(u, v)| together[u * n + v])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::complete_uniform;

    #[test]
    fn t_zero_is_plain_chi() {
        let h = complete_uniform(5, 2).unwrap();
        let r = chi_t_ell(&h, 0, 2);
        assert_eq!(r.value, 5);
        assert_eq!(r.argmax, Some(VertexSet::new()));
    }

    #[test]
    fn edgeless_is_one() {
        assert_eq!(chi_t_ell(&Hypergraph::edgeless(4), 2, 3).value, 1);
        assert_eq!(chi_t_ell(&Hypergraph::edgeless(0), 0, 3).value, 1);
    }

    #[test]
    fn smallest_argmax() {
        // link of 0 is a triangle on {1,2,3}; link of 4 is a single edge
        let h = Hypergraph::new(6, vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 1, 3], vec![4, 5]]).unwrap();
        let r = chi_t_ell(&h, 1, 2);
        assert_eq!(r.value, 3);
        assert_eq!(r.argmax, Some(VertexSet::from([0])));
        assert_eq!(chi_t_ell_with_jobs(&h, 1, 2, 3), r);
    }

    #[test]
    fn rainbow_forced_examples() {
        assert!(rainbow_forced(&complete_uniform(4, 2).unwrap(), 2));
        let matching = Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(!rainbow_forced(&matching, 2));
        // edges larger than c do not force anything
        assert!(!rainbow_forced(&complete_uniform(4, 3).unwrap(), 2));
    }
}
