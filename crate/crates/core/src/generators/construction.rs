//! The t-intersecting hypergraph whose (t+ℓ)-strong chromatic number grows
//! much faster than the ℓ-strong chromatic numbers of its t-links.
//!
//! Vertices: a set `A` of `t + 2ℓ - 4` ids (`0..|A|`), then `B` with one
//! vertex `b_σ` per tuple `σ ∈ [K]^τ`, `τ = C(t + 2ℓ - 4, ℓ - 2)`, in
//! lexicographic tuple order. With `S_1, .., S_τ` the `(t + ℓ - 2)`-subsets
//! of `A` in lexicographic order, the edges are `S_i ∪ {b_σ, b_σ'}` for every
//! pair with `σ_i ≠ σ'_i`.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::GeneratorError;
use crate::colouring::Colouring;
use crate::hypergraph::{Hypergraph, VertexSet};

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Construction42Spec {
    pub t: usize,
    pub ell: usize,
    pub k: usize,
    pub tau: usize,
    /// Ids of `A`, i.e. `0..t + 2ℓ - 4`.
    pub a: VertexSet,
    /// `|B| = K^τ`.
    pub b_count: usize,
    /// `S_1..S_τ` in lexicographic order.
    pub s_sets: Vec<VertexSet>,
}

impl Construction42Spec {
    pub fn a_len(&self) -> usize {
        self.a.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.a_len() + self.b_count
    }

    pub fn in_b(&self, v: usize) -> bool {
        v >= self.a_len() && v < self.num_vertices()
    }

    /// The vertex id of `b_σ`.
    pub fn b_vertex(&self, sigma: &[usize]) -> usize {
        self.a_len() + sigma.iter().fold(0, |acc, &d| acc * self.k + d)
    }

    /// The tuple `σ` of a `B` vertex.
    pub fn sigma(&self, v: usize) -> Vec<usize> {
        let mut idx = v - self.a_len();
        let mut digits = vec![0; self.tau];
        for d in digits.iter_mut().rev() {
            *d = idx % self.k;
            idx /= self.k;
        }
        digits
    }

    /// The value `K^τ + t + 2ℓ - 4` of `χ(H, t + ℓ)`.
    pub fn chi_strong_value(&self) -> usize {
        self.num_vertices()
    }

    /// Upper bound `K^C(2ℓ-4, ℓ-2) + 2ℓ - 4` on `χ(H, t, ℓ)`.
    pub fn link_chi_bound(&self) -> usize {
        let exp = binomial(2 * self.ell - 4, self.ell - 2) as u32;
        self.k.pow(exp) + 2 * self.ell - 4
    }
}

/// Builds the construction, refusing instances with more than `max_vertices`
/// vertices.
pub fn construction_42(
    t: usize,
    ell: usize,
    k: usize,
    max_vertices: usize,
) -> Result<(Hypergraph, Construction42Spec), GeneratorError> {
    if t < 1 || ell < 2 || k < 2 {
        return Err(GeneratorError::InvalidParameters(format!("need t >= 1, ℓ >= 2, K >= 2; got t={t}, ℓ={ell}, K={k}")));
    }
    let a_len = t + 2 * ell - 4;
    let tau = binomial(a_len, ell - 2);
    let b_count = u32::try_from(tau).ok().and_then(|tau| (k as u128).checked_pow(tau));
    let vertices = b_count.map(|b| b + a_len as u128);
    match vertices {
        Some(v) if v <= max_vertices as u128 => {}
        _ => return Err(GeneratorError::SizeCapExceeded { vertices: vertices.unwrap_or(u128::MAX), cap: max_vertices }),
    }
    let b_count = b_count.unwrap() as usize;
    let spec = Construction42Spec {
        t,
        ell,
        k,
        tau: tau as usize,
        a: VertexSet::range(0, a_len),
        b_count,
        s_sets: (0..a_len).combinations(t + ell - 2).map(VertexSet::from_sorted).collect(),
    };
    let sigmas: Vec<Vec<usize>> = (0..b_count).map(|i| spec.sigma(a_len + i)).collect();
    let mut edges = Vec::new();
    for (i, s_i) in spec.s_sets.iter().enumerate() {
        for x in 0..b_count {
            for y in x + 1..b_count {
                if sigmas[x][i] != sigmas[y][i] {
                    edges.push(s_i.union(&VertexSet::from_sorted(vec![a_len + x, a_len + y])));
                }
            }
        }
    }
    let h = Hypergraph::from_sets(spec.num_vertices(), edges)?;
    Ok((h, spec))
}

/// Which colouring rule applies to a t-set `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkCase {
    /// `|B ∩ S| >= 3`: the link is edgeless.
    ManyInB,
    /// `|B ∩ S| ∈ {1, 2}`.
    FewInB,
    /// `S ⊆ A`.
    InsideA,
}

impl LinkCase {
    pub fn of(spec: &Construction42Spec, s: &VertexSet) -> LinkCase {
        match s.iter().filter(|&v| spec.in_b(v)).count() {
            0 => LinkCase::InsideA,
            1 | 2 => LinkCase::FewInB,
            _ => LinkCase::ManyInB,
        }
    }

    /// Colour count the case's rule is guaranteed to stay within.
    pub fn bound(self, spec: &Construction42Spec) -> usize {
        match self {
            LinkCase::ManyInB => 1,
            LinkCase::FewInB => 2 * spec.ell - 1,
            LinkCase::InsideA => spec.link_chi_bound(),
        }
    }
}

/// Colouring of the link of `s` (on `V ∖ S`, ids ascending as in
/// [`Hypergraph::link`]) that makes every link edge rainbow.
pub fn construction_42_link_colouring(spec: &Construction42Spec, s: &VertexSet) -> Result<Colouring, GeneratorError> {
    if s.len() != spec.t || s.max().is_some_and(|v| v >= spec.num_vertices()) {
        return Err(GeneratorError::InvalidParameters(format!("{s} is not a {}-subset of the vertices", spec.t)));
    }
    let rest: Vec<usize> = (0..spec.num_vertices()).filter(|&v| !s.contains(v)).collect();
    let case = LinkCase::of(spec, s);
    if case == LinkCase::ManyInB {
        return Ok(Colouring::constant(rest.len()));
    }
    let a_rest: Vec<usize> = rest.iter().copied().filter(|&v| !spec.in_b(v)).collect();
    let palette = a_rest.len();
    let shared: Vec<usize> = (0..spec.tau).filter(|&i| s.is_subset(&spec.s_sets[i])).collect();
    let colours = rest
        .iter()
        .map(|&v| {
            if !spec.in_b(v) {
                return a_rest.binary_search(&v).unwrap();
            }
            match case {
                LinkCase::InsideA => {
                    // one colour per agreement class of σ on the coordinates I_S
                    let sigma = spec.sigma(v);
                    palette + shared.iter().fold(0, |acc, &i| acc * spec.k + sigma[i])
                }
                _ => palette,
            }
        })
        .collect();
    Ok(Colouring::from_colours(colours).compacted())
}
