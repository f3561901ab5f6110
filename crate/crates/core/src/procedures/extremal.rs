use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{binomial, require_intersecting, saturating_pow, ProcedureError};
use crate::colouring::{chi_strong, chi_t_ell, is_c_strong, product_colouring, Colouring, StrongCheck, StrongColourCert};
use crate::hypergraph::{find_sunflower, Hypergraph, Sunflower, VertexSet};

fn certify(h: &Hypergraph, col: &Colouring, c: usize, what: &str) -> Result<StrongColourCert, ProcedureError> {
    match is_c_strong(h, col, c)? {
        StrongCheck::Strong(cert) => Ok(cert),
        StrongCheck::Fails(f) => Err(ProcedureError::InvariantBroken(format!(
            "{what} colouring fails edge {} ({} < {} colours)",
            f.edge, f.seen, f.required
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Thm41Outcome {
    /// `θ`: an optimal 2-strong colouring of `H_S` plus `c−2` fresh colours
    /// on `S`, using `link_chi + c − 2` colours.
    Applied { certificate: StrongColourCert, set: VertexSet, link_chi: usize },
    /// `χ(H_S, 2) < 2c` for the maximising set (or there is no (c−2)-set).
    NotApplicable { set: Option<VertexSet>, link_chi: usize },
}

/// Colours a (c−2)-intersecting hypergraph whose worst (c−2)-set link has
/// weak chromatic number at least `2c`.
///
/// `S` is the lexicographically smallest (c−2)-set maximising
/// `χ(H_S, 2)`. The returned colouring has exactly `χ(H_S, 2) + c − 2`
/// colours, which is then also `χ(h, c)`.
pub fn theorem41_colouring(h: &Hypergraph, c: usize) -> Result<Thm41Outcome, ProcedureError> {
    if c < 2 {
        return Err(ProcedureError::Precondition(format!("c must be at least 2, got {c}")));
    }
    let t = c - 2;
    require_intersecting(h, t)?;
    let lc = chi_t_ell(h, t, 2);
    let Some(set) = lc.argmax.clone().filter(|_| lc.argmax_chi >= 2 * c) else {
        return Ok(Thm41Outcome::NotApplicable { set: lc.argmax, link_chi: lc.argmax_chi });
    };
    let link = h.link(&set);
    let optimal = chi_strong(&link.hypergraph, 2);
    let chi = optimal.chi;
    let mut theta = optimal.witness.lift_from_link(&link, h.n(), 0).colours().to_vec();
    for (i, v) in set.iter().enumerate() {
        theta[v] = chi + i;
    }
    let theta = Colouring::new(chi + t, theta)?;
    let certificate = certify(h, &theta, c, "theta")?;
    Ok(Thm41Outcome::Applied { certificate, set, link_chi: chi })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Thm44Outcome {
    Applied {
        certificate: StrongColourCert,
        sunflower: Sunflower,
        /// `χ(h, t, ℓ)`.
        link_chi: usize,
        /// `(t+ℓ)·χ(h,t,ℓ)^C(t+ℓ−2,t) + |kernel|`.
        bound: u128,
    },
    /// No sunflower with `t+ℓ` petals and kernel of at most `t+ℓ−2`.
    NotApplicable,
}

/// Colours a t-intersecting hypergraph containing a sunflower with `t+ℓ`
/// petals and a kernel of at most `t+ℓ−2` vertices.
///
/// Smaller kernel bounds are tried first. Petal `i` gets colour `i` in
/// `c_0` (every non-petal vertex colour 0); for each t-subset `S'` of the
/// kernel an optimal ℓ-strong colouring of `H_{S'}` is lifted with `S'`
/// coloured 0. The product colours everything outside the kernel, and each
/// kernel vertex gets a fresh colour.
pub fn theorem44_colouring(h: &Hypergraph, t: usize, ell: usize) -> Result<Thm44Outcome, ProcedureError> {
    let c = t + ell;
    if c < 2 {
        return Err(ProcedureError::Precondition(format!("t + ℓ must be at least 2, got {c}")));
    }
    require_intersecting(h, t)?;
    let Some(sunflower) = (0..=c - 2).find_map(|m| find_sunflower(h, c, m)) else {
        return Ok(Thm44Outcome::NotApplicable);
    };
    let n = h.n();
    let kernel = &sunflower.kernel;

    let mut c0 = vec![0; n];
    for (i, petal) in sunflower.petals.iter().enumerate() {
        for v in petal.iter() {
            c0[v] = i;
        }
    }
    let mut factors = vec![Colouring::new(c, c0)?];
    for s in kernel.iter().combinations(t) {
        let link = h.link(&VertexSet::from_sorted(s));
        factors.push(chi_strong(&link.hypergraph, ell).witness.lift_from_link(&link, n, 0));
    }
    let product = product_colouring(&factors)?;
    let mut colours = product.colours().to_vec();
    for (i, v) in kernel.iter().enumerate() {
        colours[v] = product.k() + i;
    }
    let colouring = Colouring::from_colours(colours).compacted();

    let link_chi = chi_t_ell(h, t, ell).value;
    let exponent = binomial(c - 2, t);
    let bound = (c as u128)
        .saturating_mul(saturating_pow(link_chi as u128, exponent))
        .saturating_add(kernel.len() as u128);
    let certificate = certify(h, &colouring, c, "sunflower-petal")?;
    if colouring.k() as u128 > bound {
        return Err(ProcedureError::InvariantBroken(format!("{} colours exceed the bound {bound}", colouring.k())));
    }
    Ok(Thm44Outcome::Applied { certificate, sunflower, link_chi, bound })
}
