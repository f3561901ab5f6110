//! Exact c-strong chromatic numbers by backtracking.
//!
//! Vertices are visited in descending-degree order (ties by id). A vertex
//! may only take a colour at most one above the largest colour used so far,
//! which removes colour-permutation symmetry. After each assignment every
//! incident edge must still be able to reach `min(c, |e|)` colours:
//! `distinct + min(uncoloured, k - distinct) >= min(c, |e|)`.

use serde::{Deserialize, Serialize};

use super::{is_c_strong, rainbow_forced, Colouring, ColouringError};
use crate::hypergraph::Hypergraph;

/// Upper bound on `k^n` accepted by [`chi_strong_bruteforce`].
pub const BRUTEFORCE_LIMIT: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChiMethod {
    Search,
    RainbowForced,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiResult {
    pub chi: usize,
    pub witness: Colouring,
    pub method: ChiMethod,
}

struct Search<'a> {
    k: usize,
    order: Vec<usize>,
    /// Incident edge ids per search position.
    incident: Vec<Vec<usize>>,
    required: &'a [usize],
    counts: Vec<u32>,
    distinct: Vec<usize>,
    uncoloured: Vec<usize>,
    assigned: Vec<usize>,
}

impl Search<'_> {
    fn feasible(&self, e: usize) -> bool {
        let d = self.distinct[e];
        d + self.uncoloured[e].min(self.k - d) >= self.required[e]
    }

    fn place(&mut self, pos: usize, col: usize) -> bool {
        let mut ok = true;
        for &e in &self.incident[pos] {
            let slot = e * self.k + col;
            if self.counts[slot] == 0 {
                self.distinct[e] += 1;
            }
            self.counts[slot] += 1;
            self.uncoloured[e] -= 1;
        }
        for &e in &self.incident[pos] {
            if !self.feasible(e) {
                ok = false;
                break;
            }
        }
        self.assigned[pos] = col;
        ok
    }

    fn unplace(&mut self, pos: usize, col: usize) {
        for &e in &self.incident[pos] {
            let slot = e * self.k + col;
            self.counts[slot] -= 1;
            if self.counts[slot] == 0 {
                self.distinct[e] -= 1;
            }
            self.uncoloured[e] += 1;
        }
    }

    fn run(&mut self, pos: usize, next_fresh: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let top = next_fresh.min(self.k - 1);
        for col in 0..=top {
            let ok = self.place(pos, col);
            if ok && self.run(pos + 1, next_fresh.max(col + 1)) {
                return true;
            }
            self.unplace(pos, col);
        }
        false
    }
}

/// A c-strong colouring with at most `k` colours, if one exists.
///
/// The search is exhaustive, so `None` proves that no such colouring exists.
pub fn colourable(h: &Hypergraph, c: usize, k: usize) -> Option<Colouring> {
    let n = h.n();
    if n == 0 {
        return Some(Colouring::constant(0));
    }
    if k == 0 {
        return None;
    }
    let required: Vec<usize> = h.edges().iter().map(|e| c.min(e.len())).collect();
    if required.iter().any(|&r| r > k) {
        return None;
    }
    let degrees = h.degrees();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(degrees[v]), v));
    let mut position = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    let mut incident = vec![Vec::new(); n];
    for (e, edge) in h.edges().iter().enumerate() {
        for v in edge {
            incident[position[v]].push(e);
        }
    }
    let m = h.num_edges();
    let mut search = Search {
        k,
        order,
        incident,
        required: &required,
        counts: vec![0; m * k],
        distinct: vec![0; m],
        uncoloured: h.edges().iter().map(|e| e.len()).collect(),
        assigned: vec![0; n],
    };
    if !search.run(0, 0) {
        return None;
    }
    let mut colours = vec![0; n];
    for (p, &v) in search.order.iter().enumerate() {
        colours[v] = search.assigned[p];
    }
    Some(Colouring::from_colours(colours))
}

/// Exact `χ(H, c)` by iterative deepening on the number of colours.
///
/// The witness uses exactly `chi` colours; the failed search at `chi - 1`
/// is the proof of optimality. The vertexless hypergraph has `chi = 0`.
pub fn chi_strong(h: &Hypergraph, c: usize) -> ChiResult {
    for k in 0..=h.n() {
        if let Some(witness) = colourable(h, c, k) {
            return ChiResult { chi: k, witness, method: ChiMethod::Search };
        }
    }
    unreachable!("the rainbow colouring with n colours is c-strong for every c")
}

/// As [`chi_strong`], but answers `n` directly when every vertex pair is
/// forced apart by an edge of size at most `c`.
pub fn chi_strong_auto(h: &Hypergraph, c: usize) -> ChiResult {
    if rainbow_forced(h, c) {
        ChiResult { chi: h.n(), witness: Colouring::rainbow(h.n()), method: ChiMethod::RainbowForced }
    } else {
        chi_strong(h, c)
    }
}

/// Exhaustive enumeration of all `k^n` colourings, with no pruning or
/// symmetry breaking. Independent oracle for [`colourable`].
pub fn chi_strong_bruteforce(h: &Hypergraph, c: usize, k: usize) -> Result<bool, ColouringError> {
    let n = h.n();
    let too_large = ColouringError::BruteForceTooLarge { k, n };
    let total = (k as u64).checked_pow(n as u32).ok_or(too_large.clone())?;
    if total > BRUTEFORCE_LIMIT {
        return Err(too_large);
    }
    if total == 0 {
        return Ok(false);
    }
    let mut colours = vec![0usize; n];
    loop {
        let col = Colouring::new(k.max(1), colours.clone())?;
        if is_c_strong(h, &col, c)?.is_strong() {
            return Ok(true);
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == n {
                return Ok(false);
            }
            colours[i] += 1;
            if colours[i] < k {
                break;
            }
            colours[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::complete_uniform;

    fn triangle() -> Hypergraph {
        complete_uniform(3, 2).unwrap()
    }

    #[test]
    fn edgeless_needs_one_colour() {
        assert_eq!(chi_strong(&Hypergraph::edgeless(4), 5).chi, 1);
        assert_eq!(chi_strong(&Hypergraph::edgeless(0), 5).chi, 0);
    }

    #[test]
    fn odd_cycle_needs_three() {
        let r = chi_strong(&triangle(), 2);
        assert_eq!(r.chi, 3);
        assert!(is_c_strong(&triangle(), &r.witness, 2).unwrap().is_strong());
    }

    #[test]
    fn complete_four_uniform_on_six() {
        let h = complete_uniform(6, 4).unwrap();
        let r = chi_strong(&h, 3);
        assert_eq!(r.chi, 5);
        assert_eq!(r.witness.num_used(), 5);
        assert!(colourable(&h, 3, 4).is_none());
    }

    #[test]
    fn bruteforce_examples() {
        let edge = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        assert!(!chi_strong_bruteforce(&edge, 2, 1).unwrap());
        assert!(chi_strong_bruteforce(&edge, 2, 2).unwrap());
        assert!(!chi_strong_bruteforce(&triangle(), 2, 2).unwrap());
        assert!(chi_strong_bruteforce(&triangle(), 2, 3).unwrap());
    }

    #[test]
    fn bruteforce_guard() {
        let h = Hypergraph::edgeless(30);
        assert!(matches!(chi_strong_bruteforce(&h, 2, 4), Err(ColouringError::BruteForceTooLarge { .. })));
    }

    #[test]
    fn auto_uses_rainbow_shortcut() {
        let k4 = complete_uniform(4, 2).unwrap();
        let r = chi_strong_auto(&k4, 2);
        assert_eq!(r.method, ChiMethod::RainbowForced);
        assert_eq!(r.chi, 4);
        assert_eq!(chi_strong(&k4, 2).chi, 4);
    }

    #[test]
    fn witness_is_deterministic() {
        let h = complete_uniform(5, 3).unwrap();
        assert_eq!(chi_strong(&h, 3), chi_strong(&h, 3));
    }
}
