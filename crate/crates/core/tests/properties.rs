mod common;

use hypercol::colouring::{chi_strong, chi_strong_bruteforce, colourable, product_colouring, Colouring};
use hypercol::hypergraph::find_sunflower;
use hypercol::structure::{is_k_split_degenerate, red_clique_to_bromeliad, triple_classify, TripleColour};
use hypercol::{is_c_strong, Hypergraph, VertexSet};
use itertools::Itertools;
use proptest::prelude::*;

use common::{hypergraph, naive_strong};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn link_of_union_is_link_of_link(h in hypergraph(7, 10), s_mask in 0u32..128, t_mask in 1u32..128) {
        let n = h.n();
        let s: VertexSet = (0..n).filter(|&v| s_mask >> v & 1 == 1).collect();
        let t: VertexSet = (0..n).filter(|&v| t_mask >> v & 1 == 1 && !s.contains(v)).collect();
        prop_assume!(!t.is_empty());
        let direct = h.link(&s.union(&t));
        let outer = h.link(&s);
        let inner = outer.hypergraph.link(&outer.to_local(&t).unwrap());
        let via: Vec<VertexSet> = inner.hypergraph.edges().iter().map(|e| outer.to_host(&inner.to_host(e))).sorted().collect();
        let want: Vec<VertexSet> = direct.hypergraph.edges().iter().map(|e| direct.to_host(e)).sorted().collect();
        prop_assert_eq!(via, want);
    }

    #[test]
    fn intersecting_iff_no_small_kernel_sunflower(h in hypergraph(7, 8), t in 1usize..=3) {
        let pairwise = h.edges().iter().tuple_combinations().all(|(e, f)| e.intersection_len(f) >= t);
        prop_assert_eq!(h.is_t_intersecting(t), pairwise);
        let found = find_sunflower(&h, 2, t - 1);
        prop_assert_eq!(found.is_none(), pairwise);
        if let Some(s) = found {
            prop_assert!(s.check(&h).is_ok());
            prop_assert!(s.kernel.len() < t);
        }
    }

    #[test]
    fn solver_agrees_with_brute_force(h in hypergraph(6, 7), c in 1usize..=4, k in 1usize..=4) {
        let fast = colourable(&h, c, k);
        prop_assert_eq!(chi_strong_bruteforce(&h, c, k), Ok(fast.is_some()));
        if let Some(col) = fast {
            prop_assert!(col.num_used() <= k);
            prop_assert!(naive_strong(&h, col.colours(), c));
        }
    }

    #[test]
    fn chi_is_monotone_in_c(h in hypergraph(6, 7)) {
        let chis: Vec<usize> = (1..=4).map(|c| chi_strong(&h, c).chi).collect();
        prop_assert!(chis.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn product_keeps_strength(h in hypergraph(6, 7), c in 1usize..=3, seed in 0usize..1000) {
        let base = chi_strong(&h, c).witness;
        let noise = Colouring::from_colours((0..h.n()).map(|v| (v * 7 + seed) % 3).collect());
        let product = product_colouring(&[base, noise]).unwrap();
        prop_assert!(is_c_strong(&h, &product, c).unwrap().is_strong());
    }

    #[test]
    fn red_cliques_are_bromeliads(h in hypergraph(7, 9), k in 2usize..=4) {
        // Make the family intersecting by adding vertex 0 to every edge.
        let edges: std::collections::BTreeSet<VertexSet> =
            h.edges().iter().map(|e| e.union(&VertexSet::from_sorted(vec![0]))).collect();
        let h = Hypergraph::from_sets(h.n(), edges).unwrap();
        let mut seq = Vec::new();
        for e in h.edges() {
            seq.push(e.clone());
            if is_k_split_degenerate(&h, &seq, k).is_err() {
                seq.pop();
            }
        }
        for clique in (0..seq.len()).combinations(3) {
            if triple_classify(&seq[clique[0]], &seq[clique[1]], &seq[clique[2]]) == TripleColour::Red {
                let b = red_clique_to_bromeliad(&h, &seq, k, &clique);
                prop_assert!(b.is_ok(), "{:?}", b);
            }
        }
    }
}
