mod common;

use common::{brute_minimal, brute_optimum, small_hypergraph};
use hskern_core::oracle::{enumerate_minimal, max_sunflower_greedy, min_hitting_set, optimum};
use hskern_core::CoreKey;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn solver_matches_exhaustive_search(h in small_hypergraph(12, 14, 4)) {
        let opt = brute_optimum(&h);
        prop_assert_eq!(optimum(&h), opt);
        for k in 0..=opt + 1 {
            let out = min_hitting_set(&h, k);
            prop_assert_eq!(out.feasible, k >= opt);
            if let Some(s) = out.solution {
                prop_assert!(s.len() <= k && h.is_hit_by(&s));
            }
        }
    }

    #[test]
    fn minimal_enumeration_matches_exhaustive_search(h in small_hypergraph(10, 10, 3), k in 0usize..5) {
        prop_assert_eq!(enumerate_minimal(&h, k), brute_minimal(&h, k));
    }

    #[test]
    fn greedy_sunflower_is_a_sunflower(h in small_hypergraph(10, 14, 4), core in proptest::collection::btree_set(1u32..=10, 0..=2)) {
        let core = CoreKey::new(core.into_iter().filter(|&v| v as usize <= h.n()));
        let petals = max_sunflower_greedy(&h, &core);
        for (x, &i) in petals.iter().enumerate() {
            let e = h.edge(i);
            prop_assert!(core.as_slice().iter().all(|v| e.contains(v)));
            for &j in &petals[x + 1..] {
                let common: Vec<u32> = e.iter().copied().filter(|v| h.edge(j).contains(v)).collect();
                prop_assert_eq!(common.as_slice(), core.as_slice());
            }
        }
    }
}
