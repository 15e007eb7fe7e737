mod common;

use common::{brute_minimal, brute_optimum, small_hypergraph, uniform_hypergraph};
use hskern_core::kernelize::{kernel_edge_bound, weakly_related_bound, within};
use hskern_core::oracle::max_sunflower_greedy;
use hskern_core::verify::check_weakly_related;
use hskern_core::{
    kernelize, kernelize_and_reduce, parse, serialize, weakly_related_set, Backend, KernelConfig,
    LargeAgainst, StrategyMode, UsedMode,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn kernel_keeps_minimal_solutions(h in small_hypergraph(10, 24, 4), k in 0usize..5) {
        let r = kernelize(&h, &KernelConfig::new(k));
        prop_assert_eq!(brute_minimal(&r.kernel, k), brute_minimal(&h, k));
        prop_assert_eq!(brute_optimum(&r.kernel) <= k, brute_optimum(&h) <= k);
        prop_assert!(within(r.kernel.num_edges(), kernel_edge_bound(h.d(), k)));
    }

    #[test]
    fn kernel_is_a_sub_family(h in small_hypergraph(10, 24, 4), k in 0usize..4) {
        let r = kernelize(&h, &KernelConfig::new(k));
        prop_assert!(r.kept.windows(2).all(|w| w[0] < w[1]));
        for (i, e) in r.kernel.edges().enumerate() {
            prop_assert_eq!(e, h.edge(r.kept[i]));
        }
    }

    #[test]
    fn reported_sunflowers_are_sunflowers(h in small_hypergraph(10, 24, 4), k in 1usize..4) {
        let r = kernelize(&h, &KernelConfig::new(k));
        for f in &r.sunflowers {
            prop_assert_eq!(f.petal_edges.len(), k + 1);
            for (x, &i) in f.petal_edges.iter().enumerate() {
                for &j in &f.petal_edges[x + 1..] {
                    let common: Vec<u32> = h.edge(i).iter().copied().filter(|v| h.edge(j).contains(v)).collect();
                    prop_assert_eq!(common.as_slice(), f.core.as_slice());
                }
            }
            let cap = h.d() * (k + 1);
            prop_assert!(max_sunflower_greedy(&r.kernel, &f.core).len() <= cap);
        }
    }

    #[test]
    fn backends_and_used_modes_agree(h in small_hypergraph(9, 20, 4), k in 0usize..4) {
        for strategy in [StrategyMode::Auto, StrategyMode::ForceSmall, StrategyMode::ForceLarge] {
            let base = kernelize(&h, &KernelConfig::new(k).strategy(strategy)).canonical_text();
            for backend in Backend::ALL {
                for used in [UsedMode::Sparse, UsedMode::Dense] {
                    let cfg = KernelConfig::new(k).backend(backend).strategy(strategy).used_mode(used);
                    prop_assert_eq!(&kernelize(&h, &cfg).canonical_text(), &base);
                }
            }
        }
    }

    #[test]
    fn every_strategy_gives_a_full_kernel(h in small_hypergraph(9, 20, 4), k in 0usize..4) {
        let expected = brute_minimal(&h, k);
        for strategy in [StrategyMode::ForceSmall, StrategyMode::ForceLarge] {
            let r = kernelize(&h, &KernelConfig::new(k).strategy(strategy));
            prop_assert_eq!(&brute_minimal(&r.kernel, k), &expected);
        }
    }

    #[test]
    fn large_against_kept_stays_equivalent(h in small_hypergraph(9, 20, 4), k in 0usize..4) {
        let cfg = KernelConfig::new(k).strategy(StrategyMode::ForceLarge).large_against(LargeAgainst::Kept);
        let r = kernelize(&h, &cfg);
        prop_assert_eq!(brute_optimum(&r.kernel) <= k, brute_optimum(&h) <= k);
    }

    #[test]
    fn weakly_related_is_maximal(h in small_hypergraph(10, 24, 4)) {
        for backend in Backend::ALL {
            let wr = weakly_related_set(&h, backend);
            prop_assert!(check_weakly_related(&h, &wr.w_indices).is_ok());
            for v in h.live_vertices() {
                let in_w = wr.w_indices.iter().any(|&i| h.edge(i).contains(&v));
                prop_assert_eq!(wr.in_w(v), in_w);
            }
        }
    }

    #[test]
    fn weakly_related_bound_on_kernels(h in small_hypergraph(10, 30, 3), k in 0usize..4) {
        let r = kernelize(&h, &KernelConfig::new(k));
        let wr = weakly_related_set(&r.kernel, Backend::default());
        prop_assert!(within(wr.w_indices.len(), weakly_related_bound(r.kernel.d(), k)));
    }

    #[test]
    fn vertex_reduction_keeps_the_answer(h in uniform_hypergraph(10, 30, 3), k in 0usize..5) {
        let p = kernelize_and_reduce(&h, &KernelConfig::new(k));
        let reduced = &p.reduction.reduced;
        prop_assert_eq!(brute_optimum(reduced) <= k, brute_optimum(&h) <= k);
    }

    #[test]
    fn vertex_reduction_keeps_the_answer_mixed(h in small_hypergraph(10, 24, 4), k in 0usize..5) {
        let p = kernelize_and_reduce(&h, &KernelConfig::new(k));
        prop_assert_eq!(brute_optimum(&p.reduction.reduced) <= k, brute_optimum(&h) <= k);
    }

    #[test]
    fn canonicalization_keeps_optimum(edges in proptest::collection::vec(proptest::collection::vec(1u32..=8, 1..4), 1..12)) {
        let mut text = format!("p hs 8 {}\n", edges.len());
        for e in &edges {
            text.push_str(&e.iter().map(u32::to_string).collect::<Vec<_>>().join(" "));
            text.push('\n');
        }
        let h = parse(&text).unwrap();
        // optimum over the raw edge list, duplicates and all
        let raw_opt = (0u32..1 << 8)
            .filter(|s| edges.iter().all(|e| e.iter().any(|&v| s >> (v - 1) & 1 == 1)))
            .map(u32::count_ones)
            .min()
            .unwrap() as usize;
        prop_assert_eq!(brute_optimum(&h), raw_opt);
        prop_assert_eq!(parse(&serialize(&h)).unwrap(), h);
    }
}
