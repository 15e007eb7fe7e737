#![allow(dead_code)]

use hskern_core::Hypergraph;
use proptest::prelude::*;

/// Every vertex subset of `1..=n` that hits all edges, as bitmasks over ids.
pub fn hitting_masks(h: &Hypergraph) -> Vec<u32> {
    let n = h.n();
    assert!(n <= 16);
    let edge_masks: Vec<u32> = h
        .edges()
        .map(|e| e.iter().fold(0u32, |m, &v| m | 1 << (v - 1)))
        .collect();
    (0u32..1 << n)
        .filter(|s| edge_masks.iter().all(|e| e & s != 0))
        .collect()
}

pub fn brute_optimum(h: &Hypergraph) -> usize {
    hitting_masks(h)
        .iter()
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap()
}

pub fn mask_to_vec(mask: u32) -> Vec<u32> {
    (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

/// Inclusion-minimal hitting sets of size at most `k`, sorted.
pub fn brute_minimal(h: &Hypergraph, k: usize) -> Vec<Vec<u32>> {
    let all = hitting_masks(h);
    let mut hits = vec![false; 1 << h.n()];
    for &s in &all {
        hits[s as usize] = true;
    }
    let mut out: Vec<Vec<u32>> = all
        .iter()
        .filter(|&&s| s.count_ones() as usize <= k)
        .filter(|&&s| (0..h.n()).all(|b| s >> b & 1 == 0 || !hits[(s & !(1 << b)) as usize]))
        .map(|&s| mask_to_vec(s))
        .collect();
    out.sort();
    out
}

/// Small instances: up to `max_n` vertices, edges of size 1..=`max_d`.
pub fn small_hypergraph(
    max_n: usize,
    max_m: usize,
    max_d: usize,
) -> impl Strategy<Value = Hypergraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let edge = proptest::collection::btree_set(1..=n as u32, 1..=max_d.min(n));
        proptest::collection::vec(edge, 0..=max_m).prop_map(move |edges| {
            Hypergraph::from_edges(
                n,
                edges.into_iter().map(|e| e.into_iter().collect::<Vec<_>>()),
            )
        })
    })
}

/// Edges of exactly `d` vertices, so vertex reduction has work to do.
pub fn uniform_hypergraph(
    max_n: usize,
    max_m: usize,
    d: usize,
) -> impl Strategy<Value = Hypergraph> {
    (d..=max_n).prop_flat_map(move |n| {
        let edge = proptest::collection::btree_set(1..=n as u32, d);
        proptest::collection::vec(edge, 0..=max_m).prop_map(move |edges| {
            Hypergraph::from_edges(
                n,
                edges.into_iter().map(|e| e.into_iter().collect::<Vec<_>>()),
            )
        })
    })
}
