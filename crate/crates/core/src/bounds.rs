//! Heuristic bounds on the minimum hitting set size.

use std::cmp::Reverse;
use std::collections::BTreeSet;

use crate::hypergraph::{Hypergraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    /// Number of pairwise disjoint edges found.
    pub lower: usize,
    /// Size of the smaller heuristic hitting set.
    pub upper: usize,
    /// Sorted hitting set of size `upper`.
    pub witness_upper: Vec<VertexId>,
    /// Indices of pairwise disjoint edges.
    pub witness_lower: Vec<usize>,
}

/// Takes every vertex of each edge that is still unhit, in input order.
/// Returns the sorted solution and the indices of the edges taken, which are
/// pairwise disjoint.
pub fn approx_d(h: &Hypergraph) -> (Vec<VertexId>, Vec<usize>) {
    let mut taken = vec![false; h.n() + 1];
    let mut solution = Vec::new();
    let mut disjoint = Vec::new();
    for (i, e) in h.edges().enumerate() {
        if e.iter().any(|&v| taken[v as usize]) {
            continue;
        }
        disjoint.push(i);
        for &v in e {
            taken[v as usize] = true;
            solution.push(v);
        }
    }
    solution.sort_unstable();
    (solution, disjoint)
}

/// Repeatedly takes a vertex of maximum degree among unhit edges, breaking
/// ties by the smallest id. Returns the chosen vertices, sorted.
pub fn greedy(h: &Hypergraph) -> Vec<VertexId> {
    let incidence = h.incidence();
    let mut degree: Vec<usize> = incidence.iter().map(Vec::len).collect();
    let mut queue: BTreeSet<(Reverse<usize>, VertexId)> = degree
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d > 0)
        .map(|(v, &d)| (Reverse(d), v as VertexId))
        .collect();
    let mut hit = vec![false; h.num_edges()];
    let mut solution = Vec::new();
    while let Some((_, v)) = queue.pop_first() {
        solution.push(v);
        for &ei in &incidence[v as usize] {
            let ei = ei as usize;
            if hit[ei] {
                continue;
            }
            hit[ei] = true;
            for &u in h.edge(ei) {
                let du = &mut degree[u as usize];
                if u == v || *du == 0 {
                    continue;
                }
                queue.remove(&(Reverse(*du), u));
                *du -= 1;
                if *du > 0 {
                    queue.insert((Reverse(*du), u));
                }
            }
        }
        degree[v as usize] = 0;
    }
    solution.sort_unstable();
    solution
}

/// Lower bound from disjoint edges, upper bound from the better heuristic.
/// On a tie the factor-`d` solution is reported.
pub fn bounds(h: &Hypergraph) -> Bounds {
    let (approx, disjoint) = approx_d(h);
    let greedy = greedy(h);
    let witness_upper = if greedy.len() < approx.len() {
        greedy
    } else {
        approx
    };
    Bounds {
        lower: disjoint.len(),
        upper: witness_upper.len(),
        witness_upper,
        witness_lower: disjoint,
    }
}
