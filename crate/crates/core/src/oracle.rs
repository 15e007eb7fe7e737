//! Exact search for small instances.
//!
//! All searches branch on the first unhit edge in input order and try its
//! vertices in ascending order. A branch that picks the `i`-th vertex forbids
//! the ones before it, so every hitting set is reached along exactly one path.

use crate::hypergraph::{CoreKey, Hypergraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub feasible: bool,
    /// A sorted hitting set of size at most `k` when feasible.
    pub solution: Option<Vec<VertexId>>,
}

struct Search<'a> {
    h: &'a Hypergraph,
    chosen: Vec<VertexId>,
    in_solution: Vec<bool>,
    forbidden: Vec<u32>,
    packed: Vec<bool>,
    nodes: u64,
    node_limit: u64,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl<'a> Search<'a> {
    fn new(h: &'a Hypergraph, node_limit: u64) -> Self {
        Search {
            h,
            chosen: Vec::new(),
            in_solution: vec![false; h.n() + 1],
            forbidden: vec![0; h.n() + 1],
            packed: vec![false; h.n() + 1],
            nodes: 0,
            node_limit,
        }
    }

    fn is_hit(&self, e: &[VertexId]) -> bool {
        e.iter().any(|&v| self.in_solution[v as usize])
    }

    fn first_unhit(&self, from: usize) -> Option<usize> {
        (from..self.h.num_edges()).find(|&i| !self.is_hit(self.h.edge(i)))
    }

    /// Number of unhit edges from `from` on whose allowed vertices are
    /// pairwise disjoint. `None` if some unhit edge has no allowed vertex.
    fn packing_bound(&mut self, from: usize) -> Option<usize> {
        let mut count = 0;
        let mut touched = Vec::new();
        let mut dead = false;
        for i in from..self.h.num_edges() {
            let e = self.h.edge(i);
            if self.is_hit(e) {
                continue;
            }
            let mut allowed = e
                .iter()
                .filter(|&&v| self.forbidden[v as usize] == 0)
                .peekable();
            if allowed.peek().is_none() {
                dead = true;
                break;
            }
            if allowed.clone().all(|&v| !self.packed[v as usize]) {
                count += 1;
                for &v in allowed {
                    self.packed[v as usize] = true;
                    touched.push(v);
                }
            }
        }
        for v in touched {
            self.packed[v as usize] = false;
        }
        (!dead).then_some(count)
    }

    fn feasible(&mut self, from: usize, budget: usize) -> Step {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Step::OutOfBudget;
        }
        let Some(first) = self.first_unhit(from) else {
            return Step::Found;
        };
        match self.packing_bound(first) {
            Some(lb) if lb <= budget => {}
            _ => return Step::Exhausted,
        }
        let e = self.h.edge(first);
        let mut result = Step::Exhausted;
        let mut forbidden_here = Vec::new();
        for &v in e {
            if self.forbidden[v as usize] > 0 {
                continue;
            }
            self.in_solution[v as usize] = true;
            self.chosen.push(v);
            let step = self.feasible(first + 1, budget - 1);
            if !matches!(step, Step::Found) {
                self.chosen.pop();
                self.in_solution[v as usize] = false;
            }
            if !matches!(step, Step::Exhausted) {
                result = step;
                break;
            }
            self.forbidden[v as usize] += 1;
            forbidden_here.push(v);
        }
        for v in forbidden_here {
            self.forbidden[v as usize] -= 1;
        }
        result
    }

    fn collect(&mut self, from: usize, budget: usize, out: &mut Vec<Vec<VertexId>>) {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return;
        }
        let Some(first) = self.first_unhit(from) else {
            let mut s = self.chosen.clone();
            s.sort_unstable();
            out.push(s);
            return;
        };
        match self.packing_bound(first) {
            Some(lb) if lb <= budget => {}
            _ => return,
        }
        let e = self.h.edge(first);
        let mut forbidden_here = Vec::new();
        for &v in e {
            if self.forbidden[v as usize] > 0 {
                continue;
            }
            self.in_solution[v as usize] = true;
            self.chosen.push(v);
            self.collect(first + 1, budget - 1, out);
            self.chosen.pop();
            self.in_solution[v as usize] = false;
            self.forbidden[v as usize] += 1;
            forbidden_here.push(v);
        }
        for v in forbidden_here {
            self.forbidden[v as usize] -= 1;
        }
    }
}

/// Decides whether a hitting set of size at most `k` exists.
pub fn min_hitting_set(h: &Hypergraph, k: usize) -> SolveOutcome {
    solve_bounded(h, k, u64::MAX).expect("unbounded search finishes")
}

/// Like [`min_hitting_set`] but gives up with `None` after `node_limit`
/// search nodes.
pub fn solve_bounded(h: &Hypergraph, k: usize, node_limit: u64) -> Option<SolveOutcome> {
    let mut search = Search::new(h, node_limit);
    match search.feasible(0, k) {
        Step::Found => {
            let mut s = search.chosen;
            s.sort_unstable();
            Some(SolveOutcome {
                feasible: true,
                solution: Some(s),
            })
        }
        Step::Exhausted => Some(SolveOutcome {
            feasible: false,
            solution: None,
        }),
        Step::OutOfBudget => None,
    }
}

/// Size of a minimum hitting set.
pub fn optimum(h: &Hypergraph) -> usize {
    let (_, disjoint) = crate::bounds::approx_d(h);
    (disjoint.len()..)
        .find(|&k| min_hitting_set(h, k).feasible)
        .expect("the vertex set hits every edge")
}

/// All inclusion-minimal hitting sets of size at most `k`, each sorted, in
/// lexicographic order.
pub fn enumerate_minimal(h: &Hypergraph, k: usize) -> Vec<Vec<VertexId>> {
    enumerate_minimal_bounded(h, k, u64::MAX).expect("unbounded search finishes")
}

/// Like [`enumerate_minimal`] but gives up with `None` after `node_limit`
/// search nodes.
pub fn enumerate_minimal_bounded(
    h: &Hypergraph,
    k: usize,
    node_limit: u64,
) -> Option<Vec<Vec<VertexId>>> {
    let mut search = Search::new(h, node_limit);
    let mut found = Vec::new();
    search.collect(0, k, &mut found);
    if search.nodes > node_limit {
        return None;
    }
    let mut minimal: Vec<Vec<VertexId>> = found
        .into_iter()
        .filter(|s| {
            (0..s.len()).all(|i| {
                let mut without = s.clone();
                without.remove(i);
                !h.is_hit_by(&without)
            })
        })
        .collect();
    minimal.sort();
    Some(minimal)
}

/// Greedily collects edges containing `core` whose remainders outside the
/// core are pairwise disjoint, in input order.
pub fn max_sunflower_greedy(h: &Hypergraph, core: &CoreKey) -> Vec<usize> {
    let core = core.as_slice();
    let mut used = vec![false; h.n() + 1];
    let mut petals = Vec::new();
    for (i, e) in h.edges().enumerate() {
        let contains_core = core.iter().all(|v| e.binary_search(v).is_ok());
        if !contains_core {
            continue;
        }
        let mut rest = e.iter().filter(|v| core.binary_search(v).is_err());
        if rest.clone().any(|&v| used[v as usize]) {
            continue;
        }
        rest.by_ref().for_each(|&v| used[v as usize] = true);
        petals.push(i);
    }
    petals
}
