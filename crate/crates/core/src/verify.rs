//! Invariant suite for one instance and budget.
//!
//! Each check yields `PASS <name>`, `FAIL <name> <detail>` or
//! `SKIP <name> <reason>`; exact searches are capped by a node budget and are
//! skipped rather than left running when the cap is hit.

use std::fmt;

use crate::core_index::Backend;
use crate::hypergraph::Hypergraph;
use crate::kernelize::{
    kernel_edge_bound, kernelize, reduced_vertex_bound, weakly_related_bound, within, KernelConfig,
    KernelResult,
};
use crate::oracle::{enumerate_minimal_bounded, max_sunflower_greedy, solve_bounded};
use crate::vertex_reduce::{vertex_reduction, BipartiteGraph, Matching};
use crate::weakly_related::weakly_related_set;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
    Skip(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            Status::Pass => write!(f, "PASS {}", self.name),
            Status::Fail(detail) => write!(f, "FAIL {} {detail}", self.name),
            Status::Skip(reason) => write!(f, "SKIP {} {reason}", self.name),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.checks
            .iter()
            .any(|c| matches!(c.status, Status::Fail(_)))
    }

    fn push(&mut self, name: &'static str, status: Status) {
        self.checks.push(Check { name, status });
    }

    fn expect(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let status = if ok {
            Status::Pass
        } else {
            Status::Fail(detail())
        };
        self.push(name, status);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub k: usize,
    /// Search-node cap for each exact search.
    pub node_limit: u64,
}

impl VerifyOptions {
    pub fn new(k: usize) -> Self {
        VerifyOptions {
            k,
            node_limit: 2_000_000,
        }
    }
}

fn pair_overlap(a: &[u32], b: &[u32]) -> usize {
    a.iter().filter(|v| b.binary_search(v).is_ok()).count()
}

/// Pairwise overlap at most `d - 2` inside `w` and every other edge overlaps
/// some `w` edge in at least `d - 1` vertices.
pub fn check_weakly_related(h: &Hypergraph, w: &[usize]) -> Result<(), String> {
    let d = h.d();
    for (x, &i) in w.iter().enumerate() {
        for &j in &w[x + 1..] {
            if pair_overlap(h.edge(i), h.edge(j)) + 2 > d {
                return Err(format!(
                    "edges {i} and {j} overlap in more than d-2 vertices"
                ));
            }
        }
    }
    let mut in_w = vec![false; h.num_edges()];
    for &i in w {
        in_w[i] = true;
    }
    for (i, e) in h.edges().enumerate() {
        if !in_w[i] && !w.iter().any(|&j| pair_overlap(e, h.edge(j)) + 1 >= d) {
            return Err(format!("edge {i} could join W"));
        }
    }
    Ok(())
}

/// Maximum matching size by simple augmenting paths.
pub fn simple_matching_size(b: &BipartiteGraph) -> usize {
    let mut adj = vec![Vec::new(); b.left.len()];
    for &(l, r) in &b.edges {
        adj[l].push(r);
    }
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for &r in &adj[u] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if owner[r].is_none_or(|w| augment(w, adj, seen, owner)) {
                owner[r] = Some(u);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; b.right.len()];
    (0..b.left.len())
        .filter(|&u| augment(u, &adj, &mut vec![false; b.right.len()], &mut owner))
        .count()
}

fn check_matching(b: &BipartiteGraph, m: &Matching) -> Result<(), String> {
    if !m.is_valid_for(b) {
        return Err("pairs share an endpoint or are not edges".into());
    }
    let best = simple_matching_size(b);
    if m.len() != best {
        return Err(format!("size {} but maximum is {best}", m.len()));
    }
    Ok(())
}

fn decision(h: &Hypergraph, k: usize, limit: u64) -> Option<bool> {
    solve_bounded(h, k, limit).map(|o| o.feasible)
}

fn compare_decisions(
    report: &mut Report,
    name: &'static str,
    input: Option<bool>,
    reduced: &Hypergraph,
    opts: &VerifyOptions,
) {
    match (input, decision(reduced, opts.k, opts.node_limit)) {
        (Some(a), Some(b)) => report.expect(name, a == b, || {
            format!("k={} input feasible={a} reduced feasible={b}", opts.k)
        }),
        _ => report.push(name, Status::Skip("search node limit reached".into())),
    }
}

/// Runs every check against `h` with budget `opts.k`.
pub fn verify(h: &Hypergraph, opts: &VerifyOptions) -> Report {
    let k = opts.k;
    let d = h.d();
    let mut report = Report::default();

    let results: Vec<KernelResult> = Backend::ALL
        .iter()
        .map(|&b| kernelize(h, &KernelConfig::new(k).backend(b)))
        .collect();
    let reference = &results[0];
    let kernel = &reference.kernel;
    let diverging = Backend::ALL
        .iter()
        .zip(&results)
        .find(|(_, r)| r.canonical_text() != reference.canonical_text());
    report.expect("backend_equivalence", diverging.is_none(), || {
        format!(
            "backend {} differs from {}",
            diverging.unwrap().0,
            Backend::ALL[0]
        )
    });

    let edges_out = kernel.num_edges();
    let vertices_out = kernel.num_live_vertices();
    report.expect(
        "kernel_size",
        within(edges_out, kernel_edge_bound(d, k)) && vertices_out <= d * edges_out,
        || format!("d={d} k={k} edges_out={edges_out} vertices_out={vertices_out}"),
    );

    let cap = d * (k + 1);
    let over_cap = reference
        .sunflowers
        .iter()
        .map(|f| (f, max_sunflower_greedy(kernel, &f.core).len()))
        .find(|&(_, size)| size > cap);
    report.expect("petal_cap", over_cap.is_none(), || {
        let (f, size) = over_cap.unwrap();
        format!("core {} has {size} petals in the kernel, cap {cap}", f.core)
    });

    let input_decision = decision(h, k, opts.node_limit);
    compare_decisions(
        &mut report,
        "kernel_equivalence",
        input_decision,
        kernel,
        opts,
    );

    match (
        enumerate_minimal_bounded(h, k, opts.node_limit),
        enumerate_minimal_bounded(kernel, k, opts.node_limit),
    ) {
        (Some(a), Some(b)) => report.expect("full_kernel", a == b, || {
            format!(
                "k={k} input has {} minimal solutions, kernel {}",
                a.len(),
                b.len()
            )
        }),
        _ => report.push(
            "full_kernel",
            Status::Skip("search node limit reached".into()),
        ),
    }

    let wr = weakly_related_set(kernel, Backend::default());
    let w_check = check_weakly_related(kernel, &wr.w_indices);
    let w_size = wr.w_indices.len();
    report.expect(
        "weakly_related",
        w_check.is_ok() && within(w_size, weakly_related_bound(d, k)),
        || {
            w_check
                .err()
                .unwrap_or_else(|| format!("|W|={w_size} exceeds bound for d={d} k={k}"))
        },
    );

    let vr = vertex_reduction(kernel, Backend::default());
    let m_check = check_matching(&vr.bipartite, &vr.matching);
    report.expect("matching", m_check.is_ok(), || m_check.unwrap_err());

    let live = vr.reduced.num_live_vertices();
    report.expect(
        "reduced_vertices",
        within(live, reduced_vertex_bound(d, k)),
        || format!("d={d} k={k} vertices={live}"),
    );
    compare_decisions(
        &mut report,
        "reduced_equivalence",
        input_decision,
        &vr.reduced,
        opts,
    );

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example1;

    #[test]
    fn example_passes() {
        for k in 0..=3 {
            let report = verify(&example1(), &VerifyOptions::new(k));
            assert!(!report.failed(), "k={k}\n{report}");
            assert!(
                report.checks.iter().all(|c| c.status == Status::Pass),
                "{report}"
            );
        }
    }

    #[test]
    fn weakly_related_checker() {
        let h = example1();
        assert!(check_weakly_related(&h, &[0, 1, 2]).is_ok());
        assert!(check_weakly_related(&h, &[0, 1]).is_err());
        assert!(check_weakly_related(&h, &[2, 3]).is_err());
    }

    #[test]
    fn tiny_node_limit_skips() {
        let opts = VerifyOptions {
            k: 2,
            node_limit: 1,
        };
        let report = verify(&example1(), &opts);
        assert!(!report.failed());
        assert!(report.to_string().contains("SKIP kernel_equivalence"));
    }
}
