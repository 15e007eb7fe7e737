//! Linear-time sunflower kernelization.
//!
//! Edges are copied one at a time, in input order, into an initially empty
//! kernel. An edge is rejected when one of its candidate cores already has
//! `k + 1` petals; otherwise it is kept and becomes a petal of every core it
//! extends disjointly (no vertex outside the core is marked used for that
//! core yet). A core with `k + 1` petals is reported as a [`Sunflower`]: any
//! hitting set of size at most `k` must contain one of its vertices.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::{Duration, Instant};

use smallvec::SmallVec;

use crate::core_index::{Backend, CoreStore, UsedMode};
use crate::hypergraph::{
    enumerate_subsets, format_ids, radix_sort_keys, CoreKey, Hypergraph, VertexId,
};

/// Which cores are examined for one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Every subset of the edge.
    Small,
    /// Intersections of the edge with other edges, plus `∅` and the edge itself.
    Large,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum StrategyMode {
    /// `Small` iff `2^|e| <= |E|`.
    #[default]
    Auto,
    ForceSmall,
    ForceLarge,
}

impl StrategyMode {
    pub fn name(self) -> &'static str {
        match self {
            StrategyMode::Auto => "auto",
            StrategyMode::ForceSmall => "small",
            StrategyMode::ForceLarge => "large",
        }
    }

    pub fn strategy_for(self, edge_len: usize, num_edges: usize) -> Strategy {
        match self {
            StrategyMode::ForceSmall => Strategy::Small,
            StrategyMode::ForceLarge => Strategy::Large,
            StrategyMode::Auto => {
                if edge_len < 64 && (1u64 << edge_len) <= num_edges as u64 {
                    Strategy::Small
                } else {
                    Strategy::Large
                }
            }
        }
    }
}

impl fmt::Display for StrategyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(StrategyMode::Auto),
            "small" => Ok(StrategyMode::ForceSmall),
            "large" => Ok(StrategyMode::ForceLarge),
            _ => Err(format!(
                "unknown strategy `{s}` (expected auto, small, large)"
            )),
        }
    }
}

/// Which edges a `Large` edge is intersected with.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum LargeAgainst {
    /// Edges kept so far.
    Kept,
    /// Every other input edge.
    #[default]
    All,
}

impl LargeAgainst {
    pub fn name(self) -> &'static str {
        match self {
            LargeAgainst::Kept => "kept",
            LargeAgainst::All => "all",
        }
    }
}

impl fmt::Display for LargeAgainst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LargeAgainst {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "kept" => Ok(LargeAgainst::Kept),
            "all" => Ok(LargeAgainst::All),
            _ => Err(format!("unknown value `{s}` (expected kept, all)")),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct KernelConfig {
    pub k: usize,
    pub backend: Backend,
    pub strategy: StrategyMode,
    pub large_against: LargeAgainst,
    pub used_mode: UsedMode,
}

impl KernelConfig {
    pub fn new(k: usize) -> Self {
        KernelConfig {
            k,
            backend: Backend::default(),
            strategy: StrategyMode::default(),
            large_against: LargeAgainst::default(),
            used_mode: UsedMode::default(),
        }
    }

    pub fn backend(mut self, backend: Backend) -> Self {
        self.backend = backend;
        self
    }

    pub fn strategy(mut self, strategy: StrategyMode) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn large_against(mut self, large_against: LargeAgainst) -> Self {
        self.large_against = large_against;
        self
    }

    pub fn used_mode(mut self, used_mode: UsedMode) -> Self {
        self.used_mode = used_mode;
        self
    }
}

/// A core together with `k + 1` petals whose pairwise intersection is the core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sunflower {
    pub core: CoreKey,
    /// Edge indices into the input hypergraph.
    pub petal_edges: Vec<usize>,
}

impl Sunflower {
    /// An empty core means `k + 1` pairwise disjoint edges: no hitting set of
    /// size `k` exists.
    pub fn is_no_instance_witness(&self) -> bool {
        self.core.is_empty()
    }

    /// `core: <ids> petals: <edge indices>`
    pub fn explanation_line(&self) -> String {
        let mut s = String::from("core:");
        for v in self.core.as_slice() {
            let _ = write!(s, " {v}");
        }
        s.push_str(" petals:");
        for p in &self.petal_edges {
            let _ = write!(s, " {p}");
        }
        s
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KernelStats {
    pub edges_in: usize,
    pub edges_out: usize,
    pub vertices_out: usize,
    /// Records held by the core store at the end of the run.
    pub cores_registered: usize,
    pub small_edges: usize,
    pub large_edges: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct KernelResult {
    pub k: usize,
    pub kernel: Hypergraph,
    /// Input index of every kernel edge, ascending.
    pub kept: Vec<usize>,
    pub sunflowers: Vec<Sunflower>,
    pub stats: KernelStats,
}

impl KernelResult {
    /// One line per reported sunflower.
    pub fn explanation(&self) -> String {
        let mut s = String::new();
        for f in &self.sunflowers {
            s.push_str(&f.explanation_line());
            s.push('\n');
        }
        s
    }

    /// Everything except timings; equal for equal inputs and flags.
    pub fn canonical_text(&self) -> String {
        let st = &self.stats;
        format!(
            "k {}\nedges_in {}\nedges_out {}\nvertices_out {}\nsmall {}\nlarge {}\nkept {}\n{}{}",
            self.k,
            st.edges_in,
            st.edges_out,
            st.vertices_out,
            st.small_edges,
            st.large_edges,
            format_ids(&self.kept),
            crate::hypergraph::serialize(&self.kernel),
            self.explanation(),
        )
    }
}

fn checked_pow(base: u128, exp: usize) -> Option<u128> {
    (0..exp).try_fold(1u128, |acc, _| acc.checked_mul(base))
}

fn factorial(d: usize) -> Option<u128> {
    (1..=d as u128).try_fold(1u128, |acc, i| acc.checked_mul(i))
}

/// `d! * d^(d+1) * (k+1)^d`, or `None` if it does not fit in 128 bits.
pub fn kernel_edge_bound(d: usize, k: usize) -> Option<u128> {
    factorial(d)?
        .checked_mul(checked_pow(d as u128, d + 1)?)?
        .checked_mul(checked_pow(k as u128 + 1, d)?)
}

/// `2 * d! * d^(d+1) * (k+1)^(d-1)` for `d >= 1`.
pub fn reduced_vertex_bound(d: usize, k: usize) -> Option<u128> {
    2u128
        .checked_mul(factorial(d)?)?
        .checked_mul(checked_pow(d as u128, d + 1)?)?
        .checked_mul(checked_pow(k as u128 + 1, d.saturating_sub(1))?)
}

/// `d! * d^d * (k+1)^(d-1)` for `d >= 1`.
pub fn weakly_related_bound(d: usize, k: usize) -> Option<u128> {
    factorial(d)?
        .checked_mul(checked_pow(d as u128, d)?)?
        .checked_mul(checked_pow(k as u128 + 1, d.saturating_sub(1))?)
}

/// True when `value <= bound`, treating an overflowed bound as infinite.
pub fn within(value: usize, bound: Option<u128>) -> bool {
    bound.is_none_or(|b| value as u128 <= b)
}

/// Candidate cores of `edge` under `strategy`, sorted and deduplicated.
///
/// `others` is only consulted for [`Strategy::Large`].
pub fn core_candidates<'a>(
    edge: &[VertexId],
    others: impl IntoIterator<Item = &'a [VertexId]>,
    strategy: Strategy,
) -> Vec<CoreKey> {
    match strategy {
        Strategy::Small => enumerate_subsets(edge),
        Strategy::Large => {
            let mut out = vec![CoreKey::empty(), CoreKey::from_sorted(edge)];
            let mut buf = Vec::with_capacity(edge.len());
            for other in others {
                intersect_sorted(edge, other, &mut buf);
                out.push(CoreKey::from_sorted(&buf));
            }
            out.sort_unstable();
            out.dedup();
            out
        }
    }
}

pub(crate) fn intersect_sorted(a: &[VertexId], b: &[VertexId], out: &mut Vec<VertexId>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

/// Every key the run may touch, radix sorted. Needed by [`Backend::LazyTrie`].
fn registration_keys(h: &Hypergraph, mode: StrategyMode) -> Vec<CoreKey> {
    let m = h.num_edges();
    let mut keys = Vec::new();
    for (i, e) in h.edges().enumerate() {
        match mode.strategy_for(e.len(), m) {
            Strategy::Small => keys.extend(enumerate_subsets(e)),
            Strategy::Large => {
                let others = h
                    .edges()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, o)| o);
                keys.extend(core_candidates(e, others, Strategy::Large));
            }
        }
    }
    let mut keys = radix_sort_keys(keys, h.n());
    keys.dedup();
    keys
}

type Core = SmallVec<[VertexId; 8]>;

/// Runs the kernelization on a canonical hypergraph.
pub fn kernelize(h: &Hypergraph, config: &KernelConfig) -> KernelResult {
    kernelize_with_store(h, config).0
}

/// [`kernelize`], also returning the final core store for inspection.
pub fn kernelize_with_store(h: &Hypergraph, config: &KernelConfig) -> (KernelResult, CoreStore) {
    let start = Instant::now();
    let k = config.k;
    let m = h.num_edges();
    let threshold = k as u32 + 1;

    let keys = if config.backend.needs_registration() {
        registration_keys(h, config.strategy)
    } else {
        Vec::new()
    };
    let mut store = CoreStore::build_with_mode(config.backend, &keys, h.n(), config.used_mode)
        .expect("registration keys are radix sorted and in range");
    drop(keys);

    let mut kept: Vec<usize> = Vec::new();
    let mut sunflowers = Vec::new();
    let mut stats = KernelStats {
        edges_in: m,
        ..KernelStats::default()
    };
    let mut cores: Vec<Core> = Vec::new();
    let mut reached: Vec<Core> = Vec::new();

    for (i, e) in h.edges().enumerate() {
        let strategy = config.strategy.strategy_for(e.len(), m);
        cores.clear();
        match strategy {
            Strategy::Small => {
                stats.small_edges += 1;
                for mask in 0u64..(1u64 << e.len()) {
                    cores.push(
                        e.iter()
                            .enumerate()
                            .filter(|&(b, _)| mask >> b & 1 == 1)
                            .map(|(_, &v)| v)
                            .collect(),
                    );
                }
            }
            Strategy::Large => {
                stats.large_edges += 1;
                let candidates = match config.large_against {
                    LargeAgainst::Kept => {
                        core_candidates(e, kept.iter().map(|&j| h.edge(j)), Strategy::Large)
                    }
                    LargeAgainst::All => core_candidates(
                        e,
                        h.edges()
                            .enumerate()
                            .filter(|&(j, _)| j != i)
                            .map(|(_, o)| o),
                        Strategy::Large,
                    ),
                };
                cores.extend(candidates.iter().map(|c| Core::from_slice(c.as_slice())));
            }
        }

        if cores.iter().any(|c| store.petal_count(c) >= threshold) {
            continue;
        }
        kept.push(i);

        reached.clear();
        for core in &cores {
            let outside = || e.iter().copied().filter(|v| !core.contains(v));
            let suitable = store
                .record(core)
                .is_none_or(|r| outside().all(|v| !r.used.contains(v)));
            if !suitable {
                continue;
            }
            let rec = store.record_mut(core);
            rec.petals += 1;
            rec.petal_edges.push(i as u32);
            for v in outside() {
                rec.used.insert(v);
            }
            if rec.petals == threshold && threshold >= 2 {
                reached.push(core.clone());
            }
        }
        reached.sort_unstable();
        for core in &reached {
            let rec = store.record(core).expect("just written");
            sunflowers.push(Sunflower {
                core: CoreKey::from_sorted(core),
                petal_edges: rec.petal_edges.iter().map(|&p| p as usize).collect(),
            });
        }
    }

    let kernel = h.select(&kept);
    stats.edges_out = kernel.num_edges();
    stats.vertices_out = kernel.num_live_vertices();
    stats.cores_registered = store.len();
    stats.elapsed = start.elapsed();

    assert!(
        within(stats.edges_out, kernel_edge_bound(h.d(), k)),
        "kernel has {} edges, above the bound for d={} k={k}",
        stats.edges_out,
        h.d()
    );
    assert!(stats.vertices_out <= h.d() * stats.edges_out);

    let result = KernelResult {
        k,
        kernel,
        kept,
        sunflowers,
        stats,
    };
    (result, store)
}
