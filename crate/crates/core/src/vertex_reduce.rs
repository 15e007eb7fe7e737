//! Vertex reduction by maximum bipartite matching.
//!
//! Vertices outside every weakly related edge form an independent set `I`.
//! Each size-`d` edge `{v} ∪ s` with `v ∈ I` and `s` a flagged `(d-1)`-set
//! becomes a bipartite edge `(v, s)`. After a maximum matching, unmatched
//! `I` vertices and the edges through them can be dropped.

use std::collections::HashMap;
use std::collections::VecDeque;

use crate::core_index::Backend;
use crate::hypergraph::{CoreKey, Hypergraph, VertexId};
use crate::kernelize::{kernelize, reduced_vertex_bound, within, KernelConfig, KernelResult};
use crate::weakly_related::{weakly_related_set, WeaklyRelatedResult};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BipartiteGraph {
    /// Independent vertices, ascending.
    pub left: Vec<VertexId>,
    /// `(d-1)`-sets in order of first appearance.
    pub right: Vec<CoreKey>,
    /// `(left index, right index)` pairs in construction order.
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Builds a graph from raw sizes and edges; right keys are left empty.
    pub fn from_edges(left: usize, right: usize, edges: Vec<(usize, usize)>) -> Self {
        BipartiteGraph {
            left: (1..=left as VertexId).collect(),
            right: vec![CoreKey::empty(); right],
            edges,
        }
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.left.len()];
        for &(l, r) in &self.edges {
            adj[l].push(r);
        }
        adj
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Matching {
    /// `(left index, right index)`, ascending by left index.
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// No two pairs share an endpoint and every pair is an edge of `b`.
    pub fn is_valid_for(&self, b: &BipartiteGraph) -> bool {
        let mut l = vec![false; b.left.len()];
        let mut r = vec![false; b.right.len()];
        self.pairs.iter().all(|&(u, v)| {
            let ok = u < l.len() && v < r.len() && !l[u] && !r[v] && b.edges.contains(&(u, v));
            if ok {
                l[u] = true;
                r[v] = true;
            }
            ok
        })
    }
}

/// Collects `I`, `S` and the bipartite edges from size-`d` edges of `h`.
pub fn build_bipartite(h: &Hypergraph, wr: &WeaklyRelatedResult) -> BipartiteGraph {
    let d = wr.d;
    let mut raw: Vec<(VertexId, CoreKey)> = Vec::new();
    let mut rest = Vec::with_capacity(d);
    if d >= 2 {
        for e in h.edges().filter(|e| e.len() == d) {
            for (i, &v) in e.iter().enumerate() {
                if wr.in_w(v) {
                    continue;
                }
                rest.clear();
                rest.extend_from_slice(&e[..i]);
                rest.extend_from_slice(&e[i + 1..]);
                if wr.flags.get_flag(&rest) {
                    raw.push((v, CoreKey::from_sorted(&rest)));
                }
            }
        }
    }

    let mut left: Vec<VertexId> = raw.iter().map(|&(v, _)| v).collect();
    left.sort_unstable();
    left.dedup();
    let mut right = Vec::new();
    let mut right_index: HashMap<CoreKey, usize> = HashMap::new();
    let mut edges = Vec::with_capacity(raw.len());
    for (v, s) in raw {
        let l = left.binary_search(&v).expect("collected above");
        let r = *right_index.entry(s).or_insert_with_key(|s| {
            right.push(s.clone());
            right.len() - 1
        });
        edges.push((l, r));
    }
    BipartiteGraph { left, right, edges }
}

const NIL: usize = usize::MAX;

/// Maximum matching. Phases scan free left vertices in index order and
/// adjacency lists in construction order, so the result is deterministic.
pub fn hopcroft_karp(b: &BipartiteGraph) -> Matching {
    let adj = b.adjacency();
    let nl = b.left.len();
    let nr = b.right.len();
    let mut pair_l = vec![NIL; nl];
    let mut pair_r = vec![NIL; nr];
    let mut dist = vec![usize::MAX; nl];
    let mut next = vec![0usize; nl];
    let mut queue = VecDeque::new();
    let mut stack = Vec::new();

    loop {
        // layer the graph from all free left vertices
        queue.clear();
        for u in 0..nl {
            if pair_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut limit = usize::MAX;
        while let Some(u) = queue.pop_front() {
            if dist[u] >= limit {
                continue;
            }
            for &v in &adj[u] {
                let w = pair_r[v];
                if w == NIL {
                    limit = limit.min(dist[u]);
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if limit == usize::MAX {
            break;
        }

        next.fill(0);
        for root in 0..nl {
            if pair_l[root] != NIL {
                continue;
            }
            stack.clear();
            stack.push(root);
            while let Some(&u) = stack.last() {
                if next[u] == adj[u].len() {
                    dist[u] = usize::MAX;
                    stack.pop();
                    continue;
                }
                let v = adj[u][next[u]];
                next[u] += 1;
                let w = pair_r[v];
                if w == NIL {
                    if dist[u] == limit {
                        for &x in stack.iter().rev() {
                            let y = adj[x][next[x] - 1];
                            pair_l[x] = y;
                            pair_r[y] = x;
                        }
                        break;
                    }
                } else if dist[u] < limit && dist[w] == dist[u] + 1 {
                    stack.push(w);
                }
            }
            if pair_l[root] != NIL {
                // every vertex on the path is used up for this phase
                for &x in &stack {
                    dist[x] = usize::MAX;
                }
            }
        }
    }

    Matching {
        pairs: (0..nl)
            .filter(|&u| pair_l[u] != NIL)
            .map(|u| (u, pair_l[u]))
            .collect(),
    }
}

/// Left vertices of `b` left unmatched by `m`, ascending.
pub fn unmatched_left(b: &BipartiteGraph, m: &Matching) -> Vec<VertexId> {
    let mut matched = vec![false; b.left.len()];
    for &(u, _) in &m.pairs {
        matched[u] = true;
    }
    b.left
        .iter()
        .zip(&matched)
        .filter(|(_, &m)| !m)
        .map(|(&v, _)| v)
        .collect()
}

/// Indices of the edges of `h` that avoid every vertex in `removed` (sorted).
fn surviving_edges(h: &Hypergraph, removed: &[VertexId]) -> Vec<usize> {
    let mut gone = vec![false; h.n() + 1];
    for &v in removed {
        gone[v as usize] = true;
    }
    h.edges()
        .enumerate()
        .filter(|(_, e)| e.iter().all(|&v| !gone[v as usize]))
        .map(|(i, _)| i)
        .collect()
}

/// Drops unmatched left vertices and every edge that contains one. Vertex
/// ids are not renumbered.
pub fn reduce_vertices(h: &Hypergraph, b: &BipartiteGraph, m: &Matching) -> Hypergraph {
    h.select(&surviving_edges(h, &unmatched_left(b, m)))
}

#[derive(Debug, Clone)]
pub struct VertexReduction {
    pub reduced: Hypergraph,
    /// Indices into the reduced instance's input, ascending.
    pub kept: Vec<usize>,
    pub removed_vertices: Vec<VertexId>,
    pub w_size: usize,
    pub bipartite: BipartiteGraph,
    pub matching: Matching,
}

/// Weakly related set, bipartite graph, matching and deletion in one go.
///
/// For `d <= 1` nothing is removed: there the deletion would not preserve
/// the answer (three singleton edges with budget 2 would lose one).
pub fn vertex_reduction(h: &Hypergraph, backend: Backend) -> VertexReduction {
    let wr = weakly_related_set(h, backend);
    let w_size = wr.w_indices.len();
    if h.d() <= 1 {
        return VertexReduction {
            reduced: h.clone(),
            kept: (0..h.num_edges()).collect(),
            removed_vertices: Vec::new(),
            w_size,
            bipartite: BipartiteGraph::default(),
            matching: Matching::default(),
        };
    }
    let bipartite = build_bipartite(h, &wr);
    let matching = hopcroft_karp(&bipartite);
    let removed_vertices = unmatched_left(&bipartite, &matching);
    let kept = surviving_edges(h, &removed_vertices);
    let reduced = h.select(&kept);
    VertexReduction {
        reduced,
        kept,
        removed_vertices,
        w_size,
        bipartite,
        matching,
    }
}

/// Kernelizes `h` and then reduces the kernel's vertices.
///
/// `VertexReduction::kept` indexes the kernel; [`Pipeline::kept_input`]
/// maps the surviving edges back to `h`.
pub fn kernelize_and_reduce(h: &Hypergraph, config: &KernelConfig) -> Pipeline {
    let kernel = kernelize(h, config);
    let reduction = vertex_reduction(&kernel.kernel, config.backend);
    let live = reduction.reduced.num_live_vertices();
    assert!(
        within(live, reduced_vertex_bound(h.d(), config.k)),
        "reduced kernel has {live} vertices, above the bound for d={} k={}",
        h.d(),
        config.k
    );
    Pipeline { kernel, reduction }
}

#[derive(Debug, Clone)]
pub struct Pipeline {
    pub kernel: KernelResult,
    pub reduction: VertexReduction,
}

impl Pipeline {
    /// Input indices of the edges that survive both steps, ascending.
    pub fn kept_input(&self) -> Vec<usize> {
        self.reduction
            .kept
            .iter()
            .map(|&i| self.kernel.kept[i])
            .collect()
    }
}
