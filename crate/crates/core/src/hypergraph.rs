//! Instance representation, text format, and key-list preparation.
//!
//! A [`Hypergraph`] stores its edges in one flat buffer (CSR layout). Edges are
//! always canonical: sorted ascending, no repeated vertices, and no two edges
//! equal as sets. Vertex ids are dense in `1..=n`.

use std::borrow::Borrow;
use std::collections::HashSet;
use std::fmt;
use std::fmt::Write as _;

use smallvec::SmallVec;
use thiserror::Error;

/// A vertex, numbered from 1.
pub type VertexId = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: u64, n: usize },
    #[error("line {line}: empty hyperedge")]
    EmptyEdge { line: usize },
    #[error("line {line}: hyperedge of cardinality {size} exceeds the maximum {max}")]
    TooLarge {
        line: usize,
        size: usize,
        max: usize,
    },
    #[error("missing `p hs <n> <m>` header")]
    MissingHeader,
    #[error("header announces {expected} hyperedges, found {found}")]
    EdgeCount { expected: usize, found: usize },
}

/// A sorted vertex set of length `0..=d`, used as the key for per-core records.
///
/// Ordering is lexicographic with a proper prefix sorting before its
/// extensions, which is exactly the ordering of `[VertexId]`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoreKey(SmallVec<[VertexId; 4]>);

impl CoreKey {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a key from vertices that are already strictly increasing.
    pub fn from_sorted(vertices: &[VertexId]) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        CoreKey(SmallVec::from_slice(vertices))
    }

    /// Builds a key from arbitrary vertices (sorted and deduplicated here).
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Self {
        let mut v: SmallVec<[VertexId; 4]> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        CoreKey(v)
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Borrow<[VertexId]> for CoreKey {
    fn borrow(&self) -> &[VertexId] {
        &self.0
    }
}

impl fmt::Debug for CoreKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for CoreKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ids(f, &self.0)
    }
}

impl From<&[VertexId]> for CoreKey {
    fn from(v: &[VertexId]) -> Self {
        CoreKey::new(v.iter().copied())
    }
}

fn write_ids(out: &mut impl fmt::Write, ids: &[VertexId]) -> fmt::Result {
    for (i, v) in ids.iter().enumerate() {
        if i > 0 {
            out.write_char(' ')?;
        }
        write!(out, "{v}")?;
    }
    Ok(())
}

/// Space-separated id list, as used by every text format in this crate.
pub fn format_ids<T: fmt::Display>(ids: impl IntoIterator<Item = T>) -> String {
    let mut s = String::new();
    for (i, v) in ids.into_iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{v}");
    }
    s
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Hypergraph {
    n: usize,
    offsets: Vec<usize>,
    vertices: Vec<VertexId>,
    d: usize,
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("n", &self.n)
            .field("d", &self.d)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Hypergraph {
    /// An instance with `n` isolated vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Hypergraph {
            n,
            offsets: vec![0],
            vertices: Vec::new(),
            d: 0,
        }
    }

    /// Canonicalizes `edges`: each edge is sorted and deduplicated, later
    /// copies of an edge are dropped, and the first-occurrence order is kept.
    ///
    /// Panics on empty edges or ids outside `1..=n`; use [`parse`] for
    /// untrusted input.
    pub fn from_edges<I, E>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[VertexId]>,
    {
        let mut b = HypergraphBuilder::new(n);
        for e in edges {
            let e = e.as_ref();
            assert!(!e.is_empty(), "empty hyperedge");
            assert!(
                e.iter().all(|&v| v >= 1 && v as usize <= n),
                "vertex out of range 1..={n}: {e:?}"
            );
            b.push(e);
        }
        b.finish()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn num_edges(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.num_edges() == 0
    }

    pub fn edge(&self, i: usize) -> &[VertexId] {
        &self.vertices[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[VertexId]> + '_ {
        self.offsets.windows(2).map(|w| &self.vertices[w[0]..w[1]])
    }

    /// Sum of edge cardinalities.
    pub fn total_size(&self) -> usize {
        self.vertices.len()
    }

    /// Vertices that occur in at least one edge, ascending.
    pub fn live_vertices(&self) -> Vec<VertexId> {
        let mut seen = vec![false; self.n + 1];
        for &v in &self.vertices {
            seen[v as usize] = true;
        }
        (1..=self.n as VertexId)
            .filter(|&v| seen[v as usize])
            .collect()
    }

    pub fn num_live_vertices(&self) -> usize {
        let mut seen = vec![false; self.n + 1];
        let mut count = 0;
        for &v in &self.vertices {
            if !std::mem::replace(&mut seen[v as usize], true) {
                count += 1;
            }
        }
        count
    }

    /// The subhypergraph with the edges at `indices` (in that order). `n` is unchanged.
    pub fn select(&self, indices: &[usize]) -> Hypergraph {
        let mut offsets = Vec::with_capacity(indices.len() + 1);
        offsets.push(0);
        let mut vertices = Vec::new();
        let mut d = 0;
        for &i in indices {
            let e = self.edge(i);
            vertices.extend_from_slice(e);
            offsets.push(vertices.len());
            d = d.max(e.len());
        }
        Hypergraph {
            n: self.n,
            offsets,
            vertices,
            d,
        }
    }

    /// True if every edge contains a vertex of `set`.
    pub fn is_hit_by(&self, set: &[VertexId]) -> bool {
        let mut mark = vec![false; self.n + 1];
        for &v in set {
            if (v as usize) < mark.len() {
                mark[v as usize] = true;
            }
        }
        self.edges().all(|e| e.iter().any(|&v| mark[v as usize]))
    }

    /// Incidence lists: `result[v]` holds the indices of edges containing `v`.
    pub fn incidence(&self) -> Vec<Vec<u32>> {
        let mut inc = vec![Vec::new(); self.n + 1];
        for (i, e) in self.edges().enumerate() {
            for &v in e {
                inc[v as usize].push(i as u32);
            }
        }
        inc
    }
}

/// Incremental canonicalizing constructor.
pub struct HypergraphBuilder {
    n: usize,
    offsets: Vec<usize>,
    vertices: Vec<VertexId>,
    d: usize,
    seen: HashSet<Box<[VertexId]>>,
    scratch: Vec<VertexId>,
}

impl HypergraphBuilder {
    pub fn new(n: usize) -> Self {
        HypergraphBuilder {
            n,
            offsets: vec![0],
            vertices: Vec::new(),
            d: 0,
            seen: HashSet::new(),
            scratch: Vec::new(),
        }
    }

    /// Adds an edge; returns false if it duplicates an earlier one.
    pub fn push(&mut self, edge: &[VertexId]) -> bool {
        self.scratch.clear();
        self.scratch.extend_from_slice(edge);
        self.scratch.sort_unstable();
        self.scratch.dedup();
        if self.seen.contains(self.scratch.as_slice()) {
            return false;
        }
        self.seen.insert(self.scratch.clone().into_boxed_slice());
        self.vertices.extend_from_slice(&self.scratch);
        self.offsets.push(self.vertices.len());
        self.d = self.d.max(self.scratch.len());
        true
    }

    /// Adds an edge already known to be canonical and new.
    pub fn push_unchecked(&mut self, edge: &[VertexId]) {
        self.vertices.extend_from_slice(edge);
        self.offsets.push(self.vertices.len());
        self.d = self.d.max(edge.len());
    }

    pub fn contains(&self, sorted_edge: &[VertexId]) -> bool {
        self.seen.contains(sorted_edge)
    }

    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn finish(self) -> Hypergraph {
        Hypergraph {
            n: self.n,
            offsets: self.offsets,
            vertices: self.vertices,
            d: self.d,
        }
    }
}

/// Parses the instance text format.
///
/// Comment lines start with `c`. The header `p hs <n> <m>` is followed by
/// `m` edge lines of space-separated vertex ids in any order.
pub fn parse(text: &str) -> Result<Hypergraph, ParseError> {
    parse_with_limit(text, None)
}

/// Like [`parse`], but rejects edges larger than `max_cardinality`.
pub fn parse_with_limit(
    text: &str,
    max_cardinality: Option<usize>,
) -> Result<Hypergraph, ParseError> {
    let mut builder: Option<HypergraphBuilder> = None;
    let mut expected = 0usize;
    let mut read = 0usize;
    let mut edge: Vec<VertexId> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.starts_with('c') {
            continue;
        }
        let Some(b) = builder.as_mut() else {
            if trimmed.is_empty() {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "hs" {
                return Err(ParseError::Malformed {
                    line,
                    msg: format!("expected `p hs <n> <m>`, got `{trimmed}`"),
                });
            }
            let num = |s: &str| {
                s.parse::<usize>().map_err(|_| ParseError::Malformed {
                    line,
                    msg: format!("invalid number `{s}` in header"),
                })
            };
            let n = num(fields[2])?;
            if n > VertexId::MAX as usize {
                return Err(ParseError::Malformed {
                    line,
                    msg: format!("vertex count {n} too large"),
                });
            }
            expected = num(fields[3])?;
            builder = Some(HypergraphBuilder::new(n));
            continue;
        };

        if read == expected {
            if trimmed.is_empty() {
                continue;
            }
            return Err(ParseError::EdgeCount {
                expected,
                found: read + 1,
            });
        }
        edge.clear();
        for tok in trimmed.split_whitespace() {
            let v: u64 = tok.parse().map_err(|_| ParseError::Malformed {
                line,
                msg: format!("invalid vertex id `{tok}`"),
            })?;
            if v == 0 || v > b.n as u64 {
                return Err(ParseError::VertexOutOfRange {
                    line,
                    vertex: v,
                    n: b.n,
                });
            }
            edge.push(v as VertexId);
        }
        if edge.is_empty() {
            return Err(ParseError::EmptyEdge { line });
        }
        if let Some(max) = max_cardinality {
            edge.sort_unstable();
            edge.dedup();
            if edge.len() > max {
                return Err(ParseError::TooLarge {
                    line,
                    size: edge.len(),
                    max,
                });
            }
        }
        b.push(&edge);
        read += 1;
    }

    let b = builder.ok_or(ParseError::MissingHeader)?;
    if read != expected {
        return Err(ParseError::EdgeCount {
            expected,
            found: read,
        });
    }
    Ok(b.finish())
}

/// Serializes to the instance format: header, then one edge per line with
/// ascending ids separated by single spaces, each line terminated by LF.
pub fn serialize(h: &Hypergraph) -> String {
    serialize_with_comments(h, &[])
}

/// [`serialize`] preceded by `c <comment>` lines.
pub fn serialize_with_comments(h: &Hypergraph, comments: &[String]) -> String {
    let mut out = String::with_capacity(16 + h.total_size() * 4);
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(out, "p hs {} {}", h.n(), h.num_edges());
    for e in h.edges() {
        let _ = write_ids(&mut out, e);
        out.push('\n');
    }
    out
}

/// All `2^|e|` subsets of a sorted edge, in lexicographic order.
pub fn enumerate_subsets(edge: &[VertexId]) -> Vec<CoreKey> {
    fn rec(edge: &[VertexId], start: usize, prefix: &mut Vec<VertexId>, out: &mut Vec<CoreKey>) {
        out.push(CoreKey::from_sorted(prefix));
        for i in start..edge.len() {
            prefix.push(edge[i]);
            rec(edge, i + 1, prefix, out);
            prefix.pop();
        }
    }
    debug_assert!(edge.windows(2).all(|w| w[0] < w[1]));
    let mut out = Vec::with_capacity(1 << edge.len().min(20));
    rec(edge, 0, &mut Vec::with_capacity(edge.len()), &mut out);
    out
}

/// Stable LSD radix sort of keys over the alphabet `1..=n`.
///
/// Missing trailing positions act as a symbol smaller than every vertex, so a
/// key sorts before its extensions. Runs in `O(d * (n + keys.len()))`.
pub fn radix_sort_keys(keys: Vec<CoreKey>, n: usize) -> Vec<CoreKey> {
    if keys.len() <= 1 {
        return keys;
    }
    let width = keys.iter().map(CoreKey::len).max().unwrap_or(0);
    let mut order: Vec<u32> = (0..keys.len() as u32).collect();
    let mut next = vec![0u32; keys.len()];
    let mut counts = vec![0usize; n + 2];
    let symbol = |k: &CoreKey, pos: usize| k.0.get(pos).map_or(0, |&v| v as usize);

    for pos in (0..width).rev() {
        counts.iter_mut().for_each(|c| *c = 0);
        for &i in &order {
            counts[symbol(&keys[i as usize], pos) + 1] += 1;
        }
        for s in 1..counts.len() {
            counts[s] += counts[s - 1];
        }
        for &i in &order {
            let s = symbol(&keys[i as usize], pos);
            next[counts[s]] = i;
            counts[s] += 1;
        }
        std::mem::swap(&mut order, &mut next);
    }

    let mut slots: Vec<Option<CoreKey>> = keys.into_iter().map(Some).collect();
    order
        .into_iter()
        .map(|i| slots[i as usize].take().expect("permutation"))
        .collect()
}
