//! Maximal weakly related edge sets.
//!
//! A set of edges is weakly related when every two of them share at most
//! `d - 2` vertices. Scanning edges in order, an edge joins `W` unless one of
//! its `(d-1)`-subsets is already contained in a `W` edge. Joining flags all
//! of its `(d-1)`-subsets and all of its vertices (as singletons); the
//! singleton flags later tell which vertices lie outside every `W` edge.

use smallvec::SmallVec;

use crate::core_index::{Backend, CoreStore};
use crate::hypergraph::{radix_sort_keys, CoreKey, Hypergraph, VertexId};

#[derive(Debug)]
pub struct WeaklyRelatedResult {
    pub d: usize,
    /// Indices of the `W` edges, ascending.
    pub w_indices: Vec<usize>,
    /// `flag(C)` is set for every `(d-1)`-subset of a `W` edge and every `{v}`
    /// with `v` in a `W` edge.
    pub flags: CoreStore,
}

impl WeaklyRelatedResult {
    pub fn in_w(&self, v: VertexId) -> bool {
        self.flags.get_flag(&[v])
    }
}

/// The `(d-1)`-subsets of `e`: none if `|e| < d - 1`, `e` itself if
/// `|e| = d - 1`, and `e \ {v}` for each `v` if `|e| = d`.
fn for_each_conflict_key(e: &[VertexId], d: usize, mut f: impl FnMut(&[VertexId])) {
    let target = d.saturating_sub(1);
    if d == 0 || e.len() < target {
        return;
    }
    if e.len() == target {
        f(e);
        return;
    }
    debug_assert_eq!(e.len(), d);
    let mut buf: SmallVec<[VertexId; 8]> = SmallVec::new();
    for skip in 0..e.len() {
        buf.clear();
        buf.extend(
            e.iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v),
        );
        f(&buf);
    }
}

fn registration_keys(h: &Hypergraph) -> Vec<CoreKey> {
    let d = h.d();
    let mut keys = Vec::new();
    for e in h.edges() {
        for_each_conflict_key(e, d, |c| keys.push(CoreKey::from_sorted(c)));
        keys.extend(e.iter().map(|&v| CoreKey::from_sorted(&[v])));
    }
    let mut keys = radix_sort_keys(keys, h.n());
    keys.dedup();
    keys
}

/// Computes a maximal weakly related set in input order.
pub fn weakly_related_set(h: &Hypergraph, backend: Backend) -> WeaklyRelatedResult {
    let d = h.d();
    let keys = if backend.needs_registration() {
        registration_keys(h)
    } else {
        Vec::new()
    };
    let mut flags = CoreStore::build(backend, &keys, h.n()).expect("sorted keys");
    let mut w_indices = Vec::new();
    for (i, e) in h.edges().enumerate() {
        let mut blocked = false;
        for_each_conflict_key(e, d, |c| blocked |= flags.get_flag(c));
        if blocked {
            continue;
        }
        w_indices.push(i);
        for_each_conflict_key(e, d, |c| flags.set_flag(c));
        for &v in e {
            flags.set_flag(&[v]);
        }
    }
    WeaklyRelatedResult {
        d,
        w_indices,
        flags,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example1;

    #[test]
    fn example_w() {
        for backend in Backend::ALL {
            let wr = weakly_related_set(&example1(), backend);
            assert_eq!(wr.w_indices, vec![0, 1, 2]);
            assert!(wr.flags.get_flag(&[3, 4]));
            assert!(wr.in_w(7));
            assert!(!wr.in_w(8));
            assert!(!wr.in_w(9));
        }
    }

    #[test]
    fn disjoint_edges_all_join() {
        let h = Hypergraph::from_edges(9, [[1, 2, 3], [4, 5, 6], [7, 8, 9]]);
        assert_eq!(
            weakly_related_set(&h, Backend::HashTable).w_indices,
            vec![0, 1, 2]
        );
    }

    #[test]
    fn sharing_d_minus_one_keeps_first() {
        let h = Hypergraph::from_edges(5, [[1, 2, 3], [1, 2, 4]]);
        assert_eq!(
            weakly_related_set(&h, Backend::BalancedTree).w_indices,
            vec![0]
        );
    }

    #[test]
    fn mixed_cardinalities() {
        // d = 3: {1,2} is its own 2-subset and blocks {1,2,5}; {6} always joins.
        let h = Hypergraph::from_edges(6, [&[1, 2][..], &[1, 2, 5], &[6], &[2, 3, 4], &[3, 4]]);
        let wr = weakly_related_set(&h, Backend::ZeroTrie);
        assert_eq!(wr.w_indices, vec![0, 2, 3]);
        assert!(wr.in_w(6));
        assert!(!wr.in_w(5));
    }

    #[test]
    fn d_one_and_two() {
        let h = Hypergraph::from_edges(3, [[1], [2], [3]]);
        assert_eq!(weakly_related_set(&h, Backend::LazyTrie).w_indices, vec![0]);
        // d = 2: a maximal matching
        let h = Hypergraph::from_edges(4, [[1, 2], [2, 3], [3, 4]]);
        assert_eq!(
            weakly_related_set(&h, Backend::LazyTrie).w_indices,
            vec![0, 2]
        );
    }
}
