//! Associative storage for per-core records, keyed by sorted vertex sets.
//!
//! Four backends share one record arena and differ only in how a key is
//! mapped to its record slot:
//!
//! * [`Backend::LazyTrie`]: a trie whose node arrays are indexed by vertex id
//!   and built once from a lexicographically sorted list of registered keys.
//!   Each key is compared with its predecessor and only the cells on the new
//!   part of its root-to-leaf path are written, so the build touches at most
//!   `|key|` cells per key. Safe Rust cannot hand out uninitialized memory,
//!   so node arrays come back zeroed from the allocator; the registration
//!   discipline is still enforced (debug builds panic on unregistered keys).
//! * [`Backend::ZeroTrie`]: the same trie layout, with zeroed nodes allocated
//!   on first write. Reads along absent paths return the zero record.
//! * [`Backend::HashTable`]: `HashMap` with [`KeyHasher`].
//! * [`Backend::BalancedTree`]: `BTreeMap` in lexicographic key order.
//!
//! A node reached by the prefix `c_1 < ... < c_i` only ever holds children
//! with symbols greater than `c_i`, so its array covers `c_i + 1 ..= n`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::hash::{BuildHasherDefault, Hasher};
use std::str::FromStr;

use smallvec::SmallVec;
use thiserror::Error;

use crate::hypergraph::{CoreKey, VertexId};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Backend {
    LazyTrie,
    ZeroTrie,
    HashTable,
    #[default]
    BalancedTree,
}

impl Backend {
    pub const ALL: [Backend; 4] = [
        Backend::LazyTrie,
        Backend::ZeroTrie,
        Backend::HashTable,
        Backend::BalancedTree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Backend::LazyTrie => "lazy-trie",
            Backend::ZeroTrie => "zero-trie",
            Backend::HashTable => "hash",
            Backend::BalancedTree => "btree",
        }
    }

    /// Whether [`CoreStore::build`] needs the full key list.
    pub fn needs_registration(self) -> bool {
        self == Backend::LazyTrie
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Backend::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| {
                format!("unknown backend `{s}` (expected lazy-trie, zero-trie, hash, btree)")
            })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StoreError {
    #[error(
        "registered keys are not sorted: key #{index} {key:?} does not follow its predecessor"
    )]
    Unsorted { index: usize, key: CoreKey },
    #[error("key {key:?} contains vertex {vertex} outside 1..={n}")]
    OutOfRange {
        key: CoreKey,
        vertex: VertexId,
        n: usize,
    },
}

/// How per-core `used` sets are stored.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum UsedMode {
    /// A small set per core (at most `d(k+1)` entries under kernelization).
    #[default]
    Sparse,
    /// A length-`n` bit vector per core.
    Dense,
}

const SPARSE_LIMIT: usize = 16;

type FastSet = HashSet<VertexId, BuildHasherDefault<KeyHasher>>;

#[derive(Debug, Clone)]
pub enum UsedSet {
    Small(SmallVec<[VertexId; 8]>),
    Large(FastSet),
    Dense(Vec<u64>),
}

impl Default for UsedSet {
    fn default() -> Self {
        UsedSet::Small(SmallVec::new())
    }
}

impl UsedSet {
    fn new(mode: UsedMode, n: usize) -> Self {
        match mode {
            UsedMode::Sparse => UsedSet::default(),
            UsedMode::Dense => UsedSet::Dense(vec![0; (n + 1).div_ceil(64)]),
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        match self {
            UsedSet::Small(s) => s.contains(&v),
            UsedSet::Large(s) => s.contains(&v),
            UsedSet::Dense(bits) => bits
                .get(v as usize / 64)
                .is_some_and(|w| w >> (v % 64) & 1 == 1),
        }
    }

    pub fn insert(&mut self, v: VertexId) {
        match self {
            UsedSet::Small(s) => {
                if s.contains(&v) {
                    return;
                }
                if s.len() < SPARSE_LIMIT {
                    s.push(v);
                } else {
                    let mut set: FastSet = s.iter().copied().collect();
                    set.insert(v);
                    *self = UsedSet::Large(set);
                }
            }
            UsedSet::Large(s) => {
                s.insert(v);
            }
            UsedSet::Dense(bits) => bits[v as usize / 64] |= 1 << (v % 64),
        }
    }

    /// Members in ascending order.
    pub fn to_sorted_vec(&self) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = match self {
            UsedSet::Small(s) => s.to_vec(),
            UsedSet::Large(s) => s.iter().copied().collect(),
            UsedSet::Dense(bits) => (0..bits.len() * 64)
                .filter(|&v| bits[v / 64] >> (v % 64) & 1 == 1)
                .map(|v| v as VertexId)
                .collect(),
        };
        out.sort_unstable();
        out
    }

    pub fn len(&self) -> usize {
        match self {
            UsedSet::Small(s) => s.len(),
            UsedSet::Large(s) => s.len(),
            UsedSet::Dense(bits) => bits.iter().map(|w| w.count_ones() as usize).sum(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Default)]
pub struct CoreRecord {
    pub petals: u32,
    pub used: UsedSet,
    pub flag: bool,
    /// Edge indices counted as petals, in the order they were found.
    pub petal_edges: Vec<u32>,
}

/// 64-bit mixing hasher for vertex-id sequences.
///
/// The state starts at 0. Input bytes are consumed as little-endian 64-bit
/// words (the final partial word zero-padded); each word is folded in as
/// `h = (h.rotl(5) ^ w) * 0x51_7c_c1_b7_27_22_0a_95`. `finish` applies the
/// SplitMix64 finalizer to the state.
#[derive(Default, Clone, Copy)]
pub struct KeyHasher(u64);

impl KeyHasher {
    const SEED: u64 = 0x517c_c1b7_2722_0a95;

    #[inline]
    fn fold(&mut self, w: u64) {
        self.0 = (self.0.rotate_left(5) ^ w).wrapping_mul(Self::SEED);
    }
}

impl Hasher for KeyHasher {
    #[inline]
    fn write(&mut self, bytes: &[u8]) {
        let mut chunks = bytes.chunks_exact(8);
        for c in &mut chunks {
            self.fold(u64::from_le_bytes(c.try_into().unwrap()));
        }
        let rest = chunks.remainder();
        if !rest.is_empty() {
            let mut buf = [0u8; 8];
            buf[..rest.len()].copy_from_slice(rest);
            self.fold(u64::from_le_bytes(buf));
        }
    }

    #[inline]
    fn write_u32(&mut self, i: u32) {
        self.fold(i as u64);
    }

    #[inline]
    fn write_u64(&mut self, i: u64) {
        self.fold(i);
    }

    #[inline]
    fn write_usize(&mut self, i: usize) {
        self.fold(i as u64);
    }

    #[inline]
    fn finish(&self) -> u64 {
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy)]
struct TrieEntry {
    child: u32,
    record: u32,
}

#[derive(Clone, Copy)]
struct TrieNode {
    offset: usize,
    base: VertexId,
}

/// Trie with vertex-indexed node arrays. Cell value 0 is empty; otherwise
/// it is `1 + index` into `entries`.
struct Trie {
    n: usize,
    nodes: Vec<TrieNode>,
    cells: Vec<u32>,
    entries: Vec<TrieEntry>,
    root_record: u32,
    cells_written: usize,
    registered: bool,
}

impl Trie {
    fn new(n: usize) -> Self {
        let mut t = Trie {
            n,
            nodes: Vec::new(),
            cells: Vec::new(),
            entries: Vec::new(),
            root_record: NONE,
            cells_written: 0,
            registered: false,
        };
        t.alloc_node(0);
        t
    }

    /// Allocates the array for a node whose prefix ends with `last`
    /// (0 for the root); it covers symbols `last + 1 ..= n`.
    fn alloc_node(&mut self, last: VertexId) -> u32 {
        let offset = self.cells.len();
        let len = self.n - last as usize;
        self.cells.resize(offset + len, 0);
        self.nodes.push(TrieNode {
            offset,
            base: last + 1,
        });
        (self.nodes.len() - 1) as u32
    }

    #[inline]
    fn cell_index(&self, node: u32, symbol: VertexId) -> usize {
        let nd = self.nodes[node as usize];
        debug_assert!(symbol >= nd.base && symbol as usize <= self.n);
        nd.offset + (symbol - nd.base) as usize
    }

    #[inline]
    fn lookup(&self, key: &[VertexId]) -> Option<u32> {
        let Some((&last, prefix)) = key.split_last() else {
            return (self.root_record != NONE).then_some(self.root_record);
        };
        let mut node = 0u32;
        for &c in prefix {
            let cell = self.cells[self.cell_index(node, c)];
            if cell == 0 {
                return None;
            }
            node = self.entries[cell as usize - 1].child;
            if node == NONE {
                return None;
            }
        }
        let cell = self.cells[self.cell_index(node, last)];
        if cell == 0 {
            return None;
        }
        let r = self.entries[cell as usize - 1].record;
        (r != NONE).then_some(r)
    }

    /// Writes the path for `key` starting at `from` (positions before it
    /// already exist) and attaches `record`.
    fn insert_from(&mut self, key: &[VertexId], from: usize, record: u32) {
        if key.is_empty() {
            self.root_record = record;
            return;
        }
        let mut node = 0u32;
        for (pos, &c) in key.iter().enumerate() {
            let idx = self.cell_index(node, c);
            let last = pos + 1 == key.len();
            let mut entry = self.cells[idx];
            if entry == 0 {
                debug_assert!(pos >= from, "prefix of registered key missing");
                self.entries.push(TrieEntry {
                    child: NONE,
                    record: NONE,
                });
                entry = self.entries.len() as u32;
                self.cells[idx] = entry;
                self.cells_written += 1;
            }
            let e = entry as usize - 1;
            if last {
                self.entries[e].record = record;
            } else {
                if self.entries[e].child == NONE {
                    let child = self.alloc_node(c);
                    self.entries[e].child = child;
                }
                node = self.entries[e].child;
            }
        }
    }

    fn heap_bytes(&self) -> usize {
        self.cells.capacity() * 4
            + self.entries.capacity() * std::mem::size_of::<TrieEntry>()
            + self.nodes.capacity() * std::mem::size_of::<TrieNode>()
    }
}

enum KeyMap {
    Trie(Trie),
    Hash(HashMap<CoreKey, u32, BuildHasherDefault<KeyHasher>>),
    Tree(BTreeMap<CoreKey, u32>),
}

/// Record store keyed by [`CoreKey`]s; see the module docs for the backends.
///
/// Keys that were never written read as the zero record on every backend.
pub struct CoreStore {
    backend: Backend,
    n: usize,
    used_mode: UsedMode,
    map: KeyMap,
    records: Vec<CoreRecord>,
}

impl fmt::Debug for CoreStore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoreStore")
            .field("backend", &self.backend)
            .field("n", &self.n)
            .field("records", &self.records.len())
            .finish()
    }
}

impl CoreStore {
    /// Builds a store over vertex ids `1..=n`.
    ///
    /// `keys` must be sorted lexicographically for [`Backend::LazyTrie`];
    /// duplicates are fine. The other backends ignore the list and create
    /// records on first write.
    pub fn build(backend: Backend, keys: &[CoreKey], n: usize) -> Result<Self, StoreError> {
        Self::build_with_mode(backend, keys, n, UsedMode::Sparse)
    }

    pub fn build_with_mode(
        backend: Backend,
        keys: &[CoreKey],
        n: usize,
        used_mode: UsedMode,
    ) -> Result<Self, StoreError> {
        let map = match backend {
            Backend::LazyTrie | Backend::ZeroTrie => KeyMap::Trie(Trie::new(n)),
            Backend::HashTable => KeyMap::Hash(HashMap::default()),
            Backend::BalancedTree => KeyMap::Tree(BTreeMap::new()),
        };
        let mut store = CoreStore {
            backend,
            n,
            used_mode,
            map,
            records: Vec::new(),
        };
        if backend == Backend::LazyTrie {
            store.register(keys)?;
        }
        Ok(store)
    }

    fn register(&mut self, keys: &[CoreKey]) -> Result<(), StoreError> {
        let mut prev: Option<&CoreKey> = None;
        for (index, key) in keys.iter().enumerate() {
            if let Some(&v) = key
                .as_slice()
                .iter()
                .find(|&&v| v == 0 || v as usize > self.n)
            {
                return Err(StoreError::OutOfRange {
                    key: key.clone(),
                    vertex: v,
                    n: self.n,
                });
            }
            let common = match prev {
                Some(p) if p > key => {
                    return Err(StoreError::Unsorted {
                        index,
                        key: key.clone(),
                    })
                }
                Some(p) if p == key => continue,
                Some(p) => common_prefix(p.as_slice(), key.as_slice()),
                None => 0,
            };
            let record = self.records.len() as u32;
            self.records.push(self.zero_record());
            let KeyMap::Trie(trie) = &mut self.map else {
                unreachable!()
            };
            trie.insert_from(key.as_slice(), common, record);
            prev = Some(key);
        }
        if let KeyMap::Trie(trie) = &mut self.map {
            trie.registered = true;
        }
        Ok(())
    }

    fn zero_record(&self) -> CoreRecord {
        CoreRecord {
            used: UsedSet::new(self.used_mode, self.n),
            ..CoreRecord::default()
        }
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of records currently held.
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Trie cells written so far (0 for the map backends).
    pub fn cells_initialized(&self) -> usize {
        match &self.map {
            KeyMap::Trie(t) => t.cells_written,
            _ => 0,
        }
    }

    /// Rough heap footprint of the index structure, excluding records.
    pub fn index_bytes(&self) -> usize {
        match &self.map {
            KeyMap::Trie(t) => t.heap_bytes(),
            KeyMap::Hash(m) => m.capacity() * (std::mem::size_of::<(CoreKey, u32)>() + 8),
            KeyMap::Tree(m) => m.len() * (std::mem::size_of::<(CoreKey, u32)>() + 16),
        }
    }

    #[inline]
    fn slot(&self, key: &[VertexId]) -> Option<u32> {
        match &self.map {
            KeyMap::Trie(t) => {
                let r = t.lookup(key);
                debug_assert!(
                    !(t.registered && r.is_none()),
                    "lookup of unregistered key {key:?} in lazy trie"
                );
                r
            }
            KeyMap::Hash(m) => m.get(key).copied(),
            KeyMap::Tree(m) => m.get(key).copied(),
        }
    }

    #[inline]
    fn slot_or_insert(&mut self, key: &[VertexId]) -> u32 {
        if let Some(s) = self.slot(key) {
            return s;
        }
        let s = self.records.len() as u32;
        self.records.push(self.zero_record());
        match &mut self.map {
            KeyMap::Trie(t) => t.insert_from(key, 0, s),
            KeyMap::Hash(m) => {
                m.insert(CoreKey::from_sorted(key), s);
            }
            KeyMap::Tree(m) => {
                m.insert(CoreKey::from_sorted(key), s);
            }
        }
        s
    }

    /// The record for `key`, if one has been created.
    #[inline]
    pub fn record(&self, key: &[VertexId]) -> Option<&CoreRecord> {
        self.slot(key).map(|s| &self.records[s as usize])
    }

    /// The record for `key`, created zeroed if absent.
    #[inline]
    pub fn record_mut(&mut self, key: &[VertexId]) -> &mut CoreRecord {
        let s = self.slot_or_insert(key);
        &mut self.records[s as usize]
    }

    #[inline]
    pub fn petal_count(&self, key: &[VertexId]) -> u32 {
        self.record(key).map_or(0, |r| r.petals)
    }

    pub fn increment_petals(&mut self, key: &[VertexId]) {
        self.record_mut(key).petals += 1;
    }

    pub fn is_used(&self, key: &[VertexId], v: VertexId) -> bool {
        self.record(key).is_some_and(|r| r.used.contains(v))
    }

    pub fn mark_used(&mut self, key: &[VertexId], v: VertexId) {
        debug_assert!(!key.contains(&v), "core vertex {v} marked used for {key:?}");
        self.record_mut(key).used.insert(v);
    }

    #[inline]
    pub fn get_flag(&self, key: &[VertexId]) -> bool {
        self.record(key).is_some_and(|r| r.flag)
    }

    pub fn set_flag(&mut self, key: &[VertexId]) {
        self.record_mut(key).flag = true;
    }

    /// All keys with records, in lexicographic order, paired with their records.
    pub fn entries(&self) -> Vec<(CoreKey, &CoreRecord)> {
        let mut out: Vec<(CoreKey, &CoreRecord)> = match &self.map {
            KeyMap::Trie(t) => {
                let mut acc = Vec::new();
                if t.root_record != NONE {
                    acc.push((CoreKey::empty(), t.root_record));
                }
                let mut prefix = Vec::new();
                collect_trie(t, 0, &mut prefix, &mut acc);
                acc.into_iter()
                    .map(|(k, s)| (k, &self.records[s as usize]))
                    .collect()
            }
            KeyMap::Hash(m) => m
                .iter()
                .map(|(k, &s)| (k.clone(), &self.records[s as usize]))
                .collect(),
            KeyMap::Tree(m) => m
                .iter()
                .map(|(k, &s)| (k.clone(), &self.records[s as usize]))
                .collect(),
        };
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

fn collect_trie(t: &Trie, node: u32, prefix: &mut Vec<VertexId>, acc: &mut Vec<(CoreKey, u32)>) {
    let nd = t.nodes[node as usize];
    let len = t.n + 1 - nd.base as usize;
    for i in 0..len {
        let cell = t.cells[nd.offset + i];
        if cell == 0 {
            continue;
        }
        let symbol = nd.base + i as VertexId;
        let entry = t.entries[cell as usize - 1];
        prefix.push(symbol);
        if entry.record != NONE {
            acc.push((CoreKey::from_sorted(prefix), entry.record));
        }
        if entry.child != NONE {
            collect_trie(t, entry.child, prefix, acc);
        }
        prefix.pop();
    }
}

fn common_prefix(a: &[VertexId], b: &[VertexId]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example1;
    use crate::hypergraph::{enumerate_subsets, radix_sort_keys};
    use proptest::prelude::*;

    fn example_keys() -> Vec<CoreKey> {
        let h = example1();
        let keys: Vec<CoreKey> = h.edges().flat_map(enumerate_subsets).collect();
        radix_sort_keys(keys, h.n())
    }

    #[test]
    fn example_key_list_has_28_distinct_keys() {
        let keys = example_keys();
        assert_eq!(keys.len(), 40);
        let mut distinct = keys.clone();
        distinct.dedup();
        // empty set, 9 singletons, 13 pairs, 5 triples
        assert_eq!(distinct.len(), 28);
        let store = CoreStore::build(Backend::LazyTrie, &keys, 9).unwrap();
        assert_eq!(store.len(), 28);
    }

    #[test]
    fn fresh_records_are_zero() {
        for backend in Backend::ALL {
            let mut store = CoreStore::build(backend, &example_keys(), 9).unwrap();
            assert_eq!(store.petal_count(&[]), 0);
            assert!(!store.get_flag(&[3, 4]));
            assert!(!store.is_used(&[3, 4], 7));
            for _ in 0..3 {
                store.increment_petals(&[3, 4]);
            }
            assert_eq!(store.petal_count(&[3, 4]), 3);
            store.mark_used(&[3, 4], 7);
            assert!(store.is_used(&[3, 4], 7));
            assert!(!store.is_used(&[3, 4], 8));
            store.set_flag(&[3, 4]);
            store.set_flag(&[3, 4]);
            assert!(store.get_flag(&[3, 4]), "{backend}");
            assert_eq!(store.petal_count(&[3]), 0);
        }
    }

    #[test]
    fn lazy_trie_registration() {
        let keys = [CoreKey::from_sorted(&[1]), CoreKey::from_sorted(&[1, 2])];
        let store = CoreStore::build(Backend::LazyTrie, &keys, 3).unwrap();
        assert!(store.record(&[1]).is_some());
        assert!(store.record(&[1, 2]).is_some());
        assert_eq!(store.len(), 2);
    }

    #[test]
    #[cfg(debug_assertions)]
    #[should_panic(expected = "unregistered")]
    fn lazy_trie_rejects_unregistered_lookup() {
        let keys = [CoreKey::from_sorted(&[1]), CoreKey::from_sorted(&[1, 2])];
        let store = CoreStore::build(Backend::LazyTrie, &keys, 3).unwrap();
        store.petal_count(&[2]);
    }

    #[test]
    fn lazy_trie_rejects_unsorted_keys() {
        let keys = [CoreKey::from_sorted(&[2]), CoreKey::from_sorted(&[1])];
        assert!(matches!(
            CoreStore::build(Backend::LazyTrie, &keys, 3),
            Err(StoreError::Unsorted { index: 1, .. })
        ));
        // other backends ignore the list
        assert!(CoreStore::build(Backend::HashTable, &keys, 3).is_ok());
    }

    #[test]
    fn lazy_trie_cell_budget() {
        let keys = example_keys();
        let store = CoreStore::build(Backend::LazyTrie, &keys, 9).unwrap();
        let d = 3;
        assert!(store.cells_initialized() <= d * keys.len());
        // one cell per distinct non-empty key
        assert_eq!(store.cells_initialized(), 27);
    }

    #[test]
    fn entries_are_sorted_and_complete() {
        let keys = example_keys();
        let mut distinct = keys.clone();
        distinct.dedup();
        for backend in Backend::ALL {
            let mut store = CoreStore::build(backend, &keys, 9).unwrap();
            for k in &distinct {
                store.record_mut(k.as_slice());
            }
            let got: Vec<CoreKey> = store.entries().into_iter().map(|(k, _)| k).collect();
            assert_eq!(got, distinct, "{backend}");
        }
    }

    #[test]
    fn used_set_promotes_and_dense_mode() {
        let mut s = UsedSet::default();
        for v in (1..=40).rev() {
            s.insert(v);
        }
        assert!(matches!(s, UsedSet::Large(_)));
        assert_eq!(s.len(), 40);
        assert_eq!(s.to_sorted_vec(), (1..=40).collect::<Vec<_>>());
        let mut d = UsedSet::new(UsedMode::Dense, 100);
        d.insert(100);
        d.insert(3);
        assert!(d.contains(100) && d.contains(3) && !d.contains(4));
        assert_eq!(d.to_sorted_vec(), vec![3, 100]);
    }

    #[test]
    fn hasher_is_stable() {
        let mut h = KeyHasher::default();
        h.write(&[1, 0, 0, 0, 2, 0, 0, 0]);
        let a = h.finish();
        let mut h = KeyHasher::default();
        h.write_u64(0x0000_0002_0000_0001);
        assert_eq!(a, h.finish());
    }

    #[derive(Debug, Clone)]
    enum Op {
        Inc(usize),
        Mark(usize, VertexId),
        Flag(usize),
        ReadCount(usize),
        ReadUsed(usize, VertexId),
        ReadFlag(usize),
    }

    fn arb_ops(nkeys: usize) -> impl Strategy<Value = Vec<Op>> {
        let op = prop_oneof![
            (0..nkeys).prop_map(Op::Inc),
            (0..nkeys, 1u32..=10).prop_map(|(k, v)| Op::Mark(k, v)),
            (0..nkeys).prop_map(Op::Flag),
            (0..nkeys).prop_map(Op::ReadCount),
            (0..nkeys, 1u32..=10).prop_map(|(k, v)| Op::ReadUsed(k, v)),
            (0..nkeys).prop_map(Op::ReadFlag),
        ];
        proptest::collection::vec(op, 0..120)
    }

    proptest! {
        #[test]
        fn backends_are_observationally_equivalent(
            raw in proptest::collection::vec(proptest::collection::btree_set(1u32..=10, 0..4), 1..20),
            seed_ops in arb_ops(20),
        ) {
            let keys: Vec<CoreKey> = raw.iter().map(|s| CoreKey::new(s.iter().copied())).collect();
            let sorted = radix_sort_keys(keys.clone(), 10);
            let mut stores: Vec<CoreStore> = Backend::ALL
                .iter()
                .map(|&b| CoreStore::build(b, &sorted, 10).unwrap())
                .collect();
            let mut logs = vec![Vec::new(); stores.len()];
            for op in &seed_ops {
                for (store, log) in stores.iter_mut().zip(logs.iter_mut()) {
                    let key = |i: usize| keys[i % keys.len()].as_slice().to_vec();
                    match *op {
                        Op::Inc(i) => store.increment_petals(&key(i)),
                        Op::Mark(i, v) => {
                            let k = key(i);
                            if !k.contains(&v) {
                                store.mark_used(&k, v);
                            }
                        }
                        Op::Flag(i) => store.set_flag(&key(i)),
                        Op::ReadCount(i) => log.push(store.petal_count(&key(i)) as i64),
                        Op::ReadUsed(i, v) => log.push(store.is_used(&key(i), v) as i64),
                        Op::ReadFlag(i) => log.push(store.get_flag(&key(i)) as i64),
                    }
                }
            }
            for log in &logs[1..] {
                prop_assert_eq!(log, &logs[0]);
            }
        }
    }
}
