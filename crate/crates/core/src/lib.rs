//! Sunflower kernelization for d-Hitting Set.
//!
//! [`kernelize`] shrinks an instance to at most `d! d^(d+1) (k+1)^d` edges in
//! one pass while keeping every inclusion-minimal solution of size `<= k`.
//! [`vertex_reduce`] can then drop vertices through a weakly related edge set
//! and a maximum matching.

pub mod bounds;
pub mod core_index;
pub mod fixtures;
pub mod generators;
pub mod hypergraph;
pub mod kernelize;
pub mod oracle;
pub mod verify;
pub mod vertex_reduce;
pub mod weakly_related;

pub use bounds::{bounds, Bounds};
pub use core_index::{Backend, CoreStore, UsedMode};
pub use hypergraph::{parse, serialize, CoreKey, Hypergraph, ParseError, VertexId};
pub use kernelize::{kernelize, KernelConfig, KernelResult, LargeAgainst, StrategyMode, Sunflower};
pub use vertex_reduce::{kernelize_and_reduce, vertex_reduction};
pub use weakly_related::weakly_related_set;
