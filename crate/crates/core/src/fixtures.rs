//! Small hand-made instances shared by tests, examples and the CLI.

use crate::hypergraph::Hypergraph;

/// The circuit-diagnosis instance: gates `v1..v4` are vertices 1..4 and
/// `w1..w5` are vertices 5..9. Each edge lists the gates that can reach one
/// faulty output bit.
///
/// ```text
/// S1 = {v1, v2, w1}   S2 = {v2, v3, w2}   S3 = {v3, v4, w3}
/// S4 = {v3, v4, w4}   S5 = {v3, v4, w5}
/// ```
pub fn example1() -> Hypergraph {
    Hypergraph::from_edges(9, [[1, 2, 5], [2, 3, 6], [3, 4, 7], [3, 4, 8], [3, 4, 9]])
}

/// Instance-format text of [`example1`].
pub const EXAMPLE1_TEXT: &str = "c circuit diagnosis example: v1..v4 = 1..4, w1..w5 = 5..9\n\
p hs 9 5\n1 2 5\n2 3 6\n3 4 7\n3 4 8\n3 4 9\n";
