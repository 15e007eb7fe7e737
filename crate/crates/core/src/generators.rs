//! Instance families: Golomb subruler conflicts and seeded random hypergraphs.
//!
//! Random instances use SplitMix64 seeded directly with the 64-bit seed
//! (state `s`, output `z = mix(s += 0x9e3779b97f4a7c15)`). Every draw is made
//! from raw 64-bit outputs as follows, so any implementation of SplitMix64
//! reproduces the same instances:
//!
//! * a fair coin is the top bit of one output;
//! * a uniform integer in `1..=j` is `1 + ((x as u128 * j) >> 64)`;
//! * an edge cardinality is the number of heads in `2 * mu` coins, redrawn
//!   while it is `<= 1` or `> n`;
//! * `s` distinct vertices come from Floyd's sampling algorithm, for `j` from
//!   `n - s + 1` to `n`: draw `t` in `1..=j`, add `t` unless already present,
//!   else add `j`;
//! * an edge equal to an earlier one is discarded and drawn again.

use std::fmt;
use std::str::FromStr;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, HypergraphBuilder, VertexId};

/// Conflict hypergraph of a ruler with marks `0..=n`, i.e. `n + 1` vertices
/// where vertex `i` is mark `i - 1`.
pub fn golomb(n: usize) -> Hypergraph {
    golomb_marks(n + 1)
}

/// Conflict hypergraph of a ruler with marks `1..=m`.
///
/// Two different pairs of marks at the same distance form a conflict. Sorted
/// as `a < b < c`, the triple conflicts when `b - a = c - b`, and a 4-set
/// `a < b < c < d` conflicts exactly when `b - a = d - c`. Edges come out in
/// lexicographic order.
pub fn golomb_marks(m: usize) -> Hypergraph {
    let mut builder = HypergraphBuilder::new(m);
    let m = m as VertexId;
    for a in 1..=m {
        for b in a + 1..=m {
            let gap = b - a;
            for c in b + 1..=m {
                if c - b == gap {
                    builder.push_unchecked(&[a, b, c]);
                }
                if c + gap <= m {
                    builder.push_unchecked(&[a, b, c, c + gap]);
                }
            }
        }
    }
    builder.finish()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Density {
    /// `floor(n^3 / 12)` edges.
    Dense,
    /// `n^2` edges.
    Sparse,
}

impl Density {
    pub fn edge_count(self, n: usize) -> usize {
        match self {
            Density::Dense => n * n * n / 12,
            Density::Sparse => n * n,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Density::Dense => "dense",
            Density::Sparse => "sparse",
        }
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Density {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dense" => Ok(Density::Dense),
            "sparse" => Ok(Density::Sparse),
            _ => Err(format!("unknown density `{s}` (expected dense or sparse)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSpec {
    pub n: usize,
    pub density: Density,
    pub mu: usize,
    pub seed: u64,
}

impl RandomSpec {
    pub fn edge_count(&self) -> usize {
        self.density.edge_count(self.n)
    }

    /// Name in the style `avg4ran-0100`.
    pub fn name(&self) -> String {
        format!("avg{}ran-{:04}", self.mu, self.n)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("average cardinality {0} is below 2")]
    MuTooSmall(usize),
    #[error("average cardinality {mu} exceeds the {n} vertices")]
    MuTooLarge { mu: usize, n: usize },
    #[error(
        "{requested} edges requested but only {available} distinct edges of size 2..={n} exist"
    )]
    TooManyEdges {
        requested: usize,
        available: u128,
        n: usize,
    },
}

fn coin(rng: &mut SplitMix64) -> bool {
    rng.next_u64() >> 63 == 1
}

fn uniform(rng: &mut SplitMix64, j: u32) -> u32 {
    1 + ((rng.next_u64() as u128 * j as u128) >> 64) as u32
}

/// Draws a cardinality from Binomial(2 mu, 1/2) conditioned on `2..=n`.
pub fn draw_cardinality(rng: &mut SplitMix64, mu: usize, n: usize) -> usize {
    loop {
        let s = (0..2 * mu).filter(|_| coin(rng)).count();
        if s >= 2 && s <= n {
            return s;
        }
    }
}

fn draw_edge(rng: &mut SplitMix64, s: usize, n: usize, out: &mut Vec<VertexId>) {
    out.clear();
    let n = n as u32;
    for j in n - s as u32 + 1..=n {
        let t = uniform(rng, j);
        out.push(if out.contains(&t) { j } else { t });
    }
    out.sort_unstable();
}

/// Number of subsets of an `n`-set with at least two elements.
fn available_edges(n: usize) -> u128 {
    if n >= 127 {
        return u128::MAX;
    }
    (1u128 << n) - n as u128 - 1
}

pub fn random_hypergraph(spec: &RandomSpec) -> Result<Hypergraph, GenerateError> {
    let RandomSpec { n, mu, seed, .. } = *spec;
    if mu < 2 {
        return Err(GenerateError::MuTooSmall(mu));
    }
    if mu > n {
        return Err(GenerateError::MuTooLarge { mu, n });
    }
    let m = spec.edge_count();
    let available = available_edges(n);
    if m as u128 > available {
        return Err(GenerateError::TooManyEdges {
            requested: m,
            available,
            n,
        });
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut builder = HypergraphBuilder::new(n);
    let mut edge = Vec::new();
    while builder.len() < m {
        let s = draw_cardinality(&mut rng, mu, n);
        draw_edge(&mut rng, s, n, &mut edge);
        builder.push(&edge);
    }
    Ok(builder.finish())
}
