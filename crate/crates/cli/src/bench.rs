//! Benchmark harness: generate instances, pick `k` from the upper bound,
//! kernelize with each backend and emit one CSV row per (instance, backend).

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use anyhow::{Context, Result};
use hskern_core::generators::{golomb, random_hypergraph, Density, RandomSpec};
use hskern_core::{bounds, kernelize, Backend, Hypergraph, KernelConfig, StrategyMode};
use rayon::prelude::*;
use serde::Serialize;

pub const CSV_HEADER: &str =
    "name,n,edges_in,d,k,backend,strategy,edges_out,vertices_out,sunflowers,elapsed_ms,peak_mem";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub name: String,
    pub n: usize,
    pub edges_in: usize,
    pub d: usize,
    pub k: usize,
    pub backend: String,
    pub strategy: String,
    pub edges_out: usize,
    pub vertices_out: usize,
    pub sunflowers: usize,
    pub elapsed_ms: String,
    pub peak_mem: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Golomb,
    RandomDense,
    RandomSparse,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Golomb => "golomb",
            Family::RandomDense => "random-dense",
            Family::RandomSparse => "random-sparse",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Family::Golomb, Family::RandomDense, Family::RandomSparse]
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                format!("unknown family `{s}` (expected golomb, random-dense, random-sparse)")
            })
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub family: Family,
    /// Instance sizes, in output order.
    pub ns: Vec<usize>,
    pub mu: usize,
    pub seed: u64,
    pub backends: Vec<Backend>,
    pub strategy: StrategyMode,
}

pub struct Instance {
    pub name: String,
    pub n: usize,
    pub hypergraph: Hypergraph,
}

impl BenchConfig {
    pub fn instance(&self, n: usize) -> Result<Instance> {
        let (name, hypergraph) = match self.family {
            Family::Golomb => (format!("golomb-{n:04}"), golomb(n)),
            Family::RandomDense | Family::RandomSparse => {
                let density = if self.family == Family::RandomDense {
                    Density::Dense
                } else {
                    Density::Sparse
                };
                let spec = RandomSpec {
                    n,
                    density,
                    mu: self.mu,
                    seed: self.seed,
                };
                let h = random_hypergraph(&spec).with_context(|| format!("generating n={n}"))?;
                (format!("{}-{density}", spec.name()), h)
            }
        };
        Ok(Instance {
            name,
            n,
            hypergraph,
        })
    }
}

/// Peak resident set size of this process, if the platform reports it.
pub fn peak_memory_bytes() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}

/// Rows for one instance, one per backend in the given order.
pub fn bench_instance(
    inst: &Instance,
    backends: &[Backend],
    strategy: StrategyMode,
) -> Vec<BenchRecord> {
    let h = &inst.hypergraph;
    let k = bounds(h).upper;
    backends
        .par_iter()
        .map(|&backend| {
            let r = kernelize(h, &KernelConfig::new(k).backend(backend).strategy(strategy));
            BenchRecord {
                name: inst.name.clone(),
                n: inst.n,
                edges_in: h.num_edges(),
                d: h.d(),
                k,
                backend: backend.name().to_string(),
                strategy: strategy.name().to_string(),
                edges_out: r.stats.edges_out,
                vertices_out: r.stats.vertices_out,
                sunflowers: r.sunflowers.len(),
                elapsed_ms: format!("{:.3}", r.stats.elapsed.as_secs_f64() * 1e3),
                peak_mem: peak_memory_bytes(),
            }
        })
        .collect()
}

/// Runs every cell, possibly in parallel, and returns per-instance results
/// in the order of `config.ns`.
pub fn run_bench(config: &BenchConfig) -> Vec<Result<Vec<BenchRecord>>> {
    config
        .ns
        .par_iter()
        .map(|&n| {
            let inst = config.instance(n)?;
            Ok(bench_instance(&inst, &config.backends, config.strategy))
        })
        .collect()
}

/// Writes the header and all rows. If an instance fails, the rows before it
/// are kept, a `#partial` marker row is appended and the error is returned.
pub fn write_bench<W: Write>(config: &BenchConfig, out: W) -> Result<()> {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    writer.write_record(CSV_HEADER.split(','))?;
    for result in run_bench(config) {
        match result {
            Ok(rows) => {
                for row in rows {
                    writer.serialize(row)?;
                }
            }
            Err(e) => {
                let mut marker = vec!["#partial".to_string()];
                marker.resize(CSV_HEADER.split(',').count(), String::new());
                writer.write_record(&marker)?;
                writer.flush()?;
                return Err(e);
            }
        }
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(family: Family, ns: Vec<usize>) -> BenchConfig {
        BenchConfig {
            family,
            ns,
            mu: 4,
            seed: 1,
            backends: vec![Backend::BalancedTree],
            strategy: StrategyMode::Auto,
        }
    }

    #[test]
    fn header_only_for_empty_range() {
        let mut out = Vec::new();
        write_bench(&config(Family::Golomb, vec![]), &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn golomb_rows() {
        let mut out = Vec::new();
        write_bench(&config(Family::Golomb, vec![10, 20]), &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("golomb-0010,10,95,4,"));
        assert!(lines[2].starts_with("golomb-0020,20,715,4,"));
    }

    #[test]
    fn failure_leaves_marker() {
        // n = 3 cannot hold 9 distinct edges
        let mut out = Vec::new();
        let cfg = BenchConfig {
            mu: 2,
            ..config(Family::RandomSparse, vec![10, 3])
        };
        assert!(write_bench(&cfg, &mut out).is_err());
        let text = String::from_utf8(out).unwrap();
        assert!(text
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("avg2ran-0010-sparse,"));
        assert_eq!(text.lines().last().unwrap(), "#partial,,,,,,,,,,,");
    }

    #[test]
    fn family_names_round_trip() {
        for f in [Family::Golomb, Family::RandomDense, Family::RandomSparse] {
            assert_eq!(f.name().parse::<Family>(), Ok(f));
        }
    }
}
