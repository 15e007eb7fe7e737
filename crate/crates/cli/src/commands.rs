use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use hskern_core::generators::{golomb, random_hypergraph, Density, RandomSpec};
use hskern_core::hypergraph::{format_ids, parse_with_limit, serialize_with_comments};
use hskern_core::oracle::{enumerate_minimal, min_hitting_set};
use hskern_core::verify::{verify, VerifyOptions};
use hskern_core::{
    bounds, kernelize, kernelize_and_reduce, serialize, weakly_related_set, Backend, Hypergraph,
    KernelConfig, LargeAgainst, StrategyMode, UsedMode,
};

use crate::bench::{write_bench, BenchConfig, Family};

/// Exit status for a verification run that found a violation.
pub const EXIT_VIOLATION: u8 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "hskern",
    version,
    about = "Sunflower kernelization for d-Hitting Set"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated instance
    #[command(subcommand)]
    Generate(Generate),
    /// Reduce an instance to a problem kernel
    Kernelize(KernelizeArgs),
    /// Print the indices of a maximal weakly related edge set
    WeaklyRelated {
        #[arg(long, default_value_t = Backend::default())]
        backend: Backend,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Print lower and upper bounds on the minimum hitting set size
    Bounds {
        /// Also print the hitting set and the disjoint edges
        #[arg(long)]
        witness: bool,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Decide whether a hitting set of size at most k exists
    Solve {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        input: InputArgs,
    },
    /// List all inclusion-minimal hitting sets of size at most k
    MinimalSolutions {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Check every kernel invariant on one instance
    Verify {
        /// Budget; defaults to the heuristic upper bound
        #[arg(long)]
        k: Option<usize>,
        /// Search-node cap for each exact search
        #[arg(long, default_value_t = 2_000_000)]
        node_limit: u64,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Kernelize a family of generated instances and write CSV
    Bench(BenchArgs),
}

#[derive(Debug, Subcommand)]
pub enum Generate {
    /// Conflict hypergraph of the ruler with marks 0..=n
    Golomb {
        #[arg(long)]
        n: usize,
        out: Option<PathBuf>,
    },
    /// Random hypergraph with binomially distributed edge sizes
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        density: Density,
        #[arg(long, default_value_t = 4)]
        mu: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Instance file, or `-` for standard input
    pub input: PathBuf,
    /// Reject instances with larger edges
    #[arg(long)]
    pub max_cardinality: Option<usize>,
}

#[derive(Debug, Args)]
pub struct KernelizeArgs {
    /// Budget; defaults to the heuristic upper bound
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = Backend::default())]
    pub backend: Backend,
    /// auto, small or large
    #[arg(long, default_value_t = StrategyMode::Auto)]
    pub strategy: StrategyMode,
    /// Edges a large edge is intersected with: all or kept
    #[arg(long = "large-vs", default_value_t = LargeAgainst::All)]
    pub large_against: LargeAgainst,
    /// Store used-vertex marks as bitsets over all vertices
    #[arg(long)]
    pub dense_used: bool,
    /// Write one line per sunflower found to this file
    #[arg(long)]
    pub explain: Option<PathBuf>,
    /// Also drop vertices through the weakly related set and a matching
    #[arg(long)]
    pub reduce_vertices: bool,
    #[command(flatten)]
    pub input: InputArgs,
    /// Output file; standard output if absent
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = Family::Golomb)]
    pub family: Family,
    #[arg(long)]
    pub from: usize,
    #[arg(long)]
    pub to: usize,
    #[arg(long, default_value_t = 10)]
    pub step: usize,
    #[arg(long, default_value_t = 4)]
    pub mu: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated backends; all four if absent
    #[arg(long, value_delimiter = ',')]
    pub backends: Vec<Backend>,
    #[arg(long, default_value_t = StrategyMode::Auto)]
    pub strategy: StrategyMode,
    /// CSV file; standard output if absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl InputArgs {
    fn load(&self) -> Result<Hypergraph> {
        let text = if self.input == Path::new("-") {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .context("reading standard input")?;
            s
        } else {
            fs::read_to_string(&self.input)
                .with_context(|| format!("reading {}", self.input.display()))?
        };
        parse_with_limit(&text, self.max_cardinality)
            .with_context(|| format!("parsing {}", self.input.display()))
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// Sizes the worker pool from `HSKERN_THREADS` when it is set.
pub fn configure_threads() -> Result<()> {
    if let Ok(value) = std::env::var("HSKERN_THREADS") {
        let threads: usize = value
            .parse()
            .with_context(|| format!("HSKERN_THREADS must be a number, got `{value}`"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the worker pool")?;
    }
    Ok(())
}

/// Runs one command and returns the process exit status.
pub fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Generate(g) => generate(g),
        Command::Kernelize(args) => run_kernelize(args),
        Command::WeaklyRelated { backend, input } => {
            let h = input.load()?;
            let wr = weakly_related_set(&h, backend);
            let text: String = wr.w_indices.iter().map(|i| format!("{i}\n")).collect();
            write_output(None, &text)?;
            Ok(0)
        }
        Command::Bounds { witness, input } => {
            let b = bounds(&input.load()?);
            let mut text = format!("lower {}\nupper {}\n", b.lower, b.upper);
            if witness {
                text.push_str(&format!("hitting_set {}\n", format_ids(&b.witness_upper)));
                text.push_str(&format!(
                    "disjoint_edges {}\n",
                    format_ids(&b.witness_lower)
                ));
            }
            write_output(None, &text)?;
            Ok(0)
        }
        Command::Solve { k, input } => {
            let out = min_hitting_set(&input.load()?, k);
            let text = match out.solution {
                Some(s) => format!("feasible\nsolution {}\n", format_ids(&s)),
                None => "infeasible\n".to_string(),
            };
            write_output(None, &text)?;
            Ok(0)
        }
        Command::MinimalSolutions { k, input } => {
            let sets = enumerate_minimal(&input.load()?, k);
            let text: String = sets
                .iter()
                .map(|s| format!("{}\n", format_ids(s)))
                .collect();
            write_output(None, &text)?;
            Ok(0)
        }
        Command::Verify {
            k,
            node_limit,
            input,
        } => {
            let h = input.load()?;
            let k = k.unwrap_or_else(|| bounds(&h).upper);
            let report = verify(&h, &VerifyOptions { k, node_limit });
            let mut text = format!("c verify k={k} n={} edges={}\n", h.n(), h.num_edges());
            text.push_str(&report.to_string());
            write_output(None, &text)?;
            Ok(if report.failed() { EXIT_VIOLATION } else { 0 })
        }
        Command::Bench(args) => run_bench(args),
    }
}

fn generate(g: Generate) -> Result<u8> {
    let (h, out, comment) = match g {
        Generate::Golomb { n, out } => (golomb(n), out, format!("golomb ruler with marks 0..={n}")),
        Generate::Random {
            n,
            density,
            mu,
            seed,
            out,
        } => {
            let spec = RandomSpec {
                n,
                density,
                mu,
                seed,
            };
            let h = random_hypergraph(&spec)?;
            let comment = format!("random {density} n={n} mu={mu} seed={seed}");
            (h, out, comment)
        }
    };
    write_output(out.as_deref(), &serialize_with_comments(&h, &[comment]))?;
    Ok(0)
}

fn run_kernelize(args: KernelizeArgs) -> Result<u8> {
    let h = args.input.load()?;
    let k = args.k.unwrap_or_else(|| bounds(&h).upper);
    let used = if args.dense_used {
        UsedMode::Dense
    } else {
        UsedMode::Sparse
    };
    let config = KernelConfig::new(k)
        .backend(args.backend)
        .strategy(args.strategy)
        .large_against(args.large_against)
        .used_mode(used);

    let (output, result, kept) = if args.reduce_vertices {
        let p = kernelize_and_reduce(&h, &config);
        let kept = p.kept_input();
        (p.reduction.reduced.clone(), p.kernel, kept)
    } else {
        let r = kernelize(&h, &config);
        let kept = r.kept.clone();
        (r.kernel.clone(), r, kept)
    };

    if let Some(path) = &args.explain {
        fs::write(path, result.explanation())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let comments = [
        format!(
            "kernel k={k} edges_in={} edges_out={}",
            h.num_edges(),
            output.num_edges()
        ),
        format!("live vertices {}", output.num_live_vertices()),
        format!("sunflowers {}", result.sunflowers.len()),
        format!("kept {}", format_ids(&kept)),
    ];
    write_output(
        args.out.as_deref(),
        &serialize_with_comments(&output, &comments),
    )?;
    if result.sunflowers.iter().any(|f| f.is_no_instance_witness()) {
        eprintln!(
            "no hitting set of size {k}: found {} pairwise disjoint edges",
            k + 1
        );
    }
    Ok(0)
}

fn run_bench(args: BenchArgs) -> Result<u8> {
    if args.step == 0 {
        bail!("--step must be positive");
    }
    let config = BenchConfig {
        family: args.family,
        ns: (args.from..=args.to).step_by(args.step).collect(),
        mu: args.mu,
        seed: args.seed,
        backends: if args.backends.is_empty() {
            Backend::ALL.to_vec()
        } else {
            args.backends
        },
        strategy: args.strategy,
    };
    match &args.out {
        Some(path) => {
            let file =
                fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_bench(&config, io::BufWriter::new(file))?;
        }
        None => write_bench(&config, io::stdout().lock())?,
    }
    Ok(0)
}

/// Kernel text for an instance, used to check byte-for-byte determinism.
pub fn kernel_text(h: &Hypergraph, config: &KernelConfig) -> String {
    let r = kernelize(h, config);
    format!("{}{}", serialize(&r.kernel), r.explanation())
}
