//! `uppertail`: upper-tail rates, pattern combinatorics, structure
//! detection and tail estimation from the command line. JSON goes to
//! stdout, diagnostics to stderr.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use config::FileConfig;
use uppertail::Error;

#[derive(Parser, Debug)]
#[command(
    name = "uppertail",
    version,
    about = "Upper tails of subgraph counts in sparse random graphs"
)]
struct Cli {
    /// Master seed for every random stream.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "UPPERTAIL_THREADS")]
    threads: Option<usize>,
    /// TOML file overriding built-in defaults.
    #[arg(long, global = true, env = "UPPERTAIL_CONFIG")]
    config: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Combinatorial invariants of a pattern.
    AnalyzePattern {
        /// star:r, path:k, cycle:k, clique:k, biclique:a,b or file:<path>
        pattern: String,
    },
    /// Rate function of the upper tail.
    Rate {
        #[arg(long)]
        pattern: String,
        #[arg(long, allow_negative_numbers = true)]
        delta: f64,
        #[arg(long, requires = "p")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        p: Option<f64>,
        /// Limit of n·p^r for stars.
        #[arg(long, conflicts_with_all = ["n", "p"])]
        rho: Option<f64>,
        /// Multiplier used when testing the regime hypotheses.
        #[arg(long)]
        slack: Option<f64>,
    },
    /// Labelled (or unlabelled) copies of a pattern in a host graph.
    Count {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        graph: PathBuf,
        /// Count only copies through this edge, given as `u,v` labels.
        #[arg(long)]
        edge: Option<String>,
        #[arg(long, conflicts_with = "edge")]
        unlabelled: bool,
        /// Search-node budget.
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        max_seconds: Option<f64>,
    },
    /// Look for a structure in a host graph.
    Detect {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        event: EventArgs,
        /// Model parameters for the automatic high-degree threshold.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        delta: Option<f64>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Prune a host graph to its core.
    Core {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        pattern: String,
        #[arg(long, allow_negative_numbers = true)]
        delta: f64,
        #[arg(long)]
        epsilon: Option<f64>,
        /// Model size (defaults to the host's vertex count).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: f64,
        /// Star patterns only: the stronger degree-based threshold.
        #[arg(long)]
        strong: bool,
        /// Override the edge-budget constant.
        #[arg(long)]
        c_bar: Option<f64>,
    },
    /// Planted mean-field bound for stars.
    Meanfield {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, allow_negative_numbers = true)]
        delta: f64,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, value_enum, default_value_t = Reading::FractionalCount)]
        boost_reading: Reading,
    },
    /// Probability of the upper-tail event.
    Tail {
        #[command(flatten)]
        model: TailModel,
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Statistical experiments.
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Subcommand, Debug)]
enum Experiment {
    /// Fit of the copy count to a Poisson law.
    PoissonFit {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Structure frequency with and without conditioning on the tail.
    Conditioned {
        #[command(flatten)]
        model: TailModel,
        #[command(flatten)]
        event: EventArgs,
        #[command(flatten)]
        sampling: Sampling,
    },
}

#[derive(Args, Debug)]
struct TailModel {
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long, required_unless_present = "threshold", allow_negative_numbers = true)]
    delta: Option<f64>,
    /// Copy-count threshold; overrides the one derived from delta.
    #[arg(long)]
    threshold: Option<u128>,
}

#[derive(Args, Debug)]
struct Sampling {
    /// background, hub:k, clique:m, highdeg, tilted or degree:d
    #[arg(long)]
    planting: Option<String>,
    /// Planted edge probability.
    #[arg(long)]
    q: Option<f64>,
    /// Weight of plain G(n,p) in the degree planting.
    #[arg(long)]
    defensive: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args, Debug)]
struct EventArgs {
    #[arg(long, value_enum)]
    event: EventKind,
    #[arg(long)]
    chi: Option<f64>,
    /// High-degree threshold.
    #[arg(long)]
    threshold_degree: Option<f64>,
    /// Scale of the automatic high-degree threshold.
    #[arg(long, value_enum, default_value_t = Scale::RootDelta)]
    scale: Scale,
    /// Hub: minimum number of edges leaving the set.
    #[arg(long)]
    edge_threshold: Option<f64>,
    /// Hub: minimum degree of members.
    #[arg(long)]
    degree_threshold: Option<f64>,
    /// Clique: minimum size.
    #[arg(long)]
    size: Option<f64>,
    /// Tilde-hub: hub size, member degree and extra-vertex degree.
    #[arg(long)]
    u_size: Option<usize>,
    #[arg(long)]
    u_degree: Option<f64>,
    #[arg(long)]
    extra_degree: Option<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EventKind {
    Always,
    Highdeg,
    Hub,
    Clique,
    Tildehub,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Scale {
    RootDelta,
    Delta,
    Unit,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Exact,
    Direct,
    Importance,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Reading {
    FractionalCount,
    FractionalRoot,
}

/// Failure with its exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Budget(_)) | Failure::Lib(Error::PatternTooLarge { .. }) => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

/// A subcommand's result: its effective inputs and its payload.
pub struct Report {
    pub inputs: Value,
    pub result: Value,
}

fn envelope(report: Report, seed: u64, wall: f64) -> Value {
    let mut out = match report.result {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    out.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    out.insert("seed".into(), json!(seed));
    out.insert("inputs".into(), report.inputs);
    out.insert("wall_seconds".into(), json!(wall));
    Value::Object(out)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path).map_err(Failure::Usage)?,
        None => FileConfig::default(),
    };
    let threads = cli.threads.or(file.threads);
    if let Some(t) = threads {
        if t == 0 {
            return Err(Failure::Usage("threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Usage(format!("cannot start thread pool: {e}")))?;
    }
    let seed = cli.seed.or(file.seed).unwrap_or(config::DEFAULT_SEED);
    let ctx = commands::Ctx { seed, file };
    let start = Instant::now();
    let report = commands::dispatch(&ctx, cli.command)?;
    let json = envelope(report, seed, start.elapsed().as_secs_f64());
    let text = serde_json::to_string_pretty(&json).expect("serializable report");
    match &cli.output {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = writeln!(out, "{text}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(Failure::Usage(format!("cannot write output: {e}")));
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
