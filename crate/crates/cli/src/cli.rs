use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hyperwalk", version, about = "Random walks on hypergraphs with edge-dependent vertex weights")]
#[command(args_override_self = true)]
pub struct Cli {
    /// Print machine-readable JSON on stdout instead of tables.
    #[arg(long, global = true)]
    pub json: bool,

    /// JSON file with per-subcommand defaults; explicit flags win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Write the run manifest here (default: `<out>.manifest.json` when `--out` is given).
    #[arg(long, global = true, value_name = "FILE")]
    pub manifest: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transition matrix of a walk on the hypergraph, as CSV.
    Transition(TransitionArgs),
    /// Stationary distribution.
    Stationary(StationaryArgs),
    /// Laplacian spectrum, Cheeger constant and mixing-time bound.
    Spectral(SpectralArgs),
    /// Graph reductions and reversibility checks.
    Reduce(ReduceArgs),
    /// Synthetic rank-aggregation experiment, or ranking of supplied matches.
    Rankagg(RankaggArgs),
    /// Parse and validate a hypergraph file.
    Validate(InputArgs),
    /// Run the built-in four-vertex example end to end.
    Demo,
}

impl Command {
    pub const NAMES: [&'static str; 7] = ["transition", "stationary", "spectral", "reduce", "rankagg", "validate", "demo"];
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Hypergraph file (JSON, or the `weight v:γ ...` line format).
    #[arg(long, short)]
    pub input: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WalkArg {
    Lazy,
    Nonlazy,
    Restart,
}

#[derive(Debug, Args)]
pub struct TransitionArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "lazy")]
    pub kind: WalkArg,
    /// Restart probability for `--kind restart`.
    #[arg(long, default_value_t = 0.4)]
    pub beta: f64,
    /// Restart at this vertex instead of uniformly.
    #[arg(long, value_name = "VERTEX")]
    pub restart_to: Option<String>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StationaryArg {
    Rho,
    Direct,
    Auto,
}

#[derive(Debug, Args)]
pub struct StationaryArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: StationaryArg,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectralArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Total-variation target for the mixing-time bound.
    #[arg(long, default_value_t = 0.25)]
    pub eps: f64,
    /// Also evaluate Φ²/2 ≤ λ ≤ 2Φ.
    #[arg(long)]
    pub check_cheeger: bool,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReduceMode {
    /// Clique graph reproducing an edge-independent walk.
    Eqind,
    /// Clique graph from the γ-product weights, with the eigenvalue sandwich.
    Sandwich,
    /// Loop-free clique graph reproducing the non-lazy trivial-weight walk.
    Nonlazy,
    /// Detailed-balance and Kolmogorov checks only.
    Reversibility,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub mode: ReduceMode,
    /// Longest cycle for the Kolmogorov check (reversibility mode).
    #[arg(long, default_value_t = 5)]
    pub max_cycle: usize,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RankaggArgs {
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Membership probabilities, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.03,0.05,0.07")]
    pub p: Vec<f64>,
    #[arg(long, default_value_t = 30)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Restart probability of every ranking walk.
    #[arg(long, default_value_t = 0.4)]
    pub beta: f64,
    /// Rank these matches instead of running the synthetic experiment.
    #[arg(long, value_name = "FILE")]
    pub matches: Option<PathBuf>,
    /// Run trials on one thread.
    #[arg(long)]
    pub sequential: bool,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}
