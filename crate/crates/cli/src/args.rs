use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kpaths_core::FamilyKind;

#[derive(Debug, Parser)]
#[command(
    name = "kpaths",
    version,
    about = "Exponential sum paths over prime fields and their random Fourier series limit"
)]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Seed for every random stream; recorded in each artifact.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for parameter sweeps and Monte Carlo runs.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,
    /// Directory receiving artifacts.
    #[arg(long, global = true, env = "KPATHS_OUTPUT_DIR", default_value = ".")]
    pub output_dir: PathBuf,
    /// Write to this file instead, or `-` for standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// File of `key=value` lines mirroring long flags; flags win on conflict.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Svg => "svg",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Kloosterman,
    Kloosterman2,
    Birch,
    KloostermanShift,
}

impl From<Family> for FamilyKind {
    fn from(f: Family) -> Self {
        match f {
            Family::Kloosterman => FamilyKind::Kloosterman,
            Family::Kloosterman2 => FamilyKind::Kloosterman2,
            Family::Birch => FamilyKind::Birch,
            Family::KloostermanShift => FamilyKind::KloostermanShift,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderingArg {
    Natural,
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Standard,
    ShiftMinusOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Expansion,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceArg {
    Empirical,
    Simulated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountArg {
    InversePair,
    AdditivePair,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partial-sum path of one complete sum.
    Path(PathArgs),
    /// One realization of the truncated random Fourier series.
    Simulate(SimulateArgs),
    /// Empirical mixed moment next to its limiting value.
    Moments(MomentsArgs),
    /// Kolmogorov-Smirnov distance between K_p(t, .) and K_m(t).
    Dist(DistArgs),
    /// Tail probabilities of the sup norm.
    Tails(TailsArgs),
    /// Moments of short sums and fourth-moment solution counts.
    Shortsum(ShortsumArgs),
    /// Complete sum and sup norm for every parameter.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum, default_value = "kloosterman")]
    pub family: Family,
    /// Odd prime modulus.
    #[arg(long)]
    pub p: u64,
}

#[derive(Debug, Clone, Args)]
pub struct PathArgs {
    #[command(flatten)]
    pub fam: FamilyArgs,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    pub a: i64,
    /// Second parameter of the kloosterman2 family.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    pub alpha: i64,
    #[arg(long, value_enum, default_value = "natural")]
    pub ordering: OrderingArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    /// Shifts |h| < m are kept.
    #[arg(long, default_value_t = 5000)]
    pub m: usize,
    /// Number of grid intervals on [0, 1].
    #[arg(long, default_value_t = 10000)]
    pub grid: usize,
    #[arg(long, value_enum, default_value = "standard")]
    pub variant: VariantArg,
    /// Realization index, i.e. the random stream under the seed.
    #[arg(long, default_value_t = 0)]
    pub realization: u64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub fam: FamilyArgs,
    /// Points `t:n,m` separated by `;`, for E prod K(t)^n conj(K(t))^m.
    #[arg(long)]
    pub spec: String,
    #[arg(long, value_enum, default_value = "expansion")]
    pub method: MethodArg,
    /// Shift cutoff of the expansion.
    #[arg(long, default_value_t = kpaths_core::stats::DEFAULT_EXPANSION_CUTOFF)]
    pub cutoff: u64,
    /// Monte Carlo realizations.
    #[arg(long, default_value_t = 10000)]
    pub samples: usize,
    /// Monte Carlo truncation.
    #[arg(long, default_value_t = 1000)]
    pub m: usize,
}

#[derive(Debug, Clone, Args)]
pub struct DistArgs {
    #[command(flatten)]
    pub fam: FamilyArgs,
    #[arg(long, default_value_t = 0.5)]
    pub t: f64,
    #[arg(long, default_value_t = 1000)]
    pub m: usize,
    #[arg(long, default_value_t = 100000)]
    pub samples: usize,
}

#[derive(Debug, Clone, Args)]
pub struct TailsArgs {
    #[arg(long, value_enum, default_value = "simulated")]
    pub source: SourceArg,
    #[arg(long, value_enum, default_value = "kloosterman")]
    pub family: Family,
    /// Prime for the empirical source.
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 512)]
    pub m: usize,
    #[arg(long, default_value_t = 1024)]
    pub grid: usize,
    #[arg(long, default_value_t = 100000)]
    pub samples: usize,
    /// Comma-separated increasing thresholds.
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,1.5,2,2.5")]
    pub thresholds: Vec<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ShortsumArgs {
    #[command(flatten)]
    pub fam: FamilyArgs,
    #[arg(long)]
    pub start: u32,
    #[arg(long)]
    pub len: u32,
    /// Even moment exponent.
    #[arg(long, default_value_t = 4)]
    pub exponent: u32,
    /// Also report this fourth-moment solution count.
    #[arg(long, value_enum)]
    pub count: Option<CountArg>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub fam: FamilyArgs,
    #[arg(long, value_enum, default_value = "natural")]
    pub ordering: OrderingArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}
