//! Argument grammar.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "ilsq",
    version,
    about = "Mixed real/integer least-squares solvers: reduction, decorrelation, one-step \
             rounding, exact 0-1 programming, and an enumeration oracle"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce a mixed-model file to a reduced-problem file (H, z_float, c0).
    Reduce {
        /// Mixed-model JSON file.
        input: PathBuf,
        /// Output path; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Solve a problem file (mixed or reduced, auto-detected) and print a report.
    Solve {
        /// Problem JSON file.
        input: PathBuf,
        /// Solver to run.
        #[arg(long, value_enum)]
        method: Option<Method>,
        /// Run every method and print a comparison summary.
        #[arg(long, conflicts_with = "method")]
        all: bool,
        /// Skip the unimodular decorrelation (pivot method only).
        #[arg(long)]
        no_decorrelate: bool,
        /// Half-width multiplier for derived search boxes.
        #[arg(long, default_value_t = 3.0)]
        kappa: f64,
        /// Box file {"m0": [...], "m1": [...]}. Interpreted in decorrelated
        /// coordinates for --method ilp, original coordinates for --method enum.
        #[arg(long = "box", value_name = "FILE")]
        box_file: Option<PathBuf>,
        /// Also run the enumeration oracle and report whether the method
        /// attained its optimum.
        #[arg(long)]
        verify: bool,
        /// Output path; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate a synthetic mixed model with known ground truth.
    Generate {
        /// Number of real parameters.
        #[arg(long, default_value_t = 2)]
        p: usize,
        /// Number of integer parameters.
        #[arg(long, default_value_t = 4)]
        q: usize,
        /// Number of observations; defaults to p + q + 6.
        #[arg(long)]
        m: Option<usize>,
        /// Noise standard deviation.
        #[arg(long, default_value_t = 0.05)]
        noise: f64,
        /// Correlation strength in [0, 1) mixed into the integer design.
        #[arg(long, default_value_t = 0.6)]
        corr: f64,
        /// RNG seed; identical seeds give identical files.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Model output path; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Truth-file path; defaults to the --output path with a .truth.json extension.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
    /// Compare methods against the enumeration oracle on random instances.
    Bench {
        #[arg(long, default_value_t = 100)]
        instances: u64,
        #[arg(long, default_value_t = 5)]
        q: usize,
        #[arg(long, default_value_t = 0.15)]
        noise: f64,
        #[arg(long, default_value_t = 0.6)]
        corr: f64,
        #[arg(long, default_value_t = 3.0)]
        kappa: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSON output path; stdout when omitted. A text table goes to stderr.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Componentwise rounding of the float solution.
    Round,
    /// Minimum-pivot factorization with sequential conditional rounding.
    Pivot,
    /// Exact 0-1 integer programming over a box.
    Ilp,
    /// Exhaustive enumeration oracle.
    Enum,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Round => "round",
            Method::Pivot => "pivot",
            Method::Ilp => "ilp",
            Method::Enum => "enum",
        }
    }
}
