//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "macsep",
    version,
    about = "Bounds and solvers for lossy transmission of correlated sources over a Gaussian MAC"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Evaluate the three necessary conditions at one distortion pair.
    Verdict {
        /// Source correlation, in [0, 1).
        #[arg(long)]
        rho: f64,
        /// Per-sender power constraint, > 0.
        #[arg(long)]
        power: f64,
        #[arg(long)]
        d1: f64,
        #[arg(long)]
        d2: f64,
    },
    /// Trace minimum-D1 frontiers over a D2 sweep, as CSV.
    Frontier {
        #[arg(long)]
        rho: f64,
        #[arg(long)]
        power: f64,
        /// Sweep variable; only "d2" is supported.
        #[arg(long, default_value = "d2")]
        sweep: String,
        /// First sweep value.
        #[arg(long)]
        min: f64,
        /// Last sweep value (reached exactly when steps > 1).
        #[arg(long)]
        max: f64,
        /// Number of sweep points; 1 emits a single row at --min.
        #[arg(long)]
        steps: usize,
        /// Comma-separated subset of cor6,lt,lw.
        #[arg(long, default_value = "cor6,lt,lw")]
        bounds: String,
        /// Bisection tolerance on the frontier D1 values.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named figure preset, writing <name>.csv and <name>.svg.
    Figure {
        /// One of fig4, fig5, fig8, fig9, fig10, fig11.
        #[arg(long)]
        name: String,
        /// Output directory for the two files.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Classify a distortion pair into its analysis cell.
    Regions {
        #[arg(long)]
        rho: f64,
        #[arg(long)]
        d1: f64,
        #[arg(long)]
        d2: f64,
    },
    /// Compare the pair-rate and common-part conditions on a grid.
    Dominance {
        #[arg(long)]
        rho: f64,
        /// Grid resolution per axis; cells at ((k+1)/(grid+1), ...).
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Finite-alphabet solvers over pmf files.
    #[command(subcommand)]
    Discrete(DiscreteCmd),
    /// Certificate checkers for the five condition systems.
    #[command(subcommand)]
    Check(CheckCmd),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
}

#[derive(Subcommand)]
pub enum DiscreteCmd {
    /// Conditional rate-distortion R(S|Z)(D) of a pair pmf.
    Rd {
        /// Pmf file with rows "s 0 z p" (constant middle column).
        #[arg(long)]
        pmf: PathBuf,
        /// Distortion file with rows "s shat d".
        #[arg(long)]
        distortion: PathBuf,
        #[arg(long)]
        target: f64,
    },
    /// Decoder-side-information rate (upper estimate).
    Wz {
        #[arg(long)]
        pmf: PathBuf,
        #[arg(long)]
        distortion: PathBuf,
        #[arg(long)]
        target: f64,
        /// Auxiliary alphabet size; defaults to |S| + 1.
        #[arg(long)]
        aux_card: Option<usize>,
    },
    /// Reconstruction-constrained conditional rate.
    Rc {
        #[arg(long)]
        pmf: PathBuf,
        #[arg(long)]
        distortion: PathBuf,
        #[arg(long)]
        target: f64,
    },
    /// Common-part labeling and C_GK of a source pair.
    Gk {
        /// Pmf file with rows "s1 s2 0 p" (constant last column).
        #[arg(long)]
        pmf: PathBuf,
    },
}

/// Inputs shared by every checker subcommand.
#[derive(Args)]
pub struct CheckArgs {
    /// Source pmf file with rows "s1 s2 z p".
    #[arg(long)]
    pub pmf: PathBuf,
    /// Certificate file (sections depend on the system checked).
    #[arg(long)]
    pub cert: PathBuf,
    /// First distortion measure, rows "s shat d".
    #[arg(long)]
    pub d1_file: PathBuf,
    /// Second distortion measure, rows "s shat d".
    #[arg(long)]
    pub d2_file: PathBuf,
    #[arg(long)]
    pub target1: f64,
    #[arg(long)]
    pub target2: f64,
    /// Cap on I(S1;S2|Z) for inputs that must form a Markov chain.
    #[arg(long)]
    pub markov_tol: Option<f64>,
    /// Half-width of the BOUNDARY dead zone around zero gaps.
    #[arg(long)]
    pub boundary_tol: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Achievability,
    Converse,
}

#[derive(Subcommand)]
pub enum CheckCmd {
    /// Hybrid-coding certificate: auxiliary channels, input maps, decoders.
    Theorem1 {
        #[command(flatten)]
        args: CheckArgs,
    },
    /// Separation with conditional rate-distortion sides.
    Theorem2 {
        #[command(flatten)]
        args: CheckArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Achievability)]
        mode: ModeArg,
    },
    /// Separation with reconstruction-constrained rates.
    Theorem3 {
        #[command(flatten)]
        args: CheckArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Achievability)]
        mode: ModeArg,
    },
    /// Common observation sent losslessly next to the two rates.
    Theorem4 {
        #[command(flatten)]
        args: CheckArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Achievability)]
        mode: ModeArg,
    },
    /// Necessity system for the Z extension embedded in the pmf file.
    Theorem5 {
        #[command(flatten)]
        args: CheckArgs,
    },
}
