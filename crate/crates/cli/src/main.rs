//! `logcoef`: logarithmic-coefficient bounds from the command line.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 on
//! a usage error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use logcoef::Execution;

use report::Format;

#[derive(Debug, Parser)]
#[command(
    name = "logcoef",
    version,
    about = "Logarithmic coefficients of univalent functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// γ₁, γ₂ and Δ = |γ₂| − |γ₁| of a catalog function
    Gamma(GammaArgs),
    /// Closed-form bounds on Δ for a class
    Bounds(BoundsArgs),
    /// Membership and Δ-versus-bound checks over the catalog
    Verify(VerifyArgs),
    /// Brute-force extremes of Δ over a class relaxation body
    Search(SearchArgs),
    /// Bound curves as tables, against search or a catalog family
    Sweep(SweepArgs),
    /// Sample the defining inequality of a class on disk circles
    Membership(MembershipArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassKind {
    #[value(name = "S", alias = "s")]
    S,
    #[value(name = "U", alias = "u")]
    U,
    #[value(name = "M", alias = "m")]
    M,
    #[value(name = "G", alias = "g")]
    G,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Evaluate grids on all cores; output is unchanged
    #[arg(long)]
    pub parallel: bool,
}

impl Output {
    pub fn execution(&self) -> Execution {
        if self.parallel {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// λ and α, shared by function and class selection.
#[derive(Debug, Args)]
pub struct Params {
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FunctionSel {
    /// Catalog label, e.g. koebe, f4, m_alpha_upper
    #[arg(long = "function")]
    pub function: String,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    /// Series truncation order
    #[arg(long, default_value_t = 64)]
    pub order: usize,
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    #[command(flatten)]
    pub function: FunctionSel,
    #[command(flatten)]
    pub params: Params,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long = "class", value_enum)]
    pub class: ClassKind,
    #[command(flatten)]
    pub params: Params,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Check the whole catalog roster
    #[arg(long, conflicts_with = "function")]
    pub all: bool,
    /// Check one catalog function against its own class
    #[arg(long = "function")]
    pub function: Option<String>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, default_value_t = 64)]
    pub order: usize,
    #[command(flatten)]
    pub params: Params,
    #[command(flatten)]
    pub grid: Grid,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct Grid {
    /// Circle radii in (0, 1)
    #[arg(long, value_delimiter = ',', default_values_t = logcoef::classes::DEFAULT_RADII)]
    pub radii: Vec<f64>,
    /// Sample points per circle
    #[arg(long, default_value_t = logcoef::classes::DEFAULT_ANGULAR)]
    pub angular: usize,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long = "class", value_enum)]
    pub class: ClassKind,
    #[command(flatten)]
    pub params: Params,
    /// Grid points per body axis
    #[arg(long, default_value_t = 200)]
    pub resolution: usize,
    /// Also run a seeded random scan with this many samples
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Sweep a class bound against body search
    #[arg(
        long = "class",
        value_enum,
        required_unless_present = "function",
        conflicts_with = "function"
    )]
    pub class: Option<ClassKind>,
    /// Sweep a parametrized catalog family against its class bound
    #[arg(long = "function")]
    pub function: Option<String>,
    /// Parameter step
    #[arg(long, default_value_t = 0.1)]
    pub step: f64,
    /// Largest α for unbounded ranges
    #[arg(long, default_value_t = 5.0)]
    pub max: f64,
    /// Body search resolution per row
    #[arg(long, default_value_t = 100)]
    pub resolution: usize,
    /// Rotations per parameter in a family sweep
    #[arg(long, default_value_t = 8)]
    pub angular: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct MembershipArgs {
    #[command(flatten)]
    pub function: FunctionSel,
    #[command(flatten)]
    pub params: Params,
    /// Class to test; defaults to the class the function is known to belong to
    #[arg(long = "class", value_enum)]
    pub class: Option<ClassKind>,
    /// λ or α of --class when it differs from the function's parameter
    #[arg(long)]
    pub class_param: Option<f64>,
    #[command(flatten)]
    pub grid: Grid,
    #[command(flatten)]
    pub output: Output,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, output) = match &cli.command {
        Command::Gamma(a) => (commands::gamma(a), &a.output),
        Command::Bounds(a) => (commands::bounds(a), &a.output),
        Command::Verify(a) => (commands::verify(a), &a.output),
        Command::Search(a) => (commands::search(a), &a.output),
        Command::Sweep(a) => (commands::sweep(a), &a.output),
        Command::Membership(a) => (commands::membership(a), &a.output),
    };
    let report = match result {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = report.emit(output.format, output.out.as_deref()) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
