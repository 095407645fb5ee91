//! `subconc`: classify set functions, certify self-bounding constants,
//! evaluate concentration bounds and compare them with exact tails.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use input::{FunctionArgs, ProbabilityArgs};
use output::{CliError, Format};

#[derive(Debug, Parser)]
#[command(
    name = "subconc",
    version,
    about = "Concentration of submodular and related set functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Report format; tails default to csv, other commands to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for sampled distributions.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide nonnegativity, monotonicity, submodularity, XOS and subadditivity.
    Classify {
        #[command(flatten)]
        function: FunctionArgs,
    },
    /// Check (a, b)-self-bounding or find the least a for a given b.
    Selfbound(SelfboundArgs),
    /// Evaluate one tail bound.
    Bound(BoundArgs),
    /// Tail table of f(X) next to the bounds.
    Tails(TailsArgs),
    /// The staircase function that defeats Chernoff-type lower tails.
    Counterexample {
        /// Perfect square n >= 9.
        #[arg(long)]
        n: usize,
    },
    /// Deviation needed by the Chernoff and alternative upper tails to reach a target.
    Crossover {
        #[arg(long, default_value_t = 1.0)]
        mean: f64,
        /// Target probabilities, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        target: Vec<f64>,
    },
}

#[derive(Debug, Args)]
struct SelfboundArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[arg(long)]
    a: Option<String>,
    #[arg(long, default_value = "0")]
    b: String,
    /// Report the least a for the given b.
    #[arg(long)]
    minimal_a: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundName {
    ChernoffUpper,
    ChernoffLower,
    AltUpper,
    AbUpper,
    AbLower,
    SubadditiveTail,
}

#[derive(Debug, Args)]
struct BoundArgs {
    #[arg(value_enum)]
    name: BoundName,
    #[arg(long)]
    mean: Option<f64>,
    /// Relative deviation.
    #[arg(long, conflicts_with = "t")]
    delta: Option<f64>,
    /// Absolute deviation.
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    /// Level a in Pr[Z <= a] for subadditive-tail.
    #[arg(long)]
    threshold: Option<f64>,
    /// Pr[Z <= threshold].
    #[arg(long)]
    p_below: Option<f64>,
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[arg(long)]
    k: Option<u32>,
    /// Reject q < 18 or threshold 0.
    #[arg(long)]
    strict_hypothesis: bool,
}

#[derive(Debug, Args)]
struct TailsArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[command(flatten)]
    probs: ProbabilityArgs,
    /// Relative deviations, comma-separated rationals.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0,1/10,1/4,1/3,1/2,3/4,1,3/2,2"
    )]
    deltas: Vec<String>,
    /// chernoff-upper, chernoff-lower, alt-upper, ab-upper:A:B, ab-lower:A:B.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "chernoff-upper,chernoff-lower,alt-upper"
    )]
    bounds: Vec<String>,
    /// Center the events at this value instead of the computed mean.
    #[arg(long)]
    mean: Option<String>,
    /// Estimate the distribution from this many draws instead of exactly.
    #[arg(long)]
    samples: Option<u64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            _ => {
                let message = e.render().to_string();
                return output::report_error(&CliError::Usage(message.trim().to_string()));
            }
        },
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => output::report_error(&e),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let report = match cli.command {
        Command::Classify { function } => commands::classify(&function)?,
        Command::Selfbound(args) => commands::selfbound(&args)?,
        Command::Bound(args) => commands::bound(&args)?,
        Command::Tails(args) => commands::tails(&args, cli.out.seed)?,
        Command::Counterexample { n } => commands::counterexample(n)?,
        Command::Crossover { mean, target } => commands::crossover(mean, &target)?,
    };
    let text = report.render(cli.out.format)?;
    output::write(cli.out.output.as_deref(), &text)
}
