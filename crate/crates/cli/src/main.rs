//! `gkz`: classify configurations, list circuits, faces and Cayley
//! structures, certify A-hypergeometric functions, and compute toric residues
//! and resultants.
//!
//! Human output numbers columns from 1 (`a1`, `x1`); `--json` output keeps the
//! library's 0-based indices.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use gkz::residue::DEFAULT_STEP_BUDGET;

#[derive(Parser, Debug)]
#[command(name = "gkz", version, about = "Rational A-hypergeometric functions")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Emit the JSON report instead of the human summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every pseudo-random choice.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Upper bound on subsets or search nodes examined by one search.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    pub max_subsets: u64,
    /// Reduction-step budget for Gröbner computations.
    #[arg(long, global = true, env = "GKZ_BUDGET", default_value_t = DEFAULT_STEP_BUDGET)]
    pub budget: u64,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

/// Where a configuration comes from.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct ConfigSource {
    /// Configuration JSON file (`-` reads standard input).
    #[arg(short, long)]
    pub input: Option<PathBuf>,
    /// Built-in configuration, e.g. `scroll`, `wedge:1:2`, `product:2:2`.
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide gkz-rationality and name the deciding rule.
    Classify {
        #[command(flatten)]
        source: ConfigSource,
    },
    /// List all circuits with balancedness and spanning flags.
    Circuits {
        #[command(flatten)]
        source: ConfigSource,
    },
    /// List the nonempty faces of the convex hull.
    Faces {
        #[command(flatten)]
        source: ConfigSource,
    },
    /// List Cayley structures and whether each is essential.
    Cayley {
        #[command(flatten)]
        source: ConfigSource,
    },
    /// Certify a rational function as A-hypergeometric.
    Verify {
        #[command(flatten)]
        source: ConfigSource,
        /// The expression in x1..xs.
        #[arg(short, long, conflicts_with = "function_file", required_unless_present = "function_file")]
        function: Option<String>,
        /// File holding the expression.
        #[arg(long)]
        function_file: Option<PathBuf>,
    },
    /// Compute a toric residue from a residue problem file.
    Residue {
        /// Residue problem JSON file (`-` reads standard input).
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Interpolate and certify symbolic residues on a two-segment Cayley configuration.
    Witness {
        #[command(flatten)]
        source: ConfigSource,
    },
    /// Sylvester resultant of two univariate polynomials.
    Resultant {
        /// Declared degrees, e.g. `2,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<usize>,
        /// Coefficients lowest degree first, polynomials separated by `;`,
        /// e.g. `1,1,1;2,1,3`. Symbolic coefficients x1.. when omitted.
        #[arg(long)]
        coeffs: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global;
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Classify { source } => commands::classify(&g, source),
        Command::Circuits { source } => commands::circuits(&g, source),
        Command::Faces { source } => commands::faces(&g, source),
        Command::Cayley { source } => commands::cayley(&g, source),
        Command::Verify { source, function, function_file } => {
            commands::verify(&g, source, function.as_deref(), function_file.as_deref())
        }
        Command::Residue { input } => commands::residue(&g, input),
        Command::Witness { source } => commands::witness(&g, source),
        Command::Resultant { degrees, coeffs } => commands::resultant(&g, degrees, coeffs.as_deref()),
    };
    report::emit(&g, outcome, start.elapsed())
}
