//! `surjtop` — presentations in, cohomology and class counts out.
//!
//! Exit codes: 0 success, 1 usage error, 2 parse/validation error,
//! 3 hypothesis failure in `classify`.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use commands::{CliError, Format};

#[derive(Parser)]
#[command(
    name = "surjtop",
    version,
    about = "Twisted second cohomology of presentation two-complexes and counts of homotopy \
             classes of maps onto the projective plane"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format; defaults to table on a terminal, json otherwise.
    /// The SURJTOP_FORMAT environment variable overrides the default.
    #[arg(long, value_enum)]
    format: Option<Format>,

    /// Write the output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InputArgs {
    /// Inline presentation text (anything starting with '<') or a file path
    input: String,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Default, Clone, Copy)]
struct ParamArgs {
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    l: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    j: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Args, Default, Clone)]
struct RangeArgs {
    /// Inclusive range `a..b` or a single value
    #[arg(long)]
    k: Option<commands::RangeArg>,
    #[arg(long)]
    l: Option<commands::RangeArg>,
    #[arg(long)]
    p: Option<commands::RangeArg>,
    #[arg(long)]
    q: Option<commands::RangeArg>,
    #[arg(long)]
    j: Option<commands::RangeArg>,
    #[arg(long)]
    n: Option<commands::RangeArg>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a presentation; print its canonical form and exponent matrix
    Parse(InputArgs),

    /// Compute the exponent matrix, a twisted matrix, and the cohomology group
    H2 {
        #[command(flatten)]
        input: InputArgs,

        /// Sign assignment such as `x=-1,y=+1`; omitted generators get +1
        #[arg(long)]
        alpha: Option<String>,
    },

    /// Enumerate all valid coefficient systems
    Systems(InputArgs),

    /// Full classification: per-system cohomology and homotopy-class counts
    Classify {
        #[command(flatten)]
        input: InputArgs,

        /// Re-verify odd-order finiteness for every system, not just the trivial one
        #[arg(long)]
        paranoid: bool,
    },

    /// Emit a member of a relator family with predicted and computed invariants
    Family {
        /// One of: example-k1, example-k2, case1, case2, case3
        name: String,

        #[command(flatten)]
        params: ParamArgs,

        #[command(flatten)]
        output: OutputArgs,
    },

    /// Find a presentation with exponent sums (a, b) and twisted order c
    Realize {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        c: u64,

        #[command(flatten)]
        output: OutputArgs,
    },

    /// Compare predicted and computed twisted orders across parameter ranges
    Sweep {
        /// One of: example-k1, example-k2, case1, case2, case3
        #[arg(long)]
        family: String,

        #[command(flatten)]
        ranges: RangeArgs,

        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            _ => {
                eprint!("{e}");
                return ExitCode::from(1);
            }
        },
    };
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
