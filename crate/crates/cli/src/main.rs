//! `p2q`: build, classify and inspect groups of order p²q and their
//! automorphism groups.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or condition
//! error, 3 resource bound exceeded.

mod cmd;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "p2q",
    version,
    about = "Groups of order p^2 q and their automorphism groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Largest group order handled by brute-force automorphism searches.
    #[arg(long, global = true, env = "P2Q_MAX_ORDER", default_value_t = 1000)]
    pub max_order: usize,

    /// Emit JSON instead of aligned text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Only the rows of the classification table (drops the q = 2 scalar class).
    #[arg(long, global = true)]
    pub strict_paper: bool,

    /// Check associativity of every triple when loading or building a table.
    #[arg(long, global = true)]
    pub full_assoc_check: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SpecArgs {
    /// Row of the table, 1..=11.
    #[arg(long = "type")]
    pub ty: Option<u8>,
    #[arg(short)]
    pub p: Option<u64>,
    #[arg(short)]
    pub q: Option<u64>,
    /// Type-8 parameter.
    #[arg(long = "s")]
    pub s: Option<u64>,
    /// A spec as JSON, e.g. '{"type": 8, "p": 11, "q": 5, "s": 2}'.
    #[arg(long, conflicts_with_all = ["ty", "p", "q", "s"])]
    pub spec: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelArg {
    Order,
    Isomorphism,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List one spec per isomorphism class of order p^2 q.
    Enumerate {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        q: u64,
    },
    /// Build a group and print its Cayley table (JSON) or a summary.
    Build {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Identify the class of a Cayley table read from a file or standard input.
    Classify {
        /// JSON file with {"order", "identity", "table"}; "-" or absent for stdin.
        file: Option<String>,
    },
    /// Compute the automorphism group of a catalog group by exhaustive search.
    Aut {
        #[command(flatten)]
        spec: SpecArgs,
        /// Emit every automorphism as an (a, b, d) triple.
        #[arg(long)]
        decompose: bool,
    },
    /// Compare exhaustive automorphism groups with the table's predictions.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Every spec with p^2 q at most --max-order.
        #[arg(long, conflicts_with_all = ["ty", "p", "q", "s", "spec"])]
        all: bool,
        #[arg(long, value_enum, default_value_t = LevelArg::Order)]
        level: LevelArg,
        /// Include wall-clock milliseconds in reports.
        #[arg(long)]
        timing: bool,
    },
    /// Print the classification table, with orders for given primes.
    Table {
        #[arg(short)]
        p: Option<u64>,
        #[arg(short)]
        q: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cmd::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
