mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sfborel::DEFAULT_ENUMERATION_CAP;

use crate::output::Format;

/// Waldschmidt constants of square-free principal Borel ideals.
///
/// Monomials are written as variable indices, e.g. `2,3,5,6,8,10` or
/// `33215..104348`.
#[derive(Parser)]
#[command(name = "sfborel", version)]
struct Cli {
    /// Largest number of associated primes to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Also print 12-significant-digit decimals (non-authoritative).
    #[arg(long, global = true)]
    approx: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Jump positions, their indices, ell and nu.
    Profile { monomial: String },
    /// Minimal generators of the principal Borel ideal.
    Gens { monomial: String },
    /// Associated primes, optionally checked against vertex-cover enumeration.
    Primes {
        monomial: String,
        #[arg(long)]
        verify_cover: bool,
    },
    /// Waldschmidt constant, exactly or as certified bounds.
    Alpha {
        monomial: String,
        #[arg(long, value_enum, default_value_t = AlphaMethod::Auto)]
        method: AlphaMethod,
    },
    /// A monomial whose ideal has the given constant `a/b >= 1`.
    Construct { target: String },
    /// Initial degrees of symbolic powers by direct search.
    Oracle {
        monomial: String,
        #[arg(long, default_value_t = 4)]
        smax: u32,
        /// Exponent vectors examined per power before giving up.
        #[arg(long, default_value_t = sfborel::symbolic::DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
    /// Auto-mode constants for every monomial in a file, one per line.
    Batch { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlphaMethod {
    Auto,
    Lp,
    Formula,
    Upper,
    Lower,
    Interval,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = commands::Options {
        cap: cli.cap,
        approx: cli.approx,
    };
    let result = match cli.command {
        Command::Profile { monomial } => commands::profile(&monomial),
        Command::Gens { monomial } => commands::gens(&monomial, &opts),
        Command::Primes { monomial, verify_cover } => commands::primes(&monomial, verify_cover, &opts),
        Command::Alpha { monomial, method } => commands::alpha(&monomial, method, &opts),
        Command::Construct { target } => commands::construct(&target, &opts),
        Command::Oracle { monomial, smax, budget } => commands::oracle(&monomial, smax, budget, &opts),
        Command::Batch { file } => commands::batch(&file, &opts),
    };
    output::emit(&result, cli.format);
    if result.errors.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
