use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use unram_cli::{cmd_compute, cmd_verify, ReferenceTable, DEFAULT_MAX_DEGREE};

#[derive(Parser)]
#[command(
    name = "unram",
    version,
    about = "Multiple-cover invariants of a (-1,-1) curve, unramified compactification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the degree-d invariant exactly.
    Compute {
        d: u32,
        /// Print as a product of prime powers.
        #[arg(long)]
        factored: bool,
        /// Print one record per fixed locus before the value.
        #[arg(long)]
        breakdown: bool,
        /// Refuse degrees above this bound.
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: u32,
    },
    /// Recompute degrees 2..=N and compare with a reference table.
    Verify {
        #[arg(long, default_value_t = 9)]
        max_degree: u32,
        /// Reference table (`d<TAB>value` lines); defaults to the built-in one.
        #[arg(long)]
        table: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
    let status = match cli.command {
        Command::Compute {
            d,
            factored,
            breakdown,
            max_degree,
        } => cmd_compute(d, factored, breakdown, max_degree, &mut out, &mut err),
        Command::Verify { max_degree, table } => {
            let table = match table {
                Some(path) => match ReferenceTable::load(&path) {
                    Ok(t) => t,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                },
                None => ReferenceTable::embedded(),
            };
            cmd_verify(max_degree, &table, &mut out, &mut err)
        }
    };
    ExitCode::from(status.code() as u8)
}
