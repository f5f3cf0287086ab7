//! `devolve` — benchmark runner CLI.
//!
//! Subcommands: `run` (execute seeded trials and record results), `gen-data`
//! (write transform-data files), `rank` (score stored results), `trace`
//! (emit a convergence trace), and `list-functions` (print the catalog).
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 runtime failure.

mod args;
mod commands;
mod config;

use clap::Parser;
use devolve::Error;

#[derive(Debug, Parser)]
#[command(
    name = "devolve",
    version,
    about = "Differential-evolution benchmark harness",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Subcommand)]
enum Command {
    /// Run seeded benchmark trials and append records to a results file.
    Run(args::RunArgs),
    /// Generate shift/rotation/shuffle files for the benchmark functions.
    GenData(args::GenDataArgs),
    /// Rank stored trial records and emit score tables.
    Rank(args::RankArgs),
    /// Emit a per-generation convergence trace for a single trial.
    Trace(args::TraceArgs),
    /// Print the benchmark function catalog.
    ListFunctions,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not errors
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };

    let outcome = match cli.command {
        Command::Run(a) => commands::run::execute(a),
        Command::GenData(a) => commands::gen_data::execute(a),
        Command::Rank(a) => commands::rank::execute(a),
        Command::Trace(a) => commands::trace::execute(a),
        Command::ListFunctions => commands::list::execute(),
    };

    if let Err(err) = outcome {
        eprintln!("error: {err}");
        std::process::exit(exit_code(&err));
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage(_) | Error::Config(_) => 1,
        Error::Load { .. } | Error::Io(_) | Error::Record(_) => 2,
        Error::Runtime(_) => 3,
    }
}
