//! rschur: a workbench for rainbow Schur triples and rainbow APs.
//!
//! Five commands — count, search, bounds, verify, ap — wrap the library
//! crate.  Default output is a human table; `--json` prints a run report
//! with the argv echo, an input digest, timing, and the payload.
//!
//! Exit codes are a stable contract: 0 success (including budget-limited
//! partial runs), 1 a failed exact identity, 2 bad input (usage, file
//! parse, argument validation), 3 corrupt persisted state.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

mod ap;
mod bounds;
mod count;
mod files;
mod report;
mod search;
mod verify;

use report::{sha256_hex, RunReport};

#[derive(Parser)]
#[command(name = "rschur", version, about = "rainbow Schur-triple and AP workbench")]
struct Cli {
    /// Machine-readable run report on stdout instead of a table.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact triple census of one coloring of [n].
    Count(count::CountArgs),
    /// Maximize the rainbow triple count over 3-colorings.
    #[command(subcommand)]
    Search(search::SearchCmd),
    /// Continuous upper-bound machinery: fixed gamma, min-max, constants.
    Bounds(bounds::BoundsArgs),
    /// Randomized / exhaustive invariant suites (exit 1 on any failure).
    Verify(verify::VerifyArgs),
    /// Rainbow k-term arithmetic progressions.
    Ap(ap::ApArgs),
}

fn dispatch(command: &Command) -> anyhow::Result<report::CmdOutput> {
    match command {
        Command::Count(args) => count::run(args),
        Command::Search(cmd) => search::run(cmd),
        Command::Bounds(args) => bounds::run(args),
        Command::Verify(args) => verify::run(args),
        Command::Ap(args) => ap::run(args),
    }
}

/// Corrupt persisted state exits 3; every other failure is an input error.
fn exit_code_for(err: &anyhow::Error) -> ExitCode {
    for cause in err.chain() {
        if let Some(rainbow_schur::Error::CorruptCheckpoint(_)) =
            cause.downcast_ref::<rainbow_schur::Error>()
        {
            return ExitCode::from(3);
        }
    }
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse(); // usage errors exit 2 via clap
    let start = Instant::now();
    match dispatch(&cli.command) {
        Ok(out) => {
            if cli.json {
                let report = RunReport {
                    command: std::env::args().collect(),
                    input_digest: sha256_hex(out.input_desc.as_bytes()),
                    timing_ms: start.elapsed().as_millis() as u64,
                    payload: out.payload,
                    version: env!("CARGO_PKG_VERSION"),
                };
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("reports serialize")
                );
            } else {
                print!("{}", out.human);
            }
            if out.identity_failure {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            exit_code_for(&err)
        }
    }
}
