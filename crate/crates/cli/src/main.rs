//! `zetalab`: certified checks of the integral identities, bounds and the
//! hypothetical-rational audit.
//!
//! Exit status: 0 when every row holds (for `audit`: when the trace was
//! produced), 1 on a failing or undecided row, 2 on a usage error.

mod commands;
mod config;
mod emit;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::CliError;
use config::{RunArgs, RunConfig};

#[derive(Parser)]
#[command(name = "zetalab", version, about = "Certified checks for zeta(2m+1) integral identities and bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Closed form of I_{n,m} against the quadrature and series oracles
    Lemma,
    /// d_n growth, integral bounds and floor claims (d_n checks only without --m)
    Bounds,
    /// Full claim trace with zeta(2m+1) replaced by --rational a/b
    Audit,
    /// Certified zeta(2m+1), eta(2m+1) and the fractional part
    Zeta,
    /// Direct evaluation of I_{n,m} by both oracles
    Oracle,
}

fn run(cli: Cli) -> Result<commands::Outcome, CliError> {
    let default_m: &[u32] = match cli.command {
        Command::Bounds => &[],
        _ => &[2],
    };
    let config = RunConfig::resolve(cli.run, default_m).map_err(CliError::Usage)?;
    match cli.command {
        Command::Lemma => commands::lemma(&config),
        Command::Bounds => commands::bounds(&config),
        Command::Audit => commands::audit(&config),
        Command::Zeta => commands::zeta(&config),
        Command::Oracle => commands::oracle(&config),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(&outcome.output).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(outcome.exit as u8)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
