//! Command-line interface for the band-edge solver.

mod commands;
mod config;
mod failure;
mod render;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use config::CommonArgs;

#[derive(Parser)]
#[command(
    name = "blochband",
    version,
    about = "Bloch eigenvalues, spectral gaps, and band edges of a periodic step potential"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve periodic and antiperiodic eigenvalues with error certificates.
    Eigen(CommonArgs),
    /// Report spectral gap lengths with asymptotic predictions.
    Gaps(CommonArgs),
    /// Report spectral band intervals.
    Bands(CommonArgs),
    /// Compare band-edge asymptotics against the transfer-matrix oracle.
    Asym(CommonArgs),
    /// Cross-validate the solver against independent invariants.
    Verify(CommonArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Eigen(args) => commands::eigen(args),
        Command::Gaps(args) => commands::gaps(args),
        Command::Bands(args) => commands::bands(args),
        Command::Asym(args) => commands::asym(args),
        Command::Verify(args) => commands::verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
