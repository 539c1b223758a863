//! Command-line front end. Exit codes: 0 success, 1 verification or
//! numeric failure, 2 invalid or inadmissible input.

mod commands;
mod config;
mod document;
mod verify;

use clap::{Parser, Subcommand};

pub use commands::{exit_code, EXIT_FAILURE, EXIT_INVALID, EXIT_OK};
pub use config::{model_by_name, ConfigFile, OutputFormat, RunArgs, RunConfig, DEFAULT_N_MAX};
pub use document::{
    psi_columns, transform_csv, ClassificationDocument, ExactRatFun, ExactRational, LevelTagDocument, TransformDocument,
};
pub use verify::{check_names, run_checks, CheckResult, Status, VerifyReport, EIGENVECTOR_TOLERANCE};

#[derive(Debug, Parser)]
#[command(
    name = "darboux",
    version,
    about = "Exact higher-order Darboux transformations of the harmonic oscillator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the transformation and write its exact coefficients and samples.
    Transform(RunArgs),
    /// Run the exact identity checks and the numeric cross-checks.
    Verify(RunArgs),
    /// Compare numeric spectra of h0 and h_N with the exact prediction.
    Spectrum(RunArgs),
    /// Tag levels as SUSY doublets or singlets.
    Classify(RunArgs),
}

pub fn run_with(cli: Cli) -> i32 {
    let (args, cmd): (&RunArgs, fn(&RunConfig) -> crate::Result<i32>) = match &cli.command {
        Command::Transform(a) => (a, commands::transform),
        Command::Verify(a) => (a, commands::verify),
        Command::Spectrum(a) => (a, commands::spectrum),
        Command::Classify(a) => (a, commands::classify),
    };
    let cfg = match RunConfig::resolve(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INVALID;
        }
    };
    cmd(&cfg).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        exit_code(&e)
    })
}

pub fn run() -> i32 {
    match Cli::try_parse() {
        Ok(cli) => run_with(cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            }
        }
    }
}
