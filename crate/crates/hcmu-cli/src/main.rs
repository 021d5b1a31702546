//! Command-line front end: builds rotationally symmetric HCMU metrics with
//! prescribed conical singularities and verifies the resulting artifacts.

mod artifacts;
mod commands;
mod problem;
mod report;

use anyhow::Result;
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hcmu",
    version,
    about = "Build and verify extremal metrics on the sphere assembled from football pieces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test the angle-set obstruction and print the surplus arithmetic
    Check {
        /// Problem description (TOML)
        #[arg(long)]
        input: PathBuf,
        /// Override the base area from the problem file
        #[arg(long)]
        base_area: Option<f64>,
        /// Emit a JSON verdict instead of text
        #[arg(long)]
        json: bool,
    },
    /// Plan, assemble, sample, verify, and write all artifacts
    Build {
        /// Problem description (TOML)
        #[arg(long)]
        input: PathBuf,
        /// Output directory for report.json, profile CSVs, and graph.dot
        #[arg(long)]
        out: PathBuf,
        /// Samples per football profile (odd; default 257)
        #[arg(long)]
        samples: Option<usize>,
        /// Override the base area from the problem file
        #[arg(long)]
        base_area: Option<f64>,
        /// Override one tolerance, e.g. --tol fd_scale=20 (repeatable)
        #[arg(long = "tol", value_name = "NAME=VALUE")]
        tols: Vec<String>,
        /// Emit a JSON summary instead of the residual table
        #[arg(long)]
        json: bool,
    },
    /// Re-read a build directory and re-run the full verification suite
    Verify {
        /// Directory written by a previous build
        #[arg(long)]
        out: PathBuf,
        /// Emit a JSON summary instead of the residual table
        #[arg(long)]
        json: bool,
    },
}

fn run() -> Result<u8> {
    let cli = Cli::parse();
    match cli.command {
        Command::Check {
            input,
            base_area,
            json,
        } => commands::cmd_check(&input, base_area, json),
        Command::Build {
            input,
            out,
            samples,
            base_area,
            tols,
            json,
        } => {
            let tols = tols
                .iter()
                .map(|s| problem::parse_tol_flag(s).map_err(anyhow::Error::msg))
                .collect::<Result<Vec<_>>>()?;
            commands::cmd_build(&input, &out, samples, base_area, &tols, json)
        }
        Command::Verify { out, json } => commands::cmd_verify(&out, json),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::EXIT_MALFORMED)
        }
    }
}
