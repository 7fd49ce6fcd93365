//! fibdim — exact fiber dimensions, Hilbert tables, Samuel multiplicities,
//! lattice-identity checks and intersection witnesses for finitely
//! generated submodules of ℚ[z₁,…,zₙ]^N, plus graded model-space reports.
//!
//! Inputs are `.fmod` files (see the `fmod` module for the grammar).  Every
//! subcommand emits a human-readable report by default and a byte-stable
//! machine-readable JSON document under `--json`; all arithmetic is exact,
//! so identical inputs, seed and cap reproduce identical reports.  Exit
//! codes: 0 success, 2 parse error, 3 shape mismatch, 4 not stabilized,
//! 5 internal invariant violation.

mod cache;
mod commands;
mod fmod;
mod report;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use cache::Cache;
use commands::CliError;

#[derive(Parser)]
#[command(
    name = "fibdim",
    version,
    about = "Exact fiber dimensions, Hilbert functions and Samuel multiplicities \
             of polynomial submodules"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fiber dimension by every applicable method, cross-checked
    Fd {
        /// Module description (.fmod)
        file: PathBuf,
        /// Seed for the maximal-point search
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Degree cap for the Hilbert-based methods (library default: max
        /// generator degree + n + 8)
        #[arg(long)]
        max_degree: Option<usize>,
        /// Translate z ↦ z + λ₀ before analysis; comma-separated exact
        /// rationals, one per variable
        #[arg(long, value_name = "RATIONALS")]
        translate: Option<String>,
        /// Emit the machine-readable JSON report
        #[arg(long)]
        json: bool,
        /// Skip the Hilbert-table cache
        #[arg(long)]
        no_cache: bool,
    },
    /// Component-dimension table of a homogeneous module
    Hilbert {
        file: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        no_cache: bool,
    },
    /// Samuel multiplicities c(T), c(S) and the limit-formula fd
    Samuel {
        file: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        no_cache: bool,
    },
    /// Check fd(M1+M2) + fd(M1∩M2) = fd(M1) + fd(M2) on a homogeneous pair
    Lattice {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Degree cap for the degreewise intersection
        #[arg(long)]
        max_degree: Option<usize>,
        /// Include the intersection witnesses in the report
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        json: bool,
    },
    /// Intersection witnesses for a pair of modules (inhomogeneous allowed)
    Witness {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Graded model space: projection table, fd by projection, axiom check
    Model {
        /// Weight preset: drury-arveson, hardy-ball, bergman-ball, or
        /// explicit (with --weights)
        preset: String,
        file: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
        /// Rational weight prefix a_0,a_1,… for the 'explicit' preset
        #[arg(long, value_name = "RATIONALS")]
        weights: Option<String>,
        /// Evaluate the truncated kernel at two points, "z;w" with
        /// comma-separated rational coordinates
        #[arg(long, value_name = "Z;W")]
        kernel_at: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(cli.command, started) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.render());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cmd: Cmd, started: Instant) -> Result<(), CliError> {
    match cmd {
        Cmd::Fd { file, seed, max_degree, translate, json, no_cache } => {
            let cache = Cache::open(no_cache);
            let report =
                commands::cmd_fd(&file, seed, max_degree, translate.as_deref(), cache.as_ref())?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            emit(json, commands::render(json, &report, report.human()), started);
        }
        Cmd::Hilbert { file, max_degree, json, no_cache } => {
            let cache = Cache::open(no_cache);
            let report = commands::cmd_hilbert(&file, max_degree, cache.as_ref())?;
            emit(json, commands::render(json, &report, report.human()), started);
        }
        Cmd::Samuel { file, max_degree, json, no_cache } => {
            let cache = Cache::open(no_cache);
            let report = commands::cmd_samuel(&file, max_degree, cache.as_ref())?;
            emit(json, commands::render(json, &report, report.human()), started);
        }
        Cmd::Lattice { file1, file2, seed, max_degree, witness, json } => {
            let report = commands::cmd_lattice(&file1, &file2, seed, max_degree, witness)?;
            emit(json, commands::render(json, &report, report.human()), started);
        }
        Cmd::Witness { file1, file2, seed, json } => {
            let report = commands::cmd_witness(&file1, &file2, seed)?;
            emit(json, commands::render(json, &report, report.human()), started);
        }
        Cmd::Model { preset, file, max_degree, weights, kernel_at, json } => {
            let report = commands::cmd_model(
                &preset,
                &file,
                max_degree,
                weights.as_deref(),
                kernel_at.as_deref(),
            )?;
            emit(json, commands::render(json, &report, report.human()), started);
        }
    }
    Ok(())
}

/// Print the report.  The JSON surface is byte-stable, so elapsed time is
/// appended to the human form only.
fn emit(json: bool, text: String, started: Instant) {
    print!("{text}");
    if !json {
        println!("  elapsed: {} ms", started.elapsed().as_millis());
    }
}
