//! Command-line front end for the cl-battery toolkit.
//!
//! Subcommands: `point` (single-point energetics report), `sweep` (parameter
//! sweep to CSV), `verify` (randomized invariant battery), `reproduce`
//! (figure-style CSV curves). Units are ħ = k_B = 1 throughout.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical failure,
//! 3 verification failure.

// `!(x > 0)`-style guards reject NaN along with out-of-domain values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod point;
mod reproduce;
mod sweep;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use cl_battery::quadrature::QuadratureConfig;
use cl_battery::spectral::{CutoffKind, SpectralDensity};
use cl_battery::Error as CoreError;
use std::process::ExitCode;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_NUMERICAL: u8 = 2;
pub const EXIT_VERIFICATION: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "cl-battery",
    version,
    about = "Steady-state covariance, ergotropy, and cycle energetics of a thermalization-charged oscillator battery (ħ = k_B = 1)"
)]
pub struct Cli {
    /// Relative quadrature tolerance
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,

    /// Absolute quadrature tolerance
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,

    /// Concurrent grid evaluations (defaults to the number of cores)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Emit machine-readable JSON instead of the human report
    #[arg(long, global = true)]
    pub json: bool,

    /// JSON config file mirroring the flags; explicit flags win
    #[arg(long, global = true)]
    pub config: Option<std::path::PathBuf>,

    /// Seed for the randomized checks
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute one steady cycle and print every energetics field
    Point(point::PointArgs),
    /// Sweep one parameter and write a CSV table
    Sweep(sweep::SweepArgs),
    /// Run the invariant battery (sum rules, Williamson residuals,
    /// ergotropy bound, second law)
    Verify(verify::VerifyArgs),
    /// Reproduce the figure curves as CSV plot data
    Reproduce(reproduce::ReproduceArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutoffArg {
    /// f(z) = 2/(1+z²)
    LorentzDrude,
    /// f(z) = π·e^{−z}
    Exponential,
}

impl CutoffArg {
    pub fn to_kind(self) -> CutoffKind {
        match self {
            CutoffArg::LorentzDrude => CutoffKind::LorentzDrude,
            CutoffArg::Exponential => CutoffKind::Exponential,
        }
    }

    pub fn parse_name(name: &str) -> Option<Self> {
        match name {
            "lorentz-drude" => Some(CutoffArg::LorentzDrude),
            "exponential" => Some(CutoffArg::Exponential),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CutoffArg::LorentzDrude => "lorentz-drude",
            CutoffArg::Exponential => "exponential",
        }
    }
}

/// Fully resolved run settings after merging flags over the config file.
pub struct Settings {
    pub quad: QuadratureConfig,
    pub jobs: usize,
    pub json: bool,
    pub seed: u64,
}

pub fn build_spectral_density(
    gamma: f64,
    omega0: f64,
    omegac: f64,
    cutoff: CutoffArg,
) -> Result<SpectralDensity, CoreError> {
    SpectralDensity::new(gamma, omega0, omegac, cutoff.to_kind())
}

/// Maps a core error to the documented exit codes: domain/usage problems are
/// 1, numerical failures are 2.
pub fn exit_code_for(err: &CoreError) -> u8 {
    match err {
        CoreError::InvalidParameter { .. }
        | CoreError::NegativeFrequency { .. }
        | CoreError::PoleAtBoundary { .. } => EXIT_USAGE,
        _ => EXIT_NUMERICAL,
    }
}

fn run() -> u8 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap's help/version "errors" are successful exits
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };

    let file_cfg = match config::load(cli.config.as_deref()) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let settings = config::resolve(&cli, &file_cfg);
    if let Err(e) = settings.quad.validate() {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }

    match &cli.command {
        Command::Point(args) => point::run(args, &settings, &file_cfg),
        Command::Sweep(args) => sweep::run(args, &settings, &file_cfg),
        Command::Verify(args) => verify::run(args, &settings),
        Command::Reproduce(args) => reproduce::run(args, &settings),
    }
}

fn main() -> ExitCode {
    ExitCode::from(run())
}
