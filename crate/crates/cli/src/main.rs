//! `wavespin`: solve, sample, verify and export Dirac spinor states.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 verification failure.

mod commands;
mod units;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::units::{parse_length, parse_time, parse_tolerance};

/// Environment variable overriding the worker thread count.
pub const THREADS_ENV: &str = "WAVESPIN_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "wavespin",
    version,
    about = "Exact Dirac 4-spinor states: fields, observables and verification"
)]
#[command(
    after_help = "Lengths accept 10nm, 1e-8 or 1e-8m. Times accept 8.6e-13, 8.6e-13s, 864fs or 0.86ps.\n\
Set WAVESPIN_THREADS to fix the number of worker threads; output does not depend on it.\n\
Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 verification failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ground state of the square well: field table, manifest, heatmaps and quiver plot.
    Well(WellArgs),
    /// Free Gaussian wavepacket: z = 0 slice at time t, manifest, heatmaps and quiver plot.
    Packet(PacketArgs),
    /// Run the numerical checks for one state and write a verification manifest.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Print η, E, E − mc², N, S², S_z and the S_z deficit for a well.
    Observables(ObservablesArgs),
}

#[derive(Debug, Args)]
pub struct WellArgs {
    /// Well half-width L (m; accepts nm suffix). The well spans −L ≤ x, y ≤ L.
    #[arg(long = "L", value_name = "LENGTH", value_parser = parse_length, allow_hyphen_values = true)]
    pub half_width: f64,
    /// Grid nodes per axis (≥ 9).
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
    /// Output directory.
    #[arg(long, default_value = "wavespin-out/well")]
    pub out: PathBuf,
    /// Draw a quiver arrow at every stride-th node.
    #[arg(long, default_value_t = 10)]
    pub quiver_stride: usize,
    /// Gauss–Legendre order per axis for the spin integrals (≥ 32).
    #[arg(long, default_value_t = wavespin_core::well::SPIN_QUADRATURE_ORDER)]
    pub order: usize,
}

#[derive(Debug, Args)]
pub struct PacketArgs {
    /// Gaussian width d (m; accepts nm suffix). Must be ≥ 100 reduced Compton wavelengths.
    #[arg(long = "d", value_name = "LENGTH", value_parser = parse_length, allow_hyphen_values = true)]
    pub width: f64,
    /// Time t (s; accepts s, ps, fs suffixes).
    #[arg(long = "t", value_name = "TIME", value_parser = parse_time, default_value = "0", allow_hyphen_values = true)]
    pub time: f64,
    /// Grid nodes per axis (≥ 9).
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
    /// Half-extent of the sampled square in units of d (dimensionless).
    #[arg(long, default_value_t = 4.0)]
    pub extent: f64,
    /// Output directory.
    #[arg(long, default_value = "wavespin-out/packet")]
    pub out: PathBuf,
    /// Draw a quiver arrow at every stride-th node.
    #[arg(long, default_value_t = 10)]
    pub quiver_stride: usize,
}

#[derive(Debug, Subcommand)]
enum VerifyTarget {
    /// Dirac and continuity sweeps, Gordon decomposition, spin quadratures, velocity bound.
    Well(VerifyWellArgs),
    /// Dirac and continuity sweeps, Gordon decomposition, superposition oracle, spreading, charge.
    Packet(VerifyPacketArgs),
}

#[derive(Debug, Args)]
pub struct CommonVerifyArgs {
    /// Seed for the random sample points (ChaCha8).
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of random points for the Gordon decomposition (≥ 16).
    #[arg(long, default_value_t = 16)]
    pub gordon_points: usize,
    /// Allowed deviation of every observed convergence order from 2 (dimensionless).
    #[arg(long, default_value = "0.2", value_parser = parse_tolerance)]
    pub tol_order: f64,
    /// Largest relative Gordon discrepancy at the finest step (dimensionless).
    #[arg(long, default_value = "1e-4", value_parser = parse_tolerance)]
    pub tol_gordon: f64,
}

#[derive(Debug, Args)]
pub struct VerifyWellArgs {
    /// Well half-width L (m; accepts nm suffix).
    #[arg(long = "L", value_name = "LENGTH", value_parser = parse_length, default_value = "10nm", allow_hyphen_values = true)]
    pub half_width: f64,
    /// Nodes per axis of the residual sweeps, comma separated (at least three, increasing).
    #[arg(long, value_delimiter = ',', default_value = "65,129,257")]
    pub grids: Vec<usize>,
    /// Output directory for the verification manifest.
    #[arg(long, default_value = "wavespin-out/verify-well")]
    pub out: PathBuf,
    #[command(flatten)]
    pub common: CommonVerifyArgs,
    /// Random interior points for the divergence and velocity spot checks.
    #[arg(long, default_value_t = 10_000)]
    pub spot_points: usize,
    /// Nodes per axis of the grid scanned for the velocity bound.
    #[arg(long, default_value_t = 1001)]
    pub velocity_grid: usize,
    /// Gauss–Legendre order per axis for the spin integrals (≥ 32).
    #[arg(long, default_value_t = wavespin_core::well::SPIN_QUADRATURE_ORDER)]
    pub order: usize,
    /// Relative tolerance of the eigenvalue relation, relative to E² (dimensionless).
    #[arg(long, default_value = "1e-12", value_parser = parse_tolerance)]
    pub tol_eigen: f64,
    /// Relative tolerance of S² against 3ħ²/4 (dimensionless).
    #[arg(long, default_value = "1e-10", value_parser = parse_tolerance)]
    pub tol_spin_squared: f64,
    /// Relative tolerance of S_z against its closed form (dimensionless).
    #[arg(long, default_value = "1e-12", value_parser = parse_tolerance)]
    pub tol_spin_z: f64,
    /// Relative tolerance of the S_z deficit ħ/2 − S_z (dimensionless).
    #[arg(long, default_value = "1e-2", value_parser = parse_tolerance)]
    pub tol_spin_deficit: f64,
    /// Analytic divergence relative to the field scale (dimensionless).
    #[arg(long, default_value = "1e-10", value_parser = parse_tolerance)]
    pub tol_divergence: f64,
    /// Relative agreement of |j|/ρ with the tangent form (dimensionless).
    #[arg(long, default_value = "1e-10", value_parser = parse_tolerance)]
    pub tol_velocity: f64,
    /// Polarization current of the stationary state relative to the term scale (dimensionless).
    #[arg(long, default_value = "1e-12", value_parser = parse_tolerance)]
    pub tol_polarization: f64,
}

#[derive(Debug, Args)]
pub struct VerifyPacketArgs {
    /// Gaussian width d (m; accepts nm suffix).
    #[arg(long = "d", value_name = "LENGTH", value_parser = parse_length, default_value = "10nm", allow_hyphen_values = true)]
    pub width: f64,
    /// Time of the residual sweeps (s); defaults to half the decoherence time.
    #[arg(long = "t", value_name = "TIME", value_parser = parse_time, allow_hyphen_values = true)]
    pub time: Option<f64>,
    /// Nodes per axis of the 3D residual sweeps, comma separated (at least three, increasing).
    #[arg(long, value_delimiter = ',', default_value = "33,65,129")]
    pub grids: Vec<usize>,
    /// Gauss–Hermite nodes per momentum axis for the superposition oracle (≥ 8).
    #[arg(long, default_value_t = 24)]
    pub nodes: usize,
    /// Random points inside |x| ≤ 3d for the oracle comparison.
    #[arg(long, default_value_t = 1000)]
    pub oracle_points: usize,
    /// Output directory for the verification manifest.
    #[arg(long, default_value = "wavespin-out/verify-packet")]
    pub out: PathBuf,
    #[command(flatten)]
    pub common: CommonVerifyArgs,
    /// Allowed 1 − overlap between oracle and closed form (dimensionless).
    #[arg(long, default_value = "1e-6", value_parser = parse_tolerance)]
    pub tol_oracle: f64,
    /// Allowed |width_ratio(t_c) − √2| (dimensionless).
    #[arg(long, default_value = "1e-3", value_parser = parse_tolerance)]
    pub tol_width: f64,
    /// Relative agreement of the numerical second moment with the closed form (dimensionless).
    #[arg(long, default_value = "1e-6", value_parser = parse_tolerance)]
    pub tol_moment: f64,
    /// Relative change of the enclosed charge over [0, 2 t_c] (dimensionless).
    #[arg(long, default_value = "1e-6", value_parser = parse_tolerance)]
    pub tol_charge: f64,
}

#[derive(Debug, Args)]
pub struct ObservablesArgs {
    /// Well half-width L (m; accepts nm suffix).
    #[arg(long = "L", value_name = "LENGTH", value_parser = parse_length, allow_hyphen_values = true)]
    pub half_width: f64,
    /// Emit JSON instead of a text table.
    #[arg(long)]
    pub json: bool,
    /// Gauss–Legendre order per axis for the spin integrals (≥ 32).
    #[arg(long, default_value_t = wavespin_core::well::SPIN_QUADRATURE_ORDER)]
    pub order: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version print and exit 0; everything else is a usage error
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::Well(a) => commands::well(&a),
        Command::Packet(a) => commands::packet(&a),
        Command::Verify {
            target: VerifyTarget::Well(a),
        } => commands::verify_well(&a),
        Command::Verify {
            target: VerifyTarget::Packet(a),
        } => commands::verify_packet(&a),
        Command::Observables(a) => commands::observables(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| format!("{THREADS_ENV}=`{v}` is not a positive thread count"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}
