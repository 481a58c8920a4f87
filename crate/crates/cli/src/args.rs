use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::figures::FigureId;

#[derive(Debug, Parser)]
#[command(name = "cavent", version, about = "Atom pair entanglement in a spherical cavity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal-mode frequencies and atomic weights.
    Spectrum(SpectrumArgs),
    /// Survival coefficient on a time grid.
    F00(F00Args),
    /// Concurrence of the atom pair on a time grid.
    Concurrence(ConcurrenceArgs),
    /// Data for one of the stock figures, one CSV per curve.
    Figure(FigureArgs),
    /// Self-checks against the brute-force reference.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,
    /// Coupling constant.
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    /// Cavity radius.
    #[arg(long, default_value_t = 1.0, conflicts_with = "free_space")]
    pub radius: f64,
    /// Use the unbounded continuum instead of a cavity.
    #[arg(long)]
    pub free_space: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Largest missing spectral weight.
    #[arg(long, default_value_t = 1e-6)]
    pub eps: f64,
    /// Relative tolerance on each normal-mode frequency.
    #[arg(long, default_value_t = 1e-12)]
    pub root_tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 0.0)]
    pub t_start: f64,
    #[arg(long, default_value_t = 10.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Keep exactly this many modes instead of truncating by weight.
    #[arg(long)]
    pub r_max: Option<usize>,
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct F00Args {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub r_max: Option<usize>,
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct ConcurrenceArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub r_max: Option<usize>,
    /// Weight of the first atom excited.
    #[arg(long)]
    pub xi: f64,
    /// Relative phase between the two single-excitation components.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    pub id: FigureId,
    #[arg(long, default_value = "figures")]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = 0.005)]
    pub dt: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub eps: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub root_tol: f64,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 1e-4)]
    pub eps: f64,
    /// Field modes in the brute-force reference.
    #[arg(long, default_value_t = 4000)]
    pub oracle_modes: usize,
    /// Random amplitude pairs for the concurrence identity.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}
