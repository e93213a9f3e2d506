//! `susyqm`: partner potentials, isospectral families, the two-parameter
//! Pöschl-Teller factorization, QES spectra, Taub modes and Grassmann
//! supermultiplets from the command line.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 invalid input
//! or unwritable output.

mod commands;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use susyqm::numcore::{Grid1D, Kinetic};
use susyqm::qes::Parity;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "susyqm", version, about = "Supersymmetric quantum mechanics on a grid", allow_negative_numbers = true)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Output directory for CSV and JSON files.
    #[arg(long, global = true, env = "SUSYQM_OUT", default_value = ".")]
    pub out: PathBuf,
    /// Print the machine JSON report on stdout instead of a summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Grid overrides for 1D commands (and the square 2D grid of `grassmann`).
    #[arg(long, global = true)]
    pub x_min: Option<f64>,
    #[arg(long, global = true)]
    pub x_max: Option<f64>,
    #[arg(long, global = true)]
    pub nodes: Option<usize>,
    /// Residual tolerance for the per-command checks.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KineticArg {
    /// `−½ d²/dx²`
    Half,
    /// `−d²/dx²`
    Unit,
}

impl From<KineticArg> for Kinetic {
    fn from(k: KineticArg) -> Self {
        match k {
            KineticArg::Half => Kinetic::Half,
            KineticArg::Unit => Kinetic::Unit,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DirectionArg {
    Plus,
    Minus,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partner potentials and the λ-deformed family of a node-free seed state read from CSV.
    #[command(allow_negative_numbers = true)]
    Partner {
        /// `x,value` CSV with the seed state (or potential, see --seed-kind).
        #[arg(long)]
        seed: PathBuf,
        #[arg(long)]
        lambda: f64,
        /// Energy of the seed state; the partner V₊ is shifted by it.
        #[arg(long, default_value_t = 0.0)]
        energy: f64,
        #[arg(long, value_enum, default_value = "state")]
        seed_kind: SeedKind,
        #[arg(long, value_enum, default_value = "half")]
        kinetic: KineticArg,
    },
    /// λ-deformed family of the oscillator ground state.
    #[command(allow_negative_numbers = true)]
    Isospectral {
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long)]
        lambda: f64,
        /// Levels compared between V̂ and V₊.
        #[arg(long, default_value_t = 4)]
        levels: usize,
    },
    /// Two-parameter Sturm-Liouville deformation of the Pöschl-Teller well.
    #[command(allow_negative_numbers = true)]
    PtSl {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0)]
        gamma1: f64,
        #[arg(long, default_value_t = 0.0)]
        gamma2: f64,
        /// Also sweep a 5×5 sample of the parameter plane.
        #[arg(long)]
        sweep: bool,
    },
    /// Quasi-exactly solvable V₀(sinh⁴x − k sinh²x).
    #[command(allow_negative_numbers = true)]
    Qes {
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[arg(long = "N")]
        n: u32,
        #[arg(long, default_value_t = 0.0)]
        k: f64,
        /// Cross-check energies and eigenfunctions against the grid solver.
        #[arg(long)]
        verify: bool,
    },
    /// Razavy potential ½(ζ cosh 2x − M)² through its three-term recursion.
    #[command(allow_negative_numbers = true)]
    Razavy {
        #[arg(long)]
        zeta: f64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        sigma: i32,
        #[arg(long)]
        eta: i32,
    },
    /// Separated Taub modes and their λ-deformations.
    #[command(allow_negative_numbers = true)]
    Taub {
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long, default_value_t = 2.0)]
        lambda1: f64,
        #[arg(long, default_value_t = 2.0)]
        lambda2: f64,
    },
    /// Grassmann supermultiplet for a superpotential S(q0, q1) read from a file.
    #[command(allow_negative_numbers = true)]
    Grassmann {
        /// File holding an expression in q0, q1 (`+ - * / ^`, exp, sinh, cosh, tanh, ...).
        #[arg(long)]
        superpotential: PathBuf,
        /// Profile h(t) of f₊ = h(q0 ± q1).
        #[arg(long, default_value = "t")]
        h: String,
        #[arg(long, value_enum, default_value = "plus")]
        direction: DirectionArg,
    },
    /// Full acceptance suite.
    #[command(allow_negative_numbers = true)]
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeedKind {
    /// The CSV holds a node-free state `u`.
    State,
    /// The CSV holds a potential; its grid ground state seeds the family.
    Potential,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] susyqm::Error),
    #[error("{0}")]
    Invalid(String),
    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: std::io::Error },
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl GlobalArgs {
    pub fn grid(&self, default: Grid1D) -> CliResult<Grid1D> {
        let g = Grid1D::new(
            self.x_min.unwrap_or(default.x_min()),
            self.x_max.unwrap_or(default.x_max()),
            self.nodes.unwrap_or(default.len()),
        )?;
        Ok(g)
    }

    pub fn tol(&self, default: f64) -> CliResult<f64> {
        match self.tol {
            Some(t) if !(t > 0.0 && t.is_finite()) => Err(CliError::Invalid(format!("--tol must be positive, got {t}"))),
            Some(t) => Ok(t),
            None => Ok(default),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
