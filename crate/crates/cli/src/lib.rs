//! Command-line driver for the `trisub` toolkit.

pub mod commands;
pub mod config;
pub mod sweep;
pub mod table;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use trisub::exact::Variant;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 2;
    pub const NOT_OPTIMAL: i32 = 3;
    pub const INVARIANT: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("optimality required but the budget ran out (best value {0})")]
    NotOptimal(usize),
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => exit::INPUT,
            CliError::NotOptimal(_) => exit::NOT_OPTIMAL,
            CliError::Invariant(_) => exit::INVARIANT,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "trisub", version, about = "Largest triangular submatrices and superboolean rank")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Node limit for the exact search.
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    /// Wall-clock limit for the exact search, in milliseconds.
    #[arg(long)]
    pub budget_ms: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one matrix file.
    Solve {
        matrix: PathBuf,
        #[arg(long, default_value = "ps")]
        variant: Variant,
        #[command(flatten)]
        budget: BudgetArgs,
        /// exact, greedy or corner-then-extend.
        #[arg(long, default_value = "exact")]
        solver: config::SolverKind,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exit with status 3 unless the value is proven optimal.
        #[arg(long)]
        require_optimal: bool,
    },
    /// First-moment bounds and the profile of expected corner counts.
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 0.5)]
        p0: f64,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
        #[arg(long)]
        m_min: Option<u64>,
        #[arg(long)]
        m_max: Option<u64>,
    },
    /// Cross-check the exact solver against exhaustive enumeration.
    Verify {
        #[arg(long, default_value_t = 5)]
        max_dim: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a random matrix with a planted special corner or triangle.
    Plant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Corner side; defaults to `k` (a full triangle).
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long, default_value_t = 0.5)]
        p0: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Matrix output file.
        #[arg(long)]
        out: PathBuf,
        /// Witness output file; defaults to `<out>.witness`.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Run a Monte Carlo sweep described by a config file.
    Sweep {
        config: PathBuf,
        /// Overrides `workers` from the config.
        #[arg(long)]
        workers: Option<usize>,
    },
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Solve { matrix, variant, budget, solver, restarts, seed, require_optimal } => {
            let opts = commands::SolveOptions {
                variant,
                budget: trisub::exact::SolveBudget { max_nodes: budget.budget_nodes, max_millis: budget.budget_ms },
                solver,
                restarts,
                seed,
                require_optimal,
            };
            commands::cmd_solve(&matrix, &opts, out)
        }
        Command::Bounds { n, p0, delta, m_min, m_max } => commands::cmd_bounds(n, p0, delta, m_min, m_max, out),
        Command::Verify { max_dim, samples, seed } => commands::cmd_verify(max_dim, samples, seed, out),
        Command::Plant { n, k, ell, p0, seed, out: path, witness } => {
            commands::cmd_plant(n, k, ell, p0, seed, &path, witness.as_deref(), out)
        }
        Command::Sweep { config, workers } => commands::cmd_sweep(&config, workers, out),
    }
}
