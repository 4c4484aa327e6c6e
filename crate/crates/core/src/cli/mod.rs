//! Batch command-line front end.
//!
//! Exit codes: 0 success, 2 configuration error, 3 mode error, 4 I/O
//! error, 5 verification failure.

mod commands;
mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use commands::{
    cmd_check_assumptions, cmd_figure1, cmd_lambda_set, cmd_nash_pareto, cmd_solve, cmd_verify, figure1_csv,
    parse_mode, verification_checks, Check, Status, AGENT_SE, PRINCIPAL_SE,
};
pub use config::ModelConfig;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "PARETO_CONTRACTS_THREADS";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("mode error: {0}")]
    Mode(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Mode(_) => 3,
            CliError::Io(_) => 4,
            CliError::Verification(_) => 5,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "pareto-contracts", version, about = "Planner-imposed Pareto contracts versus the Nash benchmark")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON model configuration.
    #[arg(long)]
    pub config: PathBuf,
}

#[derive(Debug, Args)]
pub struct RunOverrides {
    #[arg(long)]
    pub paths: Option<usize>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form optimum for one mode.
    Solve {
        #[command(flatten)]
        common: Common,
        /// pareto, cooperative or nash.
        #[arg(long)]
        mode: String,
        /// Pareto weight of agent 1 (mode pareto).
        #[arg(long)]
        lambda: Option<f64>,
    },
    /// CSV of the Pareto curve, weak endpoints and Nash values.
    Figure1 {
        #[command(flatten)]
        common: Common,
        /// Comma-separated risk aversions.
        #[arg(long, value_delimiter = ',')]
        r_list: Option<Vec<f64>>,
        #[arg(long)]
        grid_size: Option<usize>,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weights for which a Planner beats the Nash benchmark.
    LambdaSet {
        #[command(flatten)]
        common: Common,
    },
    /// Whether the Nash equilibrium is Pareto optimal for some weight.
    NashPareto {
        #[command(flatten)]
        common: Common,
    },
    /// Monte Carlo and brute-force checks of the optima.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        run: RunOverrides,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Growth, exponent and BMO conditions for the configured constants.
    CheckAssumptions {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        run: RunOverrides,
    },
}

fn apply(cfg: &mut ModelConfig, run: &RunOverrides) -> Result<(), CliError> {
    if let Some(v) = run.paths {
        cfg.paths = v;
    }
    if let Some(v) = run.steps {
        cfg.steps = v;
    }
    if let Some(v) = run.seed {
        cfg.seed = v;
    }
    cfg.validate()
}

/// Executes a parsed command, writing reports to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Solve { common, mode, lambda } => {
            let cfg = ModelConfig::load(&common.config)?;
            cmd_solve(&cfg, parse_mode(&mode, lambda)?, out)
        }
        Command::Figure1 { common, r_list, grid_size, out: path } => {
            let mut cfg = ModelConfig::load(&common.config)?;
            if let Some(r) = r_list {
                cfg.r_list = r;
            }
            if let Some(n) = grid_size {
                cfg.grid_size = n;
            }
            cmd_figure1(&cfg, path.as_deref(), out)
        }
        Command::LambdaSet { common } => cmd_lambda_set(&ModelConfig::load(&common.config)?, out),
        Command::NashPareto { common } => cmd_nash_pareto(&ModelConfig::load(&common.config)?, out),
        Command::Verify { common, run, out: path } => {
            let mut cfg = ModelConfig::load(&common.config)?;
            apply(&mut cfg, &run)?;
            let mut buf = Vec::new();
            let result = cmd_verify(&cfg, &mut buf);
            if let Some(path) = path {
                std::fs::write(&path, &buf).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            out.write_all(&buf).map_err(|e| CliError::Io(e.to_string()))?;
            result
        }
        Command::CheckAssumptions { common, run } => {
            let mut cfg = ModelConfig::load(&common.config)?;
            apply(&mut cfg, &run)?;
            cmd_check_assumptions(&cfg, out)
        }
    }
}

/// Reads `PARETO_CONTRACTS_THREADS`; `None` when unset.
pub fn thread_limit() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Config(format!("{THREADS_ENV} must be a positive integer, got '{v}'"))),
        },
    }
}

/// Parses `args`, runs the command and returns the process exit code.
/// Diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
