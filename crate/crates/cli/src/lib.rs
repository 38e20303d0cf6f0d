//! Command-line front end for `qgraph`.
//!
//! Exit codes: 0 success (or hypotheses consistent), 1 hypotheses violated,
//! 2 usage or parse error, 3 numerical failure, 4 unmet precondition.

pub mod commands;
pub mod format;

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use format::GraphFile;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Precondition(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 3,
            CliError::Precondition(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Precondition(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Auto,
    Even,
    All,
}

#[derive(Debug, Parser)]
#[command(
    name = "qgraph",
    version,
    about = "Spectra of Schrödinger operators on equilateral metric graphs"
)]
pub struct Cli {
    /// Graph description (TOML).
    #[arg(long, global = true)]
    pub graph: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub output: Option<OutputFormat>,
    /// Worker threads for grid scans (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Eigenvalue search step in sqrt(lambda).
    #[arg(long, global = true, default_value_t = qgraph::spectral::DEFAULT_GRID_STEP)]
    pub grid_step: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate det M(lambda) and its smallest singular value (CSV).
    Scan {
        #[arg(long, allow_negative_numbers = true)]
        lmin: f64,
        #[arg(long, allow_negative_numbers = true)]
        lmax: f64,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
    },
    /// Eigenvalues with multiplicities in [lmin, lmax].
    Eigs {
        #[arg(long, allow_negative_numbers = true)]
        lmin: f64,
        #[arg(long, allow_negative_numbers = true)]
        lmax: f64,
    },
    /// Eigenvalue clusters near (2k pi)^2, or (k pi)^2 on bipartite graphs.
    Clusters {
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        k: Vec<u32>,
        #[arg(long, value_enum, default_value_t = ParityArg::Auto)]
        parity: ParityArg,
        #[arg(long, default_value_t = qgraph::asymptotics::DEFAULT_WINDOW)]
        window: f64,
    },
    /// The cluster polynomial, its roots and the mean-value root.
    Poly,
    /// Effective resistances and the equal-resistance condition.
    Resistance,
    /// Ambarzumian-type hypothesis check (exit 0 consistent, 1 violated).
    Check(CheckCmd),
}

#[derive(Debug, Args)]
pub struct CheckCmd {
    #[arg(long, value_delimiter = ',', default_value = "4,8,16")]
    pub k: Vec<u32>,
    #[arg(long, default_value_t = 1e-6)]
    pub tol_zero: f64,
    #[arg(long, default_value_t = 5e-2)]
    pub tol_shift: f64,
    #[arg(long, default_value_t = qgraph::asymptotics::DEFAULT_WINDOW)]
    pub window: f64,
    #[arg(long, value_enum, default_value_t = ParityArg::Auto)]
    pub parity: ParityArg,
    /// Require |E|-|V|+1 instead of |E|-|V|+2 (equal-resistance graphs).
    #[arg(long)]
    pub weakened: bool,
}

pub fn load_graph(path: &std::path::Path) -> Result<qgraph::MetricGraph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let file = GraphFile::parse(&text).map_err(|e| CliError::Usage(e.to_string()))?;
    file.to_graph().map_err(|e| CliError::Usage(e.to_string()))
}

/// Runs a parsed command line; returns the exit status.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let path = cli
        .graph
        .as_deref()
        .ok_or_else(|| CliError::Usage("--graph FILE is required".into()))?;
    let g = load_graph(path)?;
    let table = cli.output.unwrap_or(OutputFormat::Table);
    match &cli.command {
        Command::Scan { lmin, lmax, step } => commands::scan(&g, *lmin, *lmax, *step, out),
        Command::Eigs { lmin, lmax } => commands::eigs(&g, *lmin, *lmax, cli.grid_step, table, out),
        Command::Clusters { k, parity, window } => {
            commands::clusters(&g, k, *parity, *window, table, out)
        }
        Command::Poly => commands::poly(&g, table, out),
        Command::Resistance => commands::resistance(&g, table, out),
        Command::Check(c) => commands::check(
            &g,
            &commands::CheckArgs {
                ks: c.k.clone(),
                tol_zero: c.tol_zero,
                tol_shift: c.tol_shift,
                window: c.window,
                weakened: c.weakened,
                parity: c.parity,
            },
            out,
        ),
    }
}
