//! Command-line front end: config ingestion, scenario execution,
//! reference-table reproduction, and CSV/JSON export.

pub mod commands;
pub mod config;
pub mod output;
pub mod reference;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

/// Exit status: usage or configuration problem.
pub const EXIT_CONFIG: i32 = 1;
/// Exit status: model-domain failure (infeasible or unbounded scenario).
pub const EXIT_DOMAIN: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "eoq",
    about = "Optimal lot sizing for imperfect-quality inventory with fuzzy demand",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a scenario for the optimal lot size and annual profit.
    Solve {
        #[arg(long)]
        config: PathBuf,
        /// Output format (text or json).
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write output to a file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the one-way parameter sweeps from the config's sweep sections.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Rank parameters by their impact on the optimal policy.
    Tornado {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Monte Carlo validation of the analytic profit rate.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Override the seed from the config.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Recompute the published reference tables and tornado data into CSV
    /// files, flagging cells where computation disagrees with print.
    ReproducePaper {
        /// Directory for the generated files.
        #[arg(long, default_value = "paper-out")]
        output_dir: PathBuf,
    },
}

/// Dispatches a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Solve {
            config,
            format,
            output,
        } => commands::solve(&config, format, output.as_deref()),
        Command::Sweep {
            config,
            format,
            output,
        } => commands::sweep(&config, format, output.as_deref()),
        Command::Tornado {
            config,
            format,
            output,
        } => commands::tornado(&config, format, output.as_deref()),
        Command::Simulate {
            config,
            format,
            output,
            seed,
        } => commands::simulate(&config, format, output.as_deref(), seed),
        Command::ReproducePaper { output_dir } => commands::reproduce_paper(&output_dir),
    };
    match outcome {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
