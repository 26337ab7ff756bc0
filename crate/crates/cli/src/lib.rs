//! Command-line front end for `fpe-core`: file formats, config and the six verbs.

pub mod commands;
pub mod config;
pub mod document;
pub mod report;

use clap::Parser;

#[derive(Debug, Parser)]
#[command(name = "fpe", version, about = "Fixed-point existence for boolean dynamical systems")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: report::Format,
    /// Budget file; flags override its values.
    #[arg(long, env = config::CONFIG_ENV, global = true)]
    pub config: Option<std::path::PathBuf>,
    #[command(flatten)]
    pub budgets: config::BudgetOverrides,
    #[command(subcommand)]
    pub command: commands::Command,
}

/// Runs an already parsed command line.
pub fn execute(cli: &Cli) -> anyhow::Result<report::Output> {
    let budgets = config::resolve_budgets(cli.config.as_deref(), &cli.budgets)?;
    commands::run(&cli.command, &budgets, cli.format)
}
