//! Run configuration: budgets, seed, output routing.

use std::io::Write;
use std::path::PathBuf;

use clap::ValueEnum;
use kneserlab::error::{Error, Result};
use kneserlab::extremal::DEFAULT_EXACT_SEARCH_BUDGET;
use kneserlab::DEFAULT_ENUMERATION_BUDGET;

pub const DEFAULT_SEED: u64 = 20240317;

/// Environment variable overriding the default enumeration budget.
pub const BUDGET_ENV: &str = "KNESERLAB_BUDGET";

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub enumeration_budget: u64,
    pub exact_budget: u64,
    pub seed: u64,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(cli: &crate::Cli) -> Result<Self> {
        let env_budget = match std::env::var(BUDGET_ENV) {
            Ok(v) => Some(v.parse::<u64>().map_err(|_| {
                Error::domain(format!("{BUDGET_ENV} must be an integer, got '{v}'"))
            })?),
            Err(_) => None,
        };
        let enumeration_budget = cli
            .budget
            .or(env_budget)
            .unwrap_or(DEFAULT_ENUMERATION_BUDGET);
        if enumeration_budget < 1 {
            return Err(Error::domain("budget must be at least 1"));
        }
        Ok(RunConfig {
            enumeration_budget,
            exact_budget: cli.exact_budget.unwrap_or(DEFAULT_EXACT_SEARCH_BUDGET),
            seed: cli.seed,
            output_format: cli.format,
            output_path: cli.output.clone(),
        })
    }

    /// Writes a report to the configured destination.
    pub fn emit(&self, body: &str) -> Result<u8> {
        match &self.output_path {
            None => {
                print!("{body}");
                std::io::stdout().flush().ok();
            }
            Some(path) => {
                std::fs::write(path, body).map_err(|e| {
                    Error::domain(format!("cannot write {}: {e}", path.display()))
                })?;
            }
        }
        Ok(0)
    }
}
