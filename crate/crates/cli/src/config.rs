//! Budgets from a TOML file (path in `FIXPOINT_CONFIG`) with flag overrides.
//!
//! The file is flat `key = value`:
//!
//! ```toml
//! brute_force_cap = 25
//! max_width = 20
//! max_degree = 12
//! max_relation_pairs = 4194304
//! max_probe_arity = 20
//! ```
//!
//! Missing keys keep their defaults; unknown keys are an error. Flags win.

use std::path::Path;

use anyhow::{Context, Result};
use fpe_core::solve::Budgets;
use serde::Deserialize;

pub const CONFIG_ENV: &str = "FIXPOINT_CONFIG";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::Args)]
#[serde(deny_unknown_fields)]
pub struct BudgetOverrides {
    /// Largest system the brute-force oracle enumerates.
    #[arg(long = "budget-brute-force-cap", global = true)]
    pub brute_force_cap: Option<usize>,
    /// Largest tree-decomposition width the CSP route accepts.
    #[arg(long = "budget-max-width", global = true)]
    pub max_width: Option<usize>,
    /// Largest degree at which formulas and circuits are expanded to tables.
    #[arg(long = "budget-max-degree", global = true)]
    pub max_degree: Option<usize>,
    /// Largest number of relation pairs or bag-table rows the CSP route builds.
    #[arg(long = "budget-max-relation-pairs", global = true)]
    pub max_relation_pairs: Option<usize>,
    /// Largest arity whose table is scanned for linearity or monotonicity.
    #[arg(long = "budget-max-probe-arity", global = true)]
    pub max_probe_arity: Option<usize>,
}

impl BudgetOverrides {
    fn apply(&self, b: &mut Budgets) {
        let pairs = [
            (self.brute_force_cap, &mut b.brute_force_cap),
            (self.max_width, &mut b.max_width),
            (self.max_degree, &mut b.max_degree),
            (self.max_relation_pairs, &mut b.max_relation_pairs),
            (self.max_probe_arity, &mut b.max_probe_arity),
        ];
        for (value, slot) in pairs {
            if let Some(v) = value {
                *slot = v;
            }
        }
    }
}

pub fn parse_config(text: &str) -> Result<BudgetOverrides> {
    Ok(toml::from_str(text)?)
}

/// Defaults, then the config file (if given), then flags.
pub fn resolve_budgets(config_path: Option<&Path>, flags: &BudgetOverrides) -> Result<Budgets> {
    let mut budgets = Budgets::default();
    if let Some(path) = config_path {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        parse_config(&text).with_context(|| format!("config {}", path.display()))?.apply(&mut budgets);
    }
    flags.apply(&mut budgets);
    Ok(budgets)
}
