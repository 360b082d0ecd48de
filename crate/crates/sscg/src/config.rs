//! Run configuration shared by the CLI subcommands.
//!
//! Values resolve in precedence order: command-line flags, then a JSON config
//! file, then `SSCG_`-prefixed environment variables, then built-in defaults.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::decimate::DEFAULT_BIT_BUDGET;
use crate::error::{Error, Result};
use crate::generate::DEFAULT_MAX_LEVEL;
use crate::oracle::OracleBudget;

pub const ENV_PREFIX: &str = "SSCG_";

/// One layer of settings; every field optional so layers can be merged.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigLayer {
    pub bit_budget: Option<u64>,
    pub witness_cap: Option<usize>,
    pub budget_seconds: Option<f64>,
    pub max_vertices: Option<usize>,
    pub max_level: Option<u32>,
    pub jobs: Option<usize>,
}

impl ConfigLayer {
    fn merge_over(&self, base: &mut RunConfig) {
        if let Some(v) = self.bit_budget {
            base.bit_budget = v;
        }
        if let Some(v) = self.witness_cap {
            base.witness_cap = v;
        }
        if let Some(v) = self.budget_seconds {
            base.budget_seconds = Some(v);
        }
        if let Some(v) = self.max_vertices {
            base.max_vertices = v;
        }
        if let Some(v) = self.max_level {
            base.max_level = v;
        }
        if let Some(v) = self.jobs {
            base.jobs = Some(v);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub bit_budget: u64,
    pub witness_cap: usize,
    pub budget_seconds: Option<f64>,
    pub max_vertices: usize,
    pub max_level: u32,
    pub jobs: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let budget = OracleBudget::default();
        RunConfig {
            bit_budget: DEFAULT_BIT_BUDGET,
            witness_cap: budget.witness_cap,
            budget_seconds: None,
            max_vertices: budget.max_vertices,
            max_level: DEFAULT_MAX_LEVEL,
            jobs: None,
        }
    }
}

impl RunConfig {
    /// Applies the layers in ascending precedence: environment, config file,
    /// command-line flags.
    pub fn resolve(
        env: impl Fn(&str) -> Option<String>,
        file: Option<&ConfigLayer>,
        flags: &ConfigLayer,
    ) -> Result<Self> {
        let mut cfg = RunConfig::default();
        env_layer(env)?.merge_over(&mut cfg);
        if let Some(file) = file {
            file.merge_over(&mut cfg);
        }
        flags.merge_over(&mut cfg);
        Ok(cfg)
    }

    pub fn oracle_budget(&self) -> OracleBudget {
        OracleBudget {
            max_vertices: self.max_vertices,
            max_seconds: self.budget_seconds,
            witness_cap: self.witness_cap,
        }
    }
}

fn env_value<T: std::str::FromStr>(
    env: &impl Fn(&str) -> Option<String>,
    key: &str,
) -> Result<Option<T>> {
    let full = format!("{ENV_PREFIX}{key}");
    match env(&full) {
        None => Ok(None),
        Some(raw) => raw.parse().map(Some).map_err(|_| {
            Error::usage(format!(
                "environment variable {full} has invalid value {raw:?}"
            ))
        }),
    }
}

fn env_layer(env: impl Fn(&str) -> Option<String>) -> Result<ConfigLayer> {
    Ok(ConfigLayer {
        bit_budget: env_value(&env, "BIT_BUDGET")?,
        witness_cap: env_value(&env, "WITNESS_CAP")?,
        budget_seconds: env_value(&env, "BUDGET_SECONDS")?,
        max_vertices: env_value(&env, "MAX_VERTICES")?,
        max_level: env_value(&env, "MAX_LEVEL")?,
        jobs: env_value(&env, "JOBS")?,
    })
}

pub fn read_config_file(path: &Path) -> Result<ConfigLayer> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Error::usage(format!("config file {}: {e}", path.display())))
}
