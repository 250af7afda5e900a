//! TOML scenario configuration.
//!
//! Model parameters are flat top-level keys named after the conventional
//! symbols (`A`, `x`, `h_w`, ...). `demand` accepts either a scalar (crisp)
//! or a `[low, peak, high]` array. Optional `[simulation]`, `[[sweep]]`, and
//! `[tornado]` sections configure the corresponding subcommands.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use eoq_core::{DistributionSpec, ModelParams, Tfn, TornadoRange};

use crate::commands::CliError;

/// Default number of Monte Carlo cycles when the config does not say.
pub const DEFAULT_N_CYCLES: u64 = 1_000_000;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(rename = "A")]
    pub a: f64,
    pub x: f64,
    pub h_w: f64,
    pub h_s: f64,
    pub s: f64,
    pub d: f64,
    pub w: f64,
    pub c: f64,
    pub e_r_s: f64,
    pub e_r_w: f64,
    pub e_one_minus_rs_sq: f64,
    pub demand: DemandSpec,
    #[serde(default)]
    pub simulation: Option<SimulationSection>,
    #[serde(default)]
    pub sweep: Vec<SweepSection>,
    #[serde(default)]
    pub tornado: Option<TornadoSection>,
}

/// Demand as a crisp scalar or a fuzzy triple.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum DemandSpec {
    Scalar(f64),
    Triple(Vec<f64>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationSection {
    /// Lot size to simulate; defaults to the solved optimum.
    pub q: Option<f64>,
    /// Scrap-fraction distribution; defaults to uniform(0, 2·e_r_s).
    pub scrap_dist: Option<DistributionSpec>,
    /// Rework-fraction distribution; defaults to uniform(0, 2·e_r_w).
    pub rework_dist: Option<DistributionSpec>,
    pub n_cycles: Option<u64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub parameter: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TornadoSection {
    /// `q_star` or `profit`.
    pub metric: String,
    pub ranges: Vec<TornadoRange>,
}

impl ScenarioConfig {
    /// Builds validated model parameters, naming the offending key on
    /// failure.
    pub fn to_model_params(&self) -> Result<ModelParams, CliError> {
        let demand = match &self.demand {
            DemandSpec::Scalar(value) => Tfn::crisp(*value),
            DemandSpec::Triple(items) => {
                if items.len() != 3 {
                    return Err(CliError::Config(format!(
                        "key `demand`: expected a scalar or a 3-element [low, peak, high] array, \
                         got {} elements",
                        items.len()
                    )));
                }
                Tfn::new(items[0], items[1], items[2])
                    .map_err(|e| CliError::Config(format!("key `demand`: {e}")))?
            }
        };
        let params = ModelParams {
            demand,
            screening_rate: self.x,
            ordering_cost: self.a,
            selling_price: self.s,
            salvage_value: self.w,
            inspection_cost: self.d,
            purchase_cost: self.c,
            holding_rework: self.h_w,
            holding_scrap: self.h_s,
            e_scrap: self.e_r_s,
            e_rework: self.e_r_w,
            e_one_minus_scrap_sq: self.e_one_minus_rs_sq,
        };
        params
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(params)
    }
}

/// Reads and parses a scenario config. Parse errors keep toml's line/column
/// context.
pub fn load(path: &Path) -> Result<ScenarioConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config `{}`: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| CliError::Config(format!("config `{}` is invalid:\n{e}", path.display())))
}
