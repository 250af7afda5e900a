//! Subcommand implementations.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use eoq_core::{FeasibilityReport, ModelParams, ProfitTriple, SimulationConfig, TornadoMetric};

use crate::config::{self, DEFAULT_N_CYCLES};
use crate::output;
use crate::{Format, EXIT_CONFIG, EXIT_DOMAIN};

/// Command failures, split by exit code: configuration and usage problems
/// exit 1, model-domain failures (unbounded or otherwise unsolvable
/// scenarios) exit 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Domain(#[from] eoq_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Io(_) => EXIT_CONFIG,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

/// Everything `solve` reports; serializes losslessly to JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveRecord {
    pub q_star: f64,
    pub profit: f64,
    pub profit_triple: Option<ProfitTriple>,
    pub denominator: f64,
    pub concave: bool,
    /// Purchase discount implied at the optimal lot size, `E(r_w)·Q*/D`.
    pub implied_discount_rate: f64,
    pub feasibility: FeasibilityReport,
    pub warnings: Vec<String>,
}

fn build_solve_record(params: &ModelParams) -> Result<SolveRecord, CliError> {
    let policy = eoq_core::optimal_q(params)?;
    let implied_discount_rate = params.e_rework * policy.q_star / params.crisp_demand();
    let mut warnings = params.warnings();
    if !policy.feasibility.feasible_at_defuzzified {
        warnings.push(format!(
            "screening rate {} is below the shortage-free threshold {:.1} at the defuzzified demand",
            policy.feasibility.screening_rate, policy.feasibility.required_at_defuzzified
        ));
    } else if !policy.feasibility.feasible_at_upper_support {
        warnings.push(format!(
            "screening rate {} is below the shortage-free threshold {:.1} at the upper demand support",
            policy.feasibility.screening_rate, policy.feasibility.required_at_upper_support
        ));
    }
    if policy.profit_triple.is_none() {
        warnings.push(
            "profit triple omitted: margin below holding slope at Q*, ordering inverted"
                .to_string(),
        );
    }
    if implied_discount_rate >= 1.0 {
        warnings.push(format!(
            "implied discount rate {implied_discount_rate:.3} reaches 100%: out-of-model regime"
        ));
    }
    Ok(SolveRecord {
        q_star: policy.q_star,
        profit: policy.profit,
        profit_triple: policy.profit_triple,
        denominator: policy.denominator,
        concave: policy.concave,
        implied_discount_rate,
        feasibility: policy.feasibility,
        warnings,
    })
}

fn render_solve_text(record: &SolveRecord) -> String {
    let mut text = format!("Q* = {:.1}, profit = {:.3}\n", record.q_star, record.profit);
    if let Some(triple) = &record.profit_triple {
        writeln!(
            text,
            "profit triple = ({:.3}, {:.3}, {:.3})",
            triple.low, triple.peak, triple.high
        )
        .expect("string write");
    }
    writeln!(
        text,
        "implied discount rate = {:.6}",
        record.implied_discount_rate
    )
    .expect("string write");
    writeln!(
        text,
        "denominator = {:.6}, concave = {}",
        record.denominator, record.concave
    )
    .expect("string write");
    let f = &record.feasibility;
    writeln!(
        text,
        "feasibility: x = {} vs required {:.1} (defuzzified demand, {}), {:.1} (upper support, {})",
        f.screening_rate,
        f.required_at_defuzzified,
        if f.feasible_at_defuzzified {
            "ok"
        } else {
            "INFEASIBLE"
        },
        f.required_at_upper_support,
        if f.feasible_at_upper_support {
            "ok"
        } else {
            "INFEASIBLE"
        },
    )
    .expect("string write");
    for warning in &record.warnings {
        writeln!(text, "warning: {warning}").expect("string write");
    }
    text
}

pub fn solve(config_path: &Path, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let cfg = config::load(config_path)?;
    let params = cfg.to_model_params()?;
    let record = build_solve_record(&params)?;
    let rendered = match format {
        Format::Text => render_solve_text(&record),
        Format::Json => to_json(&record)?,
        Format::Csv => {
            return Err(CliError::Usage(
                "solve renders text or json; csv is not defined for a single policy".into(),
            ))
        }
    };
    output::emit(out, &rendered)?;
    Ok(())
}

pub fn sweep(config_path: &Path, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let cfg = config::load(config_path)?;
    let params = cfg.to_model_params()?;
    if cfg.sweep.is_empty() {
        return Err(CliError::Usage(format!(
            "config `{}` has no [[sweep]] section",
            config_path.display()
        )));
    }
    let mut rows = Vec::new();
    for section in &cfg.sweep {
        let section_rows = eoq_core::one_way_sweep(&params, &section.parameter, &section.values)
            .map_err(|e| CliError::Config(e.to_string()))?;
        rows.extend(section_rows);
    }
    let rendered = match format {
        Format::Csv => output::sweep_csv(&rows),
        Format::Json => to_json(&rows)?,
        Format::Text => return Err(CliError::Usage("sweep emits csv or json".into())),
    };
    output::emit(out, &rendered)?;
    Ok(())
}

pub fn tornado(config_path: &Path, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let cfg = config::load(config_path)?;
    let params = cfg.to_model_params()?;
    let section = cfg.tornado.as_ref().ok_or_else(|| {
        CliError::Usage(format!(
            "config `{}` has no [tornado] section",
            config_path.display()
        ))
    })?;
    if section.ranges.is_empty() {
        return Err(CliError::Usage(
            "tornado ranges list is empty: nothing to evaluate".into(),
        ));
    }
    let metric =
        TornadoMetric::parse(&section.metric).map_err(|e| CliError::Config(e.to_string()))?;
    let report = eoq_core::tornado(&params, &section.ranges, metric)
        .map_err(|e| CliError::Config(e.to_string()))?;
    for error in &report.errors {
        eprintln!(
            "warning: parameter {} not evaluated: {}",
            error.parameter, error.message
        );
    }
    let rendered = match format {
        Format::Csv => output::tornado_csv(&report),
        Format::Json => to_json(&report)?,
        Format::Text => return Err(CliError::Usage("tornado emits csv or json".into())),
    };
    output::emit(out, &rendered)?;
    Ok(())
}

pub fn simulate(
    config_path: &Path,
    format: Format,
    out: Option<&Path>,
    seed_override: Option<u64>,
) -> Result<(), CliError> {
    let cfg = config::load(config_path)?;
    let params = cfg.to_model_params()?;
    let section = cfg.simulation.as_ref().ok_or_else(|| {
        CliError::Usage(format!(
            "config `{}` has no [simulation] section",
            config_path.display()
        ))
    })?;
    let q = match section.q {
        Some(q) => q,
        None => eoq_core::optimal_q(&params)?.q_star,
    };
    let sim_config = SimulationConfig {
        scrap_dist: section
            .scrap_dist
            .unwrap_or_else(|| eoq_core::DistributionSpec::default_for_mean(params.e_scrap)),
        rework_dist: section
            .rework_dist
            .unwrap_or_else(|| eoq_core::DistributionSpec::default_for_mean(params.e_rework)),
        n_cycles: section.n_cycles.unwrap_or(DEFAULT_N_CYCLES),
        seed: seed_override.or(section.seed).unwrap_or(0),
        params,
        q,
    };
    sim_config
        .validate()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let result = eoq_core::simulate(&sim_config)?;
    let rendered = match format {
        Format::Csv => output::simulation_csv(&result),
        Format::Json => to_json(&result)?,
        Format::Text => return Err(CliError::Usage("simulate emits csv or json".into())),
    };
    output::emit(out, &rendered)?;
    Ok(())
}

pub fn reproduce_paper(output_dir: &Path) -> Result<(), CliError> {
    let summary = crate::reference::reproduce(output_dir)?;
    for file in &summary.files {
        println!("wrote {}", file.display());
    }
    println!(
        "{} cell(s) disagree with the published tables; see deviations.txt",
        summary.deviations.len()
    );
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Config(format!("serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}
