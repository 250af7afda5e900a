//! Output plumbing shared by the subcommands: file-or-stdout writing and
//! CSV assembly.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use eoq_core::{SimulationResult, SweepRow, TornadoReport};

/// Writes `content` to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, content: &str) -> io::Result<()> {
    match path {
        Some(path) => fs::write(path, content),
        None => io::stdout().write_all(content.as_bytes()),
    }
}

fn opt(value: Option<f64>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

/// Sweep rows as CSV: one row per evaluated value, errors carried in the
/// last column.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("parameter,value,q_star,profit,error\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.parameter,
            row.value,
            opt(row.q_star),
            opt(row.profit),
            row.error.as_deref().unwrap_or(""),
        ));
    }
    out
}

/// Tornado bars as CSV, widest first. Unevaluable ranges are not rows in
/// this schema; the caller reports them separately.
pub fn tornado_csv(report: &TornadoReport) -> String {
    let mut out =
        String::from("parameter,low_value,high_value,metric_at_low,metric_at_high,span\n");
    for bar in &report.bars {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            bar.parameter,
            bar.low_value,
            bar.high_value,
            bar.metric_at_low,
            bar.metric_at_high,
            bar.span,
        ));
    }
    out
}

/// Simulation result as a single-row CSV.
pub fn simulation_csv(result: &SimulationResult) -> String {
    format!(
        "mean_profit_rate,ci_halfwidth,shortages_detected,cycles_run,rejected_draws\n{},{},{},{},{}\n",
        result.mean_profit_rate,
        result.ci_halfwidth,
        result.shortages_detected,
        result.cycles_run,
        result.rejected_draws,
    )
}
