//! One-way parameter sweeps and tornado-diagram data.
//!
//! Sweeps change exactly one parameter at a time, re-solve for the optimal
//! lot size, and report `(q_star, profit)` per value. Values that violate a
//! parameter invariant or push the objective into the unbounded regime
//! become error rows rather than aborting the sweep: sweeps over the
//! purchase cost or the rework fraction can legitimately cross that
//! boundary.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::optimizer;

/// The model parameters a sweep can vary, keyed by their conventional
/// symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepParameter {
    ScreeningRate,
    HoldingRework,
    HoldingScrap,
    OrderingCost,
    InspectionCost,
    SellingPrice,
    PurchaseCost,
    SalvageValue,
    ExpectedScrap,
    ExpectedRework,
}

impl SweepParameter {
    pub const ALL: [SweepParameter; 10] = [
        SweepParameter::ScreeningRate,
        SweepParameter::HoldingRework,
        SweepParameter::HoldingScrap,
        SweepParameter::OrderingCost,
        SweepParameter::InspectionCost,
        SweepParameter::SellingPrice,
        SweepParameter::PurchaseCost,
        SweepParameter::SalvageValue,
        SweepParameter::ExpectedScrap,
        SweepParameter::ExpectedRework,
    ];

    /// Canonical symbol used in reports and config files.
    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::ScreeningRate => "x",
            SweepParameter::HoldingRework => "h_w",
            SweepParameter::HoldingScrap => "h_s",
            SweepParameter::OrderingCost => "A",
            SweepParameter::InspectionCost => "d",
            SweepParameter::SellingPrice => "s",
            SweepParameter::PurchaseCost => "c",
            SweepParameter::SalvageValue => "w",
            SweepParameter::ExpectedScrap => "E(r_s)",
            SweepParameter::ExpectedRework => "E(r_w)",
        }
    }

    /// Parses a canonical symbol (config-friendly aliases accepted for the
    /// expectation parameters).
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "x" => Ok(SweepParameter::ScreeningRate),
            "h_w" => Ok(SweepParameter::HoldingRework),
            "h_s" => Ok(SweepParameter::HoldingScrap),
            "A" => Ok(SweepParameter::OrderingCost),
            "d" => Ok(SweepParameter::InspectionCost),
            "s" => Ok(SweepParameter::SellingPrice),
            "c" => Ok(SweepParameter::PurchaseCost),
            "w" => Ok(SweepParameter::SalvageValue),
            "E(r_s)" | "e_r_s" => Ok(SweepParameter::ExpectedScrap),
            "E(r_w)" | "e_r_w" => Ok(SweepParameter::ExpectedRework),
            other => Err(Error::UnknownParameter {
                name: other.to_string(),
            }),
        }
    }

    /// Returns a copy of `base` with this parameter set to `value`.
    ///
    /// Sweeping `E(r_s)` leaves the second moment `E[(1-r_s)^2]` at its base
    /// value: the sweep varies one coefficient at a time, exactly as the
    /// reference experiments do.
    pub fn apply(&self, base: &ModelParams, value: f64) -> ModelParams {
        let mut p = base.clone();
        match self {
            SweepParameter::ScreeningRate => p.screening_rate = value,
            SweepParameter::HoldingRework => p.holding_rework = value,
            SweepParameter::HoldingScrap => p.holding_scrap = value,
            SweepParameter::OrderingCost => p.ordering_cost = value,
            SweepParameter::InspectionCost => p.inspection_cost = value,
            SweepParameter::SellingPrice => p.selling_price = value,
            SweepParameter::PurchaseCost => p.purchase_cost = value,
            SweepParameter::SalvageValue => p.salvage_value = value,
            SweepParameter::ExpectedScrap => p.e_scrap = value,
            SweepParameter::ExpectedRework => p.e_rework = value,
        }
        p
    }
}

/// One evaluated point of a one-way sweep. Failed evaluations carry the
/// error message instead of results.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub parameter: String,
    pub value: f64,
    pub q_star: Option<f64>,
    pub profit: Option<f64>,
    pub error: Option<String>,
}

/// Evaluates the optimal policy at each value of one parameter, all other
/// parameters held at their base values. Rows come back in input order.
pub fn one_way_sweep(base: &ModelParams, parameter: &str, values: &[f64]) -> Result<Vec<SweepRow>> {
    let param = SweepParameter::parse(parameter)?;
    Ok(values
        .iter()
        .map(|&value| evaluate_row(base, param, value))
        .collect())
}

fn evaluate_row(base: &ModelParams, param: SweepParameter, value: f64) -> SweepRow {
    let modified = param.apply(base, value);
    match optimizer::optimal_q(&modified) {
        Ok(policy) => SweepRow {
            parameter: param.name().to_string(),
            value,
            q_star: Some(policy.q_star),
            profit: Some(policy.profit),
            error: None,
        },
        Err(err) => SweepRow {
            parameter: param.name().to_string(),
            value,
            q_star: None,
            profit: None,
            error: Some(err.to_string()),
        },
    }
}

/// Which optimal-policy output a tornado diagram ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TornadoMetric {
    QStar,
    Profit,
}

impl TornadoMetric {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "q_star" => Ok(TornadoMetric::QStar),
            "profit" => Ok(TornadoMetric::Profit),
            other => Err(Error::UnknownParameter {
                name: format!("tornado metric `{other}` (expected q_star or profit)"),
            }),
        }
    }
}

/// A low/high experimental range for one parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TornadoRange {
    pub parameter: String,
    pub low: f64,
    pub high: f64,
}

/// One bar of a tornado diagram: the metric evaluated at both ends of a
/// parameter's experimental range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TornadoBar {
    pub parameter: String,
    pub low_value: f64,
    pub high_value: f64,
    pub metric_at_low: f64,
    pub metric_at_high: f64,
    /// `|metric_at_high - metric_at_low|`.
    pub span: f64,
}

/// A tornado range that could not be evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TornadoError {
    pub parameter: String,
    pub message: String,
}

/// Tornado bars sorted by descending span (ties broken by parameter name),
/// with unevaluable ranges reported alongside rather than dropped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TornadoReport {
    pub metric: TornadoMetric,
    pub bars: Vec<TornadoBar>,
    pub errors: Vec<TornadoError>,
}

/// Evaluates the metric at the low and high end of each range, all other
/// parameters at base values.
pub fn tornado(
    base: &ModelParams,
    ranges: &[TornadoRange],
    metric: TornadoMetric,
) -> Result<TornadoReport> {
    let mut bars = Vec::new();
    let mut errors = Vec::new();
    for range in ranges {
        let param = SweepParameter::parse(&range.parameter)?;
        let at = |value: f64| -> Result<f64> {
            let policy = optimizer::optimal_q(&param.apply(base, value))?;
            Ok(match metric {
                TornadoMetric::QStar => policy.q_star,
                TornadoMetric::Profit => policy.profit,
            })
        };
        match (at(range.low), at(range.high)) {
            (Ok(metric_at_low), Ok(metric_at_high)) => bars.push(TornadoBar {
                parameter: param.name().to_string(),
                low_value: range.low,
                high_value: range.high,
                metric_at_low,
                metric_at_high,
                span: (metric_at_high - metric_at_low).abs(),
            }),
            (low_result, high_result) => {
                let message = low_result
                    .err()
                    .or(high_result.err())
                    .map(|e| e.to_string())
                    .unwrap_or_default();
                errors.push(TornadoError {
                    parameter: param.name().to_string(),
                    message,
                });
            }
        }
    }
    bars.sort_by(|a, b| {
        b.span
            .partial_cmp(&a.span)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.parameter.cmp(&b.parameter))
    });
    Ok(TornadoReport {
        metric,
        bars,
        errors,
    })
}
