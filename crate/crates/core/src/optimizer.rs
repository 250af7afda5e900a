//! Closed-form optimal lot size, special-case reductions, a concavity
//! check, and an exhaustive grid-search oracle for verification.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{FeasibilityReport, ModelParams, ProfitTriple};

/// Relative step used for all finite-difference derivative checks.
pub const FD_RELATIVE_STEP: f64 = 1e-4;

/// Relative tolerance for agreement between the finite-difference second
/// difference and the analytic second derivative.
pub const CURVATURE_MATCH_TOL: f64 = 1e-3;

/// Optimal policy for a parameter set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolicyResult {
    /// Optimal lot size.
    pub q_star: f64,
    /// Defuzzified annual profit at `q_star`.
    pub profit: f64,
    /// Fuzzy profit triple at `q_star`; absent when the margin falls below
    /// the demand-holding slope and the triple cannot be ordered.
    pub profit_triple: Option<ProfitTriple>,
    /// Denominator of the closed-form lot size (diagnostic).
    pub denominator: f64,
    /// Shortage-free screening check; infeasibility is reported, not fatal.
    pub feasibility: FeasibilityReport,
    /// Numeric second-difference concavity check at `q_star`.
    pub concave: bool,
}

/// Weighted demand sum `a + 4b + c` over the demand triple.
fn demand_weight(p: &ModelParams) -> f64 {
    p.demand.low() + 4.0 * p.demand.peak() + p.demand.high()
}

/// Denominator of the closed-form optimal lot size.
fn lot_size_denominator(p: &ModelParams) -> f64 {
    let weight = demand_weight(p);
    let holding_mix =
        2.0 * p.holding_rework - p.holding_rework * p.e_scrap + p.holding_scrap * p.e_scrap;
    weight * holding_mix / p.screening_rate - 12.0 * p.purchase_cost * p.e_rework
        + 6.0 * p.holding_rework * p.e_one_minus_scrap_sq
}

/// Closed-form optimal lot size and the policy evaluated there.
///
/// Fails when the denominator is not positive: the rework discount then
/// dominates the holding drag, profit increases without bound in `q`, and
/// the model has left its valid regime.
pub fn optimal_q(p: &ModelParams) -> Result<PolicyResult> {
    p.validate()?;
    if p.ordering_cost <= 0.0 {
        return Err(Error::NonPositive {
            what: "ordering cost (required for an interior lot-size optimum)",
            value: p.ordering_cost,
        });
    }
    let denominator = lot_size_denominator(p);
    if denominator <= 0.0 {
        return Err(Error::UnboundedObjective { denominator });
    }
    let q_star = (2.0 * p.ordering_cost * demand_weight(p) / denominator).sqrt();
    let profit = p.defuzzified_profit(q_star)?;
    let profit_triple = p.profit_triple(q_star).ok();
    let concave = concavity_check(p, q_star)?.concave;
    Ok(PolicyResult {
        q_star,
        profit,
        profit_triple,
        denominator,
        feasibility: p.check_feasibility(),
        concave,
    })
}

/// The no-rework, instantaneous-screening special case
/// `sqrt(2AD / (h_w · E[(1-r_s)^2]))` at the defuzzified demand.
pub fn optimal_q_classic(p: &ModelParams) -> f64 {
    (2.0 * p.ordering_cost * p.crisp_demand() / (p.holding_rework * p.e_one_minus_scrap_sq)).sqrt()
}

/// Best grid point found by exhaustive evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridBest {
    pub q: f64,
    pub profit: f64,
}

/// Exhaustively evaluates the defuzzified profit on `q_min, q_min + step,
/// ...` up to `q_max` and returns the maximizer (ties break toward the
/// smaller lot size). Test oracle only; never used by the solver itself.
pub fn grid_search_oracle(p: &ModelParams, q_min: f64, q_max: f64, step: f64) -> Result<GridBest> {
    if q_min <= 0.0 {
        return Err(Error::NonPositive {
            what: "grid lower bound",
            value: q_min,
        });
    }
    if step <= 0.0 {
        return Err(Error::NonPositive {
            what: "grid step",
            value: step,
        });
    }
    if q_min > q_max {
        return Err(Error::EmptyGrid { q_min, q_max, step });
    }
    let mut best = GridBest {
        q: q_min,
        profit: p.defuzzified_profit(q_min)?,
    };
    let mut k: u64 = 1;
    loop {
        let q = q_min + k as f64 * step;
        if q > q_max {
            break;
        }
        let profit = p.defuzzified_profit(q)?;
        if profit > best.profit {
            best = GridBest { q, profit };
        }
        k += 1;
    }
    Ok(best)
}

/// Outcome of the numeric concavity check at a lot size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Curvature {
    /// True when the central second difference is negative and agrees with
    /// the analytic second derivative within [`CURVATURE_MATCH_TOL`].
    pub concave: bool,
    /// Central second difference of the defuzzified profit.
    pub second_difference: f64,
    /// Analytic second derivative `-2A·(a+4b+c)/6 / (q^3·(1 - E(r_s)))`.
    /// Zero ordering cost makes this vanish: the objective is then linear in
    /// `q` and has no interior optimum.
    pub analytic: f64,
}

/// Second-difference concavity check of the defuzzified profit at `q`.
pub fn concavity_check(p: &ModelParams, q: f64) -> Result<Curvature> {
    if q <= 0.0 {
        return Err(Error::NonPositive {
            what: "lot size q",
            value: q,
        });
    }
    let h = FD_RELATIVE_STEP * q;
    let f_minus = p.defuzzified_profit(q - h)?;
    let f_mid = p.defuzzified_profit(q)?;
    let f_plus = p.defuzzified_profit(q + h)?;
    let second_difference = (f_plus - 2.0 * f_mid + f_minus) / (h * h);
    let analytic =
        -2.0 * p.ordering_cost * (demand_weight(p) / 6.0) / (q * q * q * (1.0 - p.e_scrap));
    let matches = if analytic == 0.0 {
        false
    } else {
        ((second_difference - analytic) / analytic).abs() <= CURVATURE_MATCH_TOL
    };
    Ok(Curvature {
        concave: second_difference < 0.0 && matches,
        second_difference,
        analytic,
    })
}
