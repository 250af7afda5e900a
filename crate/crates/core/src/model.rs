//! Crisp and fuzzy annual-profit functions for the imperfect-quality EOQ
//! model with reparative batches and order overlapping.
//!
//! Each received lot of size `q` is fully screened at rate `x`. Screening
//! splits defects into scrap (fraction `r_s`, sold at salvage) and reworkable
//! items (fraction `r_w`, held until the supplier replaces them with the next
//! shipment). The supplier compensates the extra holding through a purchase
//! discount, which shows up here as the derived rate `E(r_w)·q / D`. Order
//! overlapping serves demand during screening from the previous lot, so the
//! model is shortage-free whenever the screening rate satisfies
//! `x >= D / (1 - E(r_s) - E(r_w))`.
//!
//! Demand is a triangular fuzzy number; the annual profit then becomes a
//! fuzzy triple that is defuzzified by graded mean integration. A degenerate
//! demand triple reproduces the crisp model exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::Tfn;

/// All model inputs: costs, rates, defect expectations, and fuzzy demand.
///
/// The defect expectations `E(r_s)`, `E(r_w)`, and `E[(1-r_s)^2]` are direct
/// inputs rather than being derived from distributions; the simulation module
/// owns distributional assumptions. `E[(1-r_s)^2]` is deliberately
/// independent of `(1 - E(r_s))^2` so the second moment of the scrap fraction
/// can be supplied exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Annual demand as a triangular fuzzy number (units/year).
    pub demand: Tfn,
    /// Screening rate `x` (units/year).
    pub screening_rate: f64,
    /// Ordering cost `A` ($/cycle).
    pub ordering_cost: f64,
    /// Selling price `s` ($/unit).
    pub selling_price: f64,
    /// Salvage value `w` for scrap ($/unit).
    pub salvage_value: f64,
    /// Unit inspection cost `d` ($/unit).
    pub inspection_cost: f64,
    /// Purchase cost `c` ($/unit).
    pub purchase_cost: f64,
    /// Holding rate `h_w` for perfect or reworkable items ($/unit/year).
    pub holding_rework: f64,
    /// Holding rate `h_s` for scrap ($/unit/year).
    pub holding_scrap: f64,
    /// Expected scrap fraction `E(r_s)`.
    pub e_scrap: f64,
    /// Expected reworkable fraction `E(r_w)`.
    pub e_rework: f64,
    /// Second moment `E[(1-r_s)^2]` of the perfect-or-reworkable fraction.
    pub e_one_minus_scrap_sq: f64,
}

impl ModelParams {
    /// Checks the hard parameter invariants, naming the offending key.
    pub fn validate(&self) -> Result<()> {
        fn check(name: &'static str, ok: bool, message: impl FnOnce() -> String) -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    message: message(),
                })
            }
        }

        let finite = [
            ("x", self.screening_rate),
            ("A", self.ordering_cost),
            ("s", self.selling_price),
            ("w", self.salvage_value),
            ("d", self.inspection_cost),
            ("c", self.purchase_cost),
            ("h_w", self.holding_rework),
            ("h_s", self.holding_scrap),
            ("e_r_s", self.e_scrap),
            ("e_r_w", self.e_rework),
            ("e_one_minus_rs_sq", self.e_one_minus_scrap_sq),
        ];
        for (name, v) in finite {
            check(name, v.is_finite(), || format!("must be finite, got {v}"))?;
        }

        check("x", self.screening_rate > 0.0, || {
            format!(
                "screening rate must be positive, got {}",
                self.screening_rate
            )
        })?;
        check("A", self.ordering_cost >= 0.0, || {
            format!(
                "ordering cost must be nonnegative, got {}",
                self.ordering_cost
            )
        })?;
        check("s", self.selling_price > 0.0, || {
            format!("selling price must be positive, got {}", self.selling_price)
        })?;
        check("w", self.salvage_value >= 0.0, || {
            format!(
                "salvage value must be nonnegative, got {}",
                self.salvage_value
            )
        })?;
        check("d", self.inspection_cost >= 0.0, || {
            format!(
                "inspection cost must be nonnegative, got {}",
                self.inspection_cost
            )
        })?;
        check("c", self.purchase_cost > 0.0, || {
            format!("purchase cost must be positive, got {}", self.purchase_cost)
        })?;
        check("h_w", self.holding_rework > 0.0, || {
            format!("holding rate must be positive, got {}", self.holding_rework)
        })?;
        check("h_s", self.holding_scrap > 0.0, || {
            format!("holding rate must be positive, got {}", self.holding_scrap)
        })?;
        check("h_w", self.holding_rework > self.holding_scrap, || {
            format!(
                "perfect/reworkable holding rate h_w = {} must exceed scrap rate h_s = {}",
                self.holding_rework, self.holding_scrap
            )
        })?;
        check("e_r_s", (0.0..1.0).contains(&self.e_scrap), || {
            format!(
                "expected scrap fraction must lie in [0, 1), got {}",
                self.e_scrap
            )
        })?;
        check("e_r_w", (0.0..1.0).contains(&self.e_rework), || {
            format!(
                "expected rework fraction must lie in [0, 1), got {}",
                self.e_rework
            )
        })?;
        check("e_r_s", self.e_scrap + self.e_rework < 1.0, || {
            format!(
                "defect fractions must satisfy E(r_s) + E(r_w) < 1, got {} + {}",
                self.e_scrap, self.e_rework
            )
        })?;
        check(
            "e_one_minus_rs_sq",
            self.e_one_minus_scrap_sq > 0.0 && self.e_one_minus_scrap_sq <= 1.0,
            || {
                format!(
                    "E[(1-r_s)^2] must lie in (0, 1], got {}",
                    self.e_one_minus_scrap_sq
                )
            },
        )?;
        check("demand", self.demand.low() >= 0.0, || {
            format!(
                "demand support must be nonnegative, got left point {}",
                self.demand.low()
            )
        })?;
        check("demand", self.demand.gmir() > 0.0, || {
            "defuzzified demand must be positive".to_string()
        })?;
        Ok(())
    }

    /// Soft diagnostics that do not block evaluation.
    ///
    /// The Jensen bound `E[(1-r_s)^2] >= (1 - E(r_s))^2` holds for any real
    /// scrap distribution, but one-at-a-time sweeps of `E(r_s)` hold the
    /// second moment fixed and can step outside it; that is reported here
    /// instead of rejecting the parameter set.
    pub fn warnings(&self) -> Vec<String> {
        let mut notes = Vec::new();
        let jensen_floor = (1.0 - self.e_scrap) * (1.0 - self.e_scrap);
        if self.e_one_minus_scrap_sq < jensen_floor {
            notes.push(format!(
                "E[(1-r_s)^2] = {} is below the Jensen bound (1 - E(r_s))^2 = {jensen_floor}; \
                 no scrap distribution has these moments",
                self.e_one_minus_scrap_sq
            ));
        }
        notes
    }

    /// Defuzzified (graded-mean) demand.
    pub fn crisp_demand(&self) -> f64 {
        self.demand.gmir()
    }

    /// Per-unit-lot rate recovered through the supplier's rework discount,
    /// `c·E(r_w) / (1 - E(r_s))`.
    pub fn rework_discount_rate(&self) -> f64 {
        self.purchase_cost * self.e_rework / (1.0 - self.e_scrap)
    }

    /// Screening-rate feasibility of the shortage-free overlapping scheme,
    /// reported at the defuzzified demand and, conservatively, at the upper
    /// support point of the demand triple.
    pub fn check_feasibility(&self) -> FeasibilityReport {
        let slack = 1.0 - self.e_scrap - self.e_rework;
        let required_at_defuzzified = self.crisp_demand() / slack;
        let required_at_upper_support = self.demand.high() / slack;
        FeasibilityReport {
            screening_rate: self.screening_rate,
            required_at_defuzzified,
            required_at_upper_support,
            feasible_at_defuzzified: self.screening_rate >= required_at_defuzzified,
            feasible_at_upper_support: self.screening_rate >= required_at_upper_support,
        }
    }

    /// Screening-period and holding-cost geometry of one cycle at a crisp
    /// demand value.
    pub fn cycle_geometry(&self, q: f64, demand_value: f64) -> Result<CycleGeometry> {
        require_positive("lot size q", q)?;
        require_positive("demand value", demand_value)?;
        let x = self.screening_rate;
        let e_s = self.e_scrap;
        let screening_time = q / x;
        let cycle_length = (1.0 - e_s) * q / demand_value;
        // Total held inventory over the cycle: the screening-period wedge for
        // scrap, the full-lot band during screening, and the post-screening
        // triangle. The squared perfect fraction enters through its second
        // moment so expectation substitution stays exact.
        let total_inventory = q * q * e_s / (2.0 * x)
            + q * q * (1.0 - e_s) / x
            + q * q * self.e_one_minus_scrap_sq / (2.0 * demand_value);
        let holding_scrap_cost = self.holding_scrap * q * q * e_s / (2.0 * x);
        let holding_rework_cost = self.holding_rework * total_inventory;
        Ok(CycleGeometry {
            screening_time,
            cycle_length,
            total_inventory,
            holding_scrap_cost,
            holding_rework_cost,
        })
    }

    /// Per-cycle revenue, cost decomposition, and profit at a crisp demand
    /// value, with defect fractions replaced by their expectations.
    pub fn cost_breakdown(&self, q: f64, demand_value: f64) -> Result<CostBreakdown> {
        require_positive("lot size q", q)?;
        require_positive("demand value", demand_value)?;
        let geometry = self.cycle_geometry(q, demand_value)?;
        let e_s = self.e_scrap;
        let implied_discount_rate = self.e_rework * q / demand_value;

        let ordering = self.ordering_cost;
        let screening = self.inspection_cost * q;
        let purchasing = self.purchase_cost * q * (1.0 - implied_discount_rate);
        let holding = geometry.holding_scrap_cost + geometry.holding_rework_cost;
        let total = ordering + screening + purchasing + holding;
        let revenue = self.selling_price * q * (1.0 - e_s) + self.salvage_value * q * e_s;
        Ok(CostBreakdown {
            ordering,
            screening,
            purchasing,
            holding,
            total,
            revenue,
            profit: revenue - total,
            implied_discount_rate,
            discount_out_of_range: implied_discount_rate >= 1.0,
        })
    }

    /// The three coefficients of the annual profit rate at lot size `q`:
    /// `rate(D) = D·(margin - demand_holding) + rework_discount_rate·q -
    /// lot_holding·q`.
    pub fn profit_terms(&self, q: f64) -> Result<ProfitTerms> {
        require_positive("lot size q", q)?;
        let e_s = self.e_scrap;
        let one_minus = 1.0 - e_s;
        let margin = (self.selling_price * one_minus + self.salvage_value * e_s
            - self.purchase_cost
            - self.inspection_cost
            - self.ordering_cost / q)
            / one_minus;
        let demand_holding = q
            * (2.0 * self.holding_rework - self.holding_rework * e_s + self.holding_scrap * e_s)
            / (2.0 * self.screening_rate * one_minus);
        let lot_holding = self.holding_rework * self.e_one_minus_scrap_sq / (2.0 * one_minus);
        Ok(ProfitTerms {
            margin,
            demand_holding,
            lot_holding,
        })
    }

    /// Annual profit per unit time at a crisp demand value: the per-cycle
    /// profit divided by the cycle length (renewal-reward), in closed form.
    pub fn profit_rate(&self, q: f64, demand_value: f64) -> Result<f64> {
        require_positive("demand value", demand_value)?;
        let t = self.profit_terms(q)?;
        Ok(
            demand_value * (t.margin - t.demand_holding) + self.rework_discount_rate() * q
                - t.lot_holding * q,
        )
    }

    /// The fuzzy annual profit as a triple, one component per demand support
    /// point. Fails when the margin falls below the demand-holding slope,
    /// which would invert the ordering of the components.
    pub fn profit_triple(&self, q: f64) -> Result<ProfitTriple> {
        let t = self.profit_terms(q)?;
        if t.margin < t.demand_holding {
            return Err(Error::ProfitTripleInverted {
                margin: t.margin,
                demand_holding: t.demand_holding,
            });
        }
        let gain = t.margin - t.demand_holding;
        let offset = self.rework_discount_rate() * q - t.lot_holding * q;
        Ok(ProfitTriple {
            low: self.demand.low() * gain + offset,
            peak: self.demand.peak() * gain + offset,
            high: self.demand.high() * gain + offset,
        })
    }

    /// Graded-mean defuzzified annual profit at lot size `q`.
    ///
    /// Computed directly from the closed form, which coincides with
    /// `profit_rate` at the defuzzified demand and with the GMIR of
    /// `profit_triple` whenever the triple is orderable; the closed form
    /// itself never needs the ordering.
    pub fn defuzzified_profit(&self, q: f64) -> Result<f64> {
        self.profit_rate(q, self.crisp_demand())
    }
}

fn require_positive(what: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositive { what, value })
    }
}

/// Outcome of the shortage-free screening-rate check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub screening_rate: f64,
    /// Minimum screening rate at the defuzzified demand.
    pub required_at_defuzzified: f64,
    /// Minimum screening rate at the upper support point of demand.
    pub required_at_upper_support: f64,
    pub feasible_at_defuzzified: bool,
    pub feasible_at_upper_support: bool,
}

/// Screening length, cycle length, and per-cycle holding geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleGeometry {
    /// Screening period `t1 = q / x` (years).
    pub screening_time: f64,
    /// Cycle length `T = (1 - E(r_s))·q / D` (years).
    pub cycle_length: f64,
    /// Held inventory over the cycle (unit-years).
    pub total_inventory: f64,
    /// Scrap holding cost per cycle ($).
    pub holding_scrap_cost: f64,
    /// Perfect-or-reworkable holding cost per cycle ($).
    pub holding_rework_cost: f64,
}

/// Per-cycle revenue and cost decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostBreakdown {
    pub ordering: f64,
    pub screening: f64,
    pub purchasing: f64,
    pub holding: f64,
    /// Sum of the four cost components.
    pub total: f64,
    pub revenue: f64,
    /// `revenue - total`.
    pub profit: f64,
    /// The purchase discount implied by the rework compensation,
    /// `E(r_w)·q / D`.
    pub implied_discount_rate: f64,
    /// Set when the implied discount reaches 100%, signalling an
    /// out-of-model regime.
    pub discount_out_of_range: bool,
}

/// Coefficients of the annual profit rate `D·(margin - demand_holding) +
/// (rework discount - lot_holding)·q`.
///
/// `margin` is the net gain per unit of demand (selling and salvage income
/// net of purchase, inspection, and amortized ordering cost, inflated by the
/// scrap loss). `demand_holding` is the screening-period holding drag per
/// unit of demand; it grows linearly in `q`. `lot_holding` is the
/// post-screening holding drag per unit of lot size; it is independent of
/// `q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfitTerms {
    pub margin: f64,
    pub demand_holding: f64,
    pub lot_holding: f64,
}

/// The fuzzy annual profit `(low, peak, high)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfitTriple {
    pub low: f64,
    pub peak: f64,
    pub high: f64,
}

impl ProfitTriple {
    /// Graded mean integration of the triple.
    pub fn gmir(&self) -> f64 {
        (self.low + 4.0 * self.peak + self.high) / 6.0
    }

    /// The triple as a validated fuzzy number.
    pub fn as_tfn(&self) -> Result<Tfn> {
        Tfn::new(self.low, self.peak, self.high)
    }
}

#[cfg(test)]
pub(crate) fn base_params() -> ModelParams {
    ModelParams {
        demand: Tfn::crisp(50_000.0),
        screening_rate: 175_200.0,
        ordering_cost: 100.0,
        selling_price: 50.0,
        salvage_value: 20.0,
        inspection_cost: 0.5,
        purchase_cost: 25.0,
        holding_rework: 5.0,
        holding_scrap: 2.0,
        e_scrap: 0.02,
        e_rework: 0.05,
        e_one_minus_scrap_sq: 0.9605,
    }
}
