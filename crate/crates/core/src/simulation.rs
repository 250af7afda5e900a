//! Monte Carlo renewal-reward validation of the analytic profit rate.
//!
//! Each cycle draws realized scrap and rework fractions, prices one
//! inventory cycle with them, and accumulates profit and elapsed time. The
//! long-run profit per unit time is estimated as total profit over total
//! time, which is what the renewal reward theorem prescribes. A shortage
//! audit flags any cycle whose realized defect fractions break the
//! order-overlapping guarantee `x·(1 - r_s - r_w) >= D`.
//!
//! Draws for cycle `i` come from a ChaCha stream derived deterministically
//! from `(seed, i)`, so results are bit-reproducible and independent of how
//! cycles might be partitioned across workers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelParams;

/// Normal quantile for the 95% two-sided confidence interval.
const Z_95: f64 = 1.96;

/// Sampling specification for a defect fraction on `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DistributionSpec {
    /// Degenerate distribution at `value`.
    Point { value: f64 },
    /// Uniform on `[low, high)`.
    Uniform { low: f64, high: f64 },
    /// `scale · Beta(alpha, beta)`, supported on `[0, scale]`.
    Beta { alpha: f64, beta: f64, scale: f64 },
}

impl DistributionSpec {
    /// The default used when no distribution is specified: uniform on
    /// `[0, 2·mean)`, which has the given mean. A zero mean degenerates to a
    /// point mass at zero.
    pub fn default_for_mean(mean: f64) -> Self {
        if mean == 0.0 {
            DistributionSpec::Point { value: 0.0 }
        } else {
            DistributionSpec::Uniform {
                low: 0.0,
                high: 2.0 * mean,
            }
        }
    }

    pub fn validate(&self, role: &str) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDistribution(format!("{role}: {msg}")));
        match *self {
            DistributionSpec::Point { value } => {
                if !(0.0..1.0).contains(&value) {
                    return bad(format!("point mass {value} outside [0, 1)"));
                }
            }
            DistributionSpec::Uniform { low, high } => {
                if !(low.is_finite() && high.is_finite()) || low < 0.0 || high >= 1.0 || low >= high
                {
                    return bad(format!("uniform support [{low}, {high}) not inside [0, 1)"));
                }
            }
            DistributionSpec::Beta { alpha, beta, scale } => {
                if alpha <= 0.0 || beta <= 0.0 {
                    return bad(format!(
                        "beta shape parameters must be positive, got ({alpha}, {beta})"
                    ));
                }
                if !(0.0..1.0).contains(&scale) || scale == 0.0 {
                    return bad(format!("beta scale {scale} outside (0, 1)"));
                }
            }
        }
        Ok(())
    }

    /// Analytic mean of the fraction.
    pub fn mean(&self) -> f64 {
        match *self {
            DistributionSpec::Point { value } => value,
            DistributionSpec::Uniform { low, high } => (low + high) / 2.0,
            DistributionSpec::Beta { alpha, beta, scale } => scale * alpha / (alpha + beta),
        }
    }

    /// Analytic second moment `E[r^2]`.
    fn square_moment(&self) -> f64 {
        match *self {
            DistributionSpec::Point { value } => value * value,
            DistributionSpec::Uniform { low, high } => (low * low + low * high + high * high) / 3.0,
            DistributionSpec::Beta { alpha, beta, scale } => {
                scale * scale * alpha * (alpha + 1.0) / ((alpha + beta) * (alpha + beta + 1.0))
            }
        }
    }

    /// Analytic `E[(1 - r)^2] = 1 - 2·E[r] + E[r^2]`.
    pub fn complement_square_moment(&self) -> f64 {
        1.0 - 2.0 * self.mean() + self.square_moment()
    }

    /// Smallest value the distribution can produce.
    fn min_support(&self) -> f64 {
        match *self {
            DistributionSpec::Point { value } => value,
            DistributionSpec::Uniform { low, .. } => low,
            DistributionSpec::Beta { .. } => 0.0,
        }
    }
}

/// Prepared sampler for one defect fraction.
enum Sampler {
    Point(f64),
    Uniform { low: f64, span: f64 },
    Beta { dist: Beta<f64>, scale: f64 },
}

impl Sampler {
    fn new(spec: &DistributionSpec) -> Result<Self> {
        Ok(match *spec {
            DistributionSpec::Point { value } => Sampler::Point(value),
            DistributionSpec::Uniform { low, high } => Sampler::Uniform {
                low,
                span: high - low,
            },
            DistributionSpec::Beta { alpha, beta, scale } => Sampler::Beta {
                dist: Beta::new(alpha, beta).map_err(|e| {
                    Error::InvalidDistribution(format!("beta({alpha}, {beta}): {e}"))
                })?,
                scale,
            },
        })
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            Sampler::Point(value) => *value,
            Sampler::Uniform { low, span } => low + span * rng.random::<f64>(),
            Sampler::Beta { dist, scale } => scale * dist.sample(rng),
        }
    }
}

/// Inputs of one simulation run. Demand is used at its defuzzified value;
/// fuzziness lives in the analytic pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub params: ModelParams,
    /// Lot size to simulate.
    pub q: f64,
    /// Distribution of the scrap fraction `r_s`.
    pub scrap_dist: DistributionSpec,
    /// Distribution of the reworkable fraction `r_w`.
    pub rework_dist: DistributionSpec,
    pub n_cycles: u64,
    pub seed: u64,
}

impl SimulationConfig {
    /// A configuration with the default `uniform(0, 2·mean)` distributions
    /// derived from the parameter expectations.
    pub fn with_default_distributions(
        params: ModelParams,
        q: f64,
        n_cycles: u64,
        seed: u64,
    ) -> Self {
        let scrap_dist = DistributionSpec::default_for_mean(params.e_scrap);
        let rework_dist = DistributionSpec::default_for_mean(params.e_rework);
        Self {
            params,
            q,
            scrap_dist,
            rework_dist,
            n_cycles,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if !(self.q > 0.0 && self.q.is_finite()) {
            return Err(Error::NonPositive {
                what: "lot size q",
                value: self.q,
            });
        }
        if self.n_cycles == 0 {
            return Err(Error::NonPositive {
                what: "cycle count",
                value: 0.0,
            });
        }
        self.scrap_dist.validate("scrap distribution")?;
        self.rework_dist.validate("rework distribution")?;
        // Rejection sampling handles tail overlap, but if even the smallest
        // possible draws sum to 1 no valid draw exists at all.
        if self.scrap_dist.min_support() + self.rework_dist.min_support() >= 1.0 {
            return Err(Error::InvalidDistribution(
                "r_s + r_w >= 1 for every possible draw".to_string(),
            ));
        }
        Ok(())
    }
}

/// Renewal-reward estimate of the long-run profit per unit time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationResult {
    /// Total profit over total elapsed time.
    pub mean_profit_rate: f64,
    /// 95% normal-approximation half-width of the ratio estimator.
    pub ci_halfwidth: f64,
    /// Cycles whose realized draws violated the shortage-free condition.
    pub shortages_detected: u64,
    pub cycles_run: u64,
    /// Draws rejected and redrawn because `r_s + r_w >= 1`.
    pub rejected_draws: u64,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent per-cycle stream derived from the master seed and the cycle
/// index. Draws depend only on `(seed, index)`, never on preceding cycles.
fn cycle_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut state = seed ^ index.wrapping_mul(0xA076_1D64_78BD_642F);
    let mut bytes = [0u8; 32];
    for chunk in bytes.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(bytes)
}

/// Runs the cycle-level simulation and returns the renewal-reward estimate.
pub fn simulate(config: &SimulationConfig) -> Result<SimulationResult> {
    config.validate()?;
    let p = &config.params;
    let q = config.q;
    let demand = p.crisp_demand();
    let x = p.screening_rate;
    let scrap = Sampler::new(&config.scrap_dist)?;
    let rework = Sampler::new(&config.rework_dist)?;

    let mut shortages = 0u64;
    let mut rejected = 0u64;

    // Welford accumulators for per-cycle profit and cycle length plus their
    // co-moment; needed for the delta-method CI of the ratio estimator.
    let mut n = 0.0f64;
    let mut sum_profit = 0.0;
    let mut sum_length = 0.0;
    let mut mean_profit = 0.0;
    let mut mean_length = 0.0;
    let mut m2_profit = 0.0;
    let mut m2_length = 0.0;
    let mut co_moment = 0.0;

    for index in 0..config.n_cycles {
        let mut rng = cycle_rng(config.seed, index);
        let (r_s, r_w) = loop {
            let r_s = scrap.sample(&mut rng);
            let r_w = rework.sample(&mut rng);
            if r_s + r_w < 1.0 {
                break (r_s, r_w);
            }
            rejected += 1;
        };

        if x * (1.0 - r_s - r_w) < demand {
            shortages += 1;
        }

        let revenue = p.selling_price * q * (1.0 - r_s) + p.salvage_value * q * r_s;
        let cost = p.ordering_cost
            + p.inspection_cost * q
            + p.purchase_cost * q * (1.0 - r_w * q / demand)
            + (p.holding_scrap + p.holding_rework) * q * q * r_s / (2.0 * x)
            + p.holding_rework * q * q * (1.0 - r_s) / x
            + p.holding_rework * (q * (1.0 - r_s)).powi(2) / (2.0 * demand);
        let profit = revenue - cost;
        let length = (1.0 - r_s) * q / demand;

        sum_profit += profit;
        sum_length += length;

        n += 1.0;
        let d_profit = profit - mean_profit;
        mean_profit += d_profit / n;
        let d_length = length - mean_length;
        mean_length += d_length / n;
        m2_profit += d_profit * (profit - mean_profit);
        m2_length += d_length * (length - mean_length);
        co_moment += d_profit * (length - mean_length);
    }

    let rate = sum_profit / sum_length;
    // Delta method for the ratio of means: Var(rate) ~ Var(P - rate·T) /
    // (n·E[T]^2), estimated from the per-cycle moments.
    let var_profit = m2_profit / n;
    let var_length = m2_length / n;
    let cov = co_moment / n;
    let residual_var = (var_profit - 2.0 * rate * cov + rate * rate * var_length).max(0.0);
    let ci_halfwidth = Z_95 * (residual_var / n).sqrt() / mean_length;

    Ok(SimulationResult {
        mean_profit_rate: rate,
        ci_halfwidth,
        shortages_detected: shortages,
        cycles_run: config.n_cycles,
        rejected_draws: rejected,
    })
}

/// Analytic moments of the configured distributions and their deviation
/// from the expectation parameters they are supposed to realize.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub scrap_mean: f64,
    pub rework_mean: f64,
    /// `E[(1-r_s)^2]` of the scrap distribution.
    pub complement_sq: f64,
    pub scrap_mean_deviation: f64,
    pub rework_mean_deviation: f64,
    pub complement_sq_deviation: f64,
}

/// Compares distribution moments against the `ModelParams` expectations.
pub fn verify_moments(config: &SimulationConfig) -> MomentReport {
    let scrap_mean = config.scrap_dist.mean();
    let rework_mean = config.rework_dist.mean();
    let complement_sq = config.scrap_dist.complement_square_moment();
    MomentReport {
        scrap_mean,
        rework_mean,
        complement_sq,
        scrap_mean_deviation: (scrap_mean - config.params.e_scrap).abs(),
        rework_mean_deviation: (rework_mean - config.params.e_rework).abs(),
        complement_sq_deviation: (complement_sq - config.params.e_one_minus_scrap_sq).abs(),
    }
}
