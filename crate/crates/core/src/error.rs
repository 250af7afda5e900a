use thiserror::Error;

/// Errors produced by model construction and evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A fuzzy triple violated `low <= peak <= high`.
    #[error("invalid triangular fuzzy number ({low}, {peak}, {high}): {violated}")]
    FuzzyOrdering {
        low: f64,
        peak: f64,
        high: f64,
        violated: &'static str,
    },

    /// Fuzzy multiplication/division requires strictly positive operands.
    #[error("fuzzy {op} requires strictly positive operands (left support {low})")]
    FuzzyNonPositive { op: &'static str, low: f64 },

    /// Componentwise division produced a triple that is not a valid TFN.
    #[error("fuzzy division produced a non-TFN result ({low}, {peak}, {high})")]
    NonTfnResult { low: f64, peak: f64, high: f64 },

    /// A model parameter failed validation; `name` is the offending key.
    #[error("invalid parameter `{name}`: {message}")]
    InvalidParameter { name: &'static str, message: String },

    /// A quantity that must be strictly positive was not.
    #[error("{what} must be positive (got {value})")]
    NonPositive { what: &'static str, value: f64 },

    /// The fuzzy profit triple cannot be ordered because the per-unit margin
    /// falls below the demand-holding slope.
    #[error(
        "profit-triple ordering inverted: margin u = {margin} is below \
         demand-holding slope W = {demand_holding}"
    )]
    ProfitTripleInverted { margin: f64, demand_holding: f64 },

    /// The lot-size denominator is non-positive, so profit grows without
    /// bound in Q and no finite optimum exists.
    #[error(
        "objective unbounded above in Q: lot-size denominator {denominator} \
         is not positive (rework discount dominates holding)"
    )]
    UnboundedObjective { denominator: f64 },

    /// The requested search grid contains no points.
    #[error("empty search grid: q_min = {q_min}, q_max = {q_max}, step = {step}")]
    EmptyGrid { q_min: f64, q_max: f64, step: f64 },

    /// A sweep or tornado request named a parameter the model does not have.
    #[error("unknown sweep parameter `{name}`")]
    UnknownParameter { name: String },

    /// A defect-fraction distribution is outside its admissible domain.
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
}

pub type Result<T> = std::result::Result<T, Error>;
