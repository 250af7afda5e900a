//! Economic order quantity for lots with imperfect quality under fuzzy
//! demand.
//!
//! Implements an EOQ profit model in which every received lot is screened,
//! defects split into scrap and reworkable items, the supplier replaces
//! reworkable items with the next (reparative) shipment and compensates the
//! extra holding through a purchase discount, and order overlapping keeps
//! the system shortage-free during screening. Annual demand may be a
//! triangular fuzzy number; the profit objective is defuzzified by graded
//! mean integration.
//!
//! The crate is organized around:
//!
//! - [`fuzzy`]: triangular fuzzy numbers and their arithmetic;
//! - [`model`]: cycle geometry, cost decomposition, and profit rates;
//! - [`optimizer`]: the closed-form optimal lot size plus a brute-force
//!   grid oracle and concavity checks;
//! - [`sensitivity`]: one-way sweeps and tornado-diagram data;
//! - [`simulation`]: a seeded Monte Carlo renewal-reward validator.

pub mod error;
pub mod fuzzy;
pub mod model;
pub mod optimizer;
pub mod sensitivity;
pub mod simulation;

pub use error::{Error, Result};
pub use fuzzy::Tfn;
pub use model::{
    CostBreakdown, CycleGeometry, FeasibilityReport, ModelParams, ProfitTerms, ProfitTriple,
};
pub use optimizer::{
    concavity_check, grid_search_oracle, optimal_q, optimal_q_classic, Curvature, GridBest,
    PolicyResult, FD_RELATIVE_STEP,
};
pub use sensitivity::{
    one_way_sweep, tornado, SweepParameter, SweepRow, TornadoBar, TornadoMetric, TornadoRange,
    TornadoReport,
};
pub use simulation::{
    simulate, verify_moments, DistributionSpec, MomentReport, SimulationConfig, SimulationResult,
};
