//! Path-dependent risk analytics for return series.
//!
//! The crate measures both dimensions of drawdown risk: the spatial one
//! (drawdown magnitude, maximum drawdown, Conditional Expected Drawdown) and
//! the temporal one (peak time, underwater duration, maximum duration,
//! duration deviation/quantile/tail-mean, liquidation stopping times). Paths
//! are cumulative log returns over integer periods; rolling windows follow
//! the overlapping one-period scheme; and a seeded AR(1) harness reproduces
//! the serial-correlation experiments relating those measures to the
//! autoregressive parameter.
//!
//! Modules:
//! - [`series`]: return ingestion, cumulative paths, rolling windows.
//! - [`pathmetrics`]: per-path drawdown/duration algorithms.
//! - [`riskfunc`]: empirical quantile, tail mean, deviation, skewness,
//!   volatility, Expected Shortfall, Pearson correlation.
//! - [`temporal`]: temporal transformations, their axiom checks, and the
//!   composed risk measures (CED, duration statistics, risk reports).
//! - [`montecarlo`]: seeded AR(1) simulation, fitting, kappa sweep, and the
//!   regime-switching correlation experiment.

pub mod error;
pub mod montecarlo;
pub mod pathmetrics;
pub mod riskfunc;
pub mod series;
pub mod temporal;

pub use error::{Error, Result};
