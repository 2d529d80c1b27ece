//! Monte Carlo checks: distribution invariance of the studentized mean, and empirical
//! coverage of solved chance constraints.

mod coverage;
mod invariance;
mod ks;

pub use coverage::{coverage_test, ConstraintCoverage, CoverageReport};
pub use invariance::{
    invariance_test, invariance_test_with, InvarianceResult, SampleScheme, Statistic, KS_LEVEL,
};
pub use ks::{
    kolmogorov_q, ks_critical_value, ks_p_value, ks_statistic, wilson_interval, Z_95,
};
