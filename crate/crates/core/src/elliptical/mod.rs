//! Elliptically contoured distributions: density generators, samplers and the
//! Student-t functions used to build deterministic equivalents.

mod generator;
mod sampling;
mod student_t;

pub use generator::{registry_get, shipped_generators, DensityGenerator};
pub use sampling::{
    sample_elliptical, sample_elliptical_with, sample_matrix_elliptical, unit_sphere,
};
pub use student_t::{incomplete_beta, t_cdf, t_quantile, t_statistic, TStudent};
