//! Chance-constrained linear programs whose random data follow an elliptically
//! contoured law.
//!
//! Samples of the random cost vector, constraint rows or capacities are reduced to
//! means and covariances ([`estimators`]); [`transform`] turns each probabilistic
//! constraint into a deterministic linear or second-order cone constraint using
//! Student-t quantiles; [`solver`] solves the result and checks its KKT conditions;
//! [`validate`] checks coverage by simulation.
//!
//! ```
//! use elliptic_ccp::fixtures::{example_spec, shipped_samples};
//! use elliptic_ccp::solver::{solve, SolverOptions};
//! use elliptic_ccp::transform::{build, estimate_all};
//!
//! let spec = example_spec("example2").unwrap();
//! let samples = shipped_samples().unwrap();
//! let estimates = estimate_all(&spec, &samples, None).unwrap();
//! let program = build(&spec, &estimates).unwrap();
//! let solution = solve(&program, &SolverOptions::default()).unwrap();
//! assert!((solution.plain_objective - 10904.807).abs() < 1e-2);
//! ```

pub mod cli;
pub mod elliptical;
pub mod error;
pub mod estimators;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod model;
pub mod rng;
pub mod solver;
pub mod transform;
pub mod validate;
