//! Solver for [`DeterministicProgram`]s.
//!
//! Programs without cone terms go to a tableau simplex; anything else to a log-barrier
//! interior point method. Either way the returned point is re-checked with
//! [`check_kkt`] and only reported optimal when both residuals are within tolerance.

mod barrier;
mod canon;
mod kkt;
mod nnls;
mod simplex;

pub use kkt::{check_kkt, KktReport, ACTIVE_TOL};
pub use nnls::nnls;
pub use simplex::{simplex, LinearProgram, LpOutcome, LpStatus};

use crate::error::SolverError;
use crate::model::{DeterministicProgram, Sense, Solution, SolveMethod, SolveStatus};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub feasibility_tol: f64,
    pub kkt_tol: f64,
    pub max_iterations: usize,
    pub cone_smoothing_eps: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            feasibility_tol: 1e-8,
            kkt_tol: 1e-6,
            max_iterations: 10_000,
            cone_smoothing_eps: 1e-9,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<(), SolverError> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(SolverError::Options(format!("{name} must be positive, got {v}")))
            }
        };
        positive("feasibility_tol", self.feasibility_tol)?;
        positive("kkt_tol", self.kkt_tol)?;
        positive("cone_smoothing_eps", self.cone_smoothing_eps)?;
        if self.max_iterations == 0 {
            return Err(SolverError::Options("max_iterations must be positive".into()));
        }
        Ok(())
    }
}

/// Cone terms must keep the minimization form convex: a nonnegative objective scale
/// when minimizing, nonpositive when maximizing, nonnegative in every constraint.
pub fn check_convexity(program: &DeterministicProgram) -> Result<(), SolverError> {
    if let Some(c) = &program.cone_objective {
        let ok = match program.sense {
            Sense::Minimize => c.scale >= 0.0,
            Sense::Maximize => c.scale <= 0.0,
        };
        if !ok {
            return Err(SolverError::NonConvex(format!(
                "objective norm term has scale {} under {}",
                c.scale, program.sense
            )));
        }
    }
    for (i, con) in program.constraints.iter().enumerate() {
        if let Some(c) = &con.cone {
            if c.scale < 0.0 {
                return Err(SolverError::NonConvex(format!(
                    "constraint {} has negative norm scale {}",
                    i + 1,
                    c.scale
                )));
            }
        }
    }
    Ok(())
}

/// The linear part of a program as an LP `A x <= b`.
pub fn as_linear_program(program: &DeterministicProgram) -> LinearProgram {
    LinearProgram {
        sense: program.sense,
        c: program.linear_objective.clone(),
        a: program.constraints.iter().map(|c| c.linear.clone()).collect(),
        b: program.constraints.iter().map(|c| -c.offset).collect(),
    }
}

pub fn solve(program: &DeterministicProgram, options: &SolverOptions) -> Result<Solution, SolverError> {
    options.validate()?;
    program.check_dimensions()?;
    check_convexity(program)?;
    let n = program.n_vars();

    let (x, status, method, iterations) = if program.is_linear() {
        let out = simplex(&as_linear_program(program), options.max_iterations, options.feasibility_tol);
        let status = match out.status {
            LpStatus::Optimal => SolveStatus::Optimal,
            LpStatus::Infeasible => SolveStatus::Infeasible,
            LpStatus::Unbounded => SolveStatus::Unbounded,
            LpStatus::IterationLimit => SolveStatus::MaxIterations,
        };
        (out.x, status, SolveMethod::Simplex, out.iterations)
    } else {
        let out = barrier::barrier(&canon::Canon::new(program), options);
        (out.x.iter().copied().collect(), out.status, SolveMethod::Barrier, out.iterations)
    };

    if status != SolveStatus::Optimal {
        let x = if status == SolveStatus::Infeasible { vec![0.0; n] } else { x };
        return Ok(Solution {
            objective: f64::NAN,
            plain_objective: f64::NAN,
            max_constraint_violation: program.max_violation(&x),
            kkt_residual: f64::NAN,
            x,
            status,
            method,
            iterations,
        });
    }

    let report = check_kkt(program, &x);
    let status = if report.feasibility <= options.feasibility_tol && report.stationarity <= options.kkt_tol {
        SolveStatus::Optimal
    } else {
        SolveStatus::NumericalFailure
    };
    Ok(Solution {
        objective: program.objective_value(&x),
        plain_objective: program.reference_value(&x),
        max_constraint_violation: report.feasibility,
        kkt_residual: report.stationarity,
        x,
        status,
        method,
        iterations,
    })
}
