//! Log-barrier interior point method for programs with cone terms.
//!
//! Cone terms are smoothed to `sqrt(||z||^2 + eps)`, which makes every function twice
//! differentiable; damped Newton steps center the barrier problem
//! `t f0(x) - sum ln(-f_i(x)) - sum ln x_j` for an increasing sequence of `t`. A phase
//! one problem `min s  s.t.  f_i(x) <= s` finds the strictly feasible start.

use nalgebra::{DMatrix, DVector};

use super::canon::Canon;
use super::SolverOptions;
use crate::model::SolveStatus;

const T_GROWTH: f64 = 10.0;
const RELATIVE_GAP: f64 = 1e-11;
const NEWTON_TOL: f64 = 1e-10;
const MAX_CENTERING_STEPS: usize = 100;
const DIVERGENCE: f64 = 1e14;

pub(crate) struct BarrierOutcome {
    pub x: DVector<f64>,
    pub status: SolveStatus,
    pub iterations: usize,
}

enum Stop {
    Budget,
    Diverged,
    Early,
}

struct Newton<'a> {
    iterations: usize,
    budget: usize,
    eps: f64,
    canon: &'a Canon,
}

fn solve_spd(h: &DMatrix<f64>, g: &DVector<f64>) -> Option<DVector<f64>> {
    let diag_max = h.diagonal().iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut shift = 0.0;
    for _ in 0..12 {
        let mut hh = h.clone();
        for i in 0..hh.nrows() {
            hh[(i, i)] += shift;
        }
        if let Some(ch) = hh.cholesky() {
            return Some(ch.solve(g));
        }
        shift = if shift == 0.0 { 1e-14 * diag_max } else { shift * 100.0 };
    }
    None
}

impl Newton<'_> {
    /// Damped Newton minimization of a self-concordant barrier function.
    ///
    /// `value` returns `None` outside the domain; `full` returns value, gradient and
    /// Hessian. `early` is polled after each step.
    fn center(
        &mut self,
        v: &mut DVector<f64>,
        value: &dyn Fn(&DVector<f64>) -> Option<f64>,
        full: &dyn Fn(&DVector<f64>) -> (f64, DVector<f64>, DMatrix<f64>),
        early: &dyn Fn(&DVector<f64>) -> bool,
    ) -> Result<(), Stop> {
        for _ in 0..MAX_CENTERING_STEPS {
            let (f, g, h) = full(v);
            let Some(dx) = solve_spd(&h, &(-&g)) else {
                return Ok(());
            };
            // squared Newton decrement; affine invariant, so one tolerance fits every t
            let dec = -g.dot(&dx);
            if !(dec > 2.0 * NEWTON_TOL) {
                return Ok(());
            }
            if self.budget == 0 {
                return Err(Stop::Budget);
            }
            let mut s = 1.0;
            let accepted = loop {
                let trial = &*v + &dx * s;
                if let Some(ft) = value(&trial) {
                    if ft <= f - 0.01 * s * dec {
                        break Some(trial);
                    }
                }
                s *= 0.5;
                if s < 1e-20 {
                    break None;
                }
            };
            let Some(next) = accepted else {
                // no representable decrease left
                return Ok(());
            };
            let moved = (&next - &*v).amax();
            *v = next;
            self.budget -= 1;
            self.iterations += 1;
            if v.amax() > DIVERGENCE {
                return Err(Stop::Diverged);
            }
            if early(v) {
                return Err(Stop::Early);
            }
            if moved <= 1e-15 * (1.0 + v.amax()) {
                return Ok(());
            }
        }
        Ok(())
    }

    fn phase_one(&mut self, x0: DVector<f64>) -> Result<DVector<f64>, SolveStatus> {
        let canon = self.canon;
        let eps = self.eps;
        let n = canon.n;
        let m = canon.constraints.len();
        let worst = |x: &DVector<f64>| {
            canon
                .constraints
                .iter()
                .map(|c| c.value(x, eps))
                .fold(f64::NEG_INFINITY, f64::max)
        };
        let s0 = worst(&x0);
        if s0 < 0.0 {
            return Ok(x0);
        }
        let mut v = DVector::zeros(n + 1);
        v.rows_mut(0, n).copy_from(&x0);
        v[n] = s0 + 1.0 + 0.1 * s0.abs();
        let mut t = 1.0;
        let strictly_feasible = |v: &DVector<f64>| worst(&v.rows(0, n).into_owned()) < 0.0;
        loop {
            let value = |v: &DVector<f64>| -> Option<f64> {
                let x = v.rows(0, n).into_owned();
                let s = v[n];
                if x.iter().any(|&xj| xj <= 0.0) {
                    return None;
                }
                let mut acc = t * s - x.iter().map(|xj| xj.ln()).sum::<f64>();
                for c in &canon.constraints {
                    let h = s - c.value(&x, eps);
                    if !(h > 0.0) {
                        return None;
                    }
                    acc -= h.ln();
                }
                Some(acc)
            };
            let full = |v: &DVector<f64>| {
                let x = v.rows(0, n).into_owned();
                let s = v[n];
                let mut g = DVector::zeros(n + 1);
                let mut h = DMatrix::zeros(n + 1, n + 1);
                g[n] = t;
                let mut f = t * s;
                for j in 0..n {
                    f -= x[j].ln();
                    g[j] -= 1.0 / x[j];
                    h[(j, j)] += 1.0 / (x[j] * x[j]);
                }
                for c in &canon.constraints {
                    let (fi, gi, hi) = c.eval(&x, eps);
                    let slack = s - fi;
                    f -= slack.ln();
                    // d(slack)/dv = (-gi, 1)
                    let mut d = DVector::zeros(n + 1);
                    d.rows_mut(0, n).copy_from(&(-&gi));
                    d[n] = 1.0;
                    g -= &d / slack;
                    h += &d * d.transpose() / (slack * slack);
                    if let Some(hi) = hi {
                        let mut block = h.view_mut((0, 0), (n, n));
                        block += hi / slack;
                    }
                }
                (f, g, h)
            };
            match self.center(&mut v, &value, &full, &strictly_feasible) {
                Err(Stop::Early) => return Ok(v.rows(0, n).into_owned()),
                Err(Stop::Budget) => return Err(SolveStatus::MaxIterations),
                Err(Stop::Diverged) => return Err(SolveStatus::NumericalFailure),
                Ok(()) => {}
            }
            if strictly_feasible(&v) {
                return Ok(v.rows(0, n).into_owned());
            }
            let gap = (m + n) as f64 / t;
            if gap <= RELATIVE_GAP * v[n].abs().max(1.0) {
                return Err(SolveStatus::Infeasible);
            }
            t *= T_GROWTH;
        }
    }

    fn phase_two(&mut self, x0: DVector<f64>) -> (DVector<f64>, SolveStatus) {
        let canon = self.canon;
        let eps = self.eps;
        let n = canon.n;
        let m = canon.constraints.len();
        let mut x = x0;
        let f0 = canon.objective.value(&x, eps);
        let mut t = ((m + n) as f64 / f0.abs().max(1.0)).max(1e-6);
        loop {
            let value = |x: &DVector<f64>| -> Option<f64> {
                if x.iter().any(|&xj| xj <= 0.0) {
                    return None;
                }
                let mut acc = t * canon.objective.value(x, eps) - x.iter().map(|xj| xj.ln()).sum::<f64>();
                for c in &canon.constraints {
                    let fi = c.value(x, eps);
                    if !(fi < 0.0) {
                        return None;
                    }
                    acc -= (-fi).ln();
                }
                Some(acc)
            };
            let full = |x: &DVector<f64>| {
                let (f0, g0, h0) = canon.objective.eval(x, eps);
                let mut f = t * f0;
                let mut g = g0 * t;
                let mut h = h0.map_or_else(|| DMatrix::zeros(n, n), |h| h * t);
                for j in 0..n {
                    f -= x[j].ln();
                    g[j] -= 1.0 / x[j];
                    h[(j, j)] += 1.0 / (x[j] * x[j]);
                }
                for c in &canon.constraints {
                    let (fi, gi, hi) = c.eval(x, eps);
                    let slack = -fi;
                    f -= slack.ln();
                    g += &gi / slack;
                    h += &gi * gi.transpose() / (slack * slack);
                    if let Some(hi) = hi {
                        h += hi / slack;
                    }
                }
                (f, g, h)
            };
            match self.center(&mut x, &value, &full, &|_| false) {
                Err(Stop::Budget) => return (x, SolveStatus::MaxIterations),
                Err(Stop::Diverged) => return (x, SolveStatus::Unbounded),
                Err(Stop::Early) | Ok(()) => {}
            }
            let gap = (m + n) as f64 / t;
            if gap <= RELATIVE_GAP * canon.objective.value(&x, eps).abs().max(1.0) {
                return (x, SolveStatus::Optimal);
            }
            t *= T_GROWTH;
        }
    }
}

pub(crate) fn barrier(canon: &Canon, options: &SolverOptions) -> BarrierOutcome {
    let mut newton = Newton {
        iterations: 0,
        budget: options.max_iterations,
        eps: options.cone_smoothing_eps,
        canon,
    };
    let x0 = DVector::from_element(canon.n, 1.0);
    let start = match newton.phase_one(x0) {
        Ok(x) => x,
        Err(status) => {
            return BarrierOutcome {
                x: DVector::zeros(canon.n),
                status,
                iterations: newton.iterations,
            }
        }
    };
    let (x, status) = newton.phase_two(start);
    BarrierOutcome {
        x,
        status,
        iterations: newton.iterations,
    }
}
