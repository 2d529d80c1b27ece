//! Dense two-phase tableau simplex with Bland's rule.
//!
//! Solves `opt c'x  s.t.  A x <= b, x >= 0` for `b` of any sign. Rows with a negative
//! right-hand side get an artificial variable that phase one drives out.

use crate::model::Sense;

const PIVOT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub c: Vec<f64>,
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub x: Vec<f64>,
    pub objective: f64,
    /// Nonnegative row multipliers `y`: for maximization `A'y >= c` and `b'y` equals
    /// the optimum; for minimization `c + A'y >= 0` and `-b'y` equals the optimum.
    pub duals: Vec<f64>,
    pub dual_objective: f64,
    /// Phase-one infeasibility `sum of artificials` at termination.
    pub phase_one_residual: f64,
    pub iterations: usize,
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[col];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
                row[col] = 0.0;
            }
        }
        self.basis[r] = col;
    }

    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut r = cost.to_vec();
        for (i, row) in self.rows.iter().enumerate() {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                for (rj, v) in r.iter_mut().zip(row) {
                    *rj -= cb * v;
                }
            }
        }
        r
    }

    /// Minimizes `cost` over the current basis using columns `< allowed`.
    fn optimize(
        &mut self,
        cost: &[f64],
        allowed: usize,
        budget: &mut usize,
        iterations: &mut usize,
    ) -> LpStatus {
        let scale = cost.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let rc_tol = 1e-11 * scale;
        loop {
            let r = self.reduced_costs(cost);
            let Some(enter) = (0..allowed).find(|&j| r[j] < -rc_tol) else {
                return LpStatus::Optimal;
            };
            if *budget == 0 {
                return LpStatus::IterationLimit;
            }
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][enter];
                if a > PIVOT_TOL {
                    let ratio = self.rhs(i) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((k, best)) => {
                            let tie = (ratio - best).abs() <= 1e-12 * best.abs().max(1.0);
                            if ratio < best && !tie
                                || tie && self.basis[i] < self.basis[k]
                            {
                                Some((i, ratio))
                            } else {
                                Some((k, best))
                            }
                        }
                    };
                }
            }
            let Some((r_leave, _)) = leave else {
                return LpStatus::Unbounded;
            };
            self.pivot(r_leave, enter);
            *budget -= 1;
            *iterations += 1;
        }
    }
}

/// Solves the program; `max_iterations` bounds the total number of pivots.
pub fn simplex(lp: &LinearProgram, max_iterations: usize, feasibility_tol: f64) -> LpOutcome {
    let n = lp.c.len();
    let m = lp.a.len();
    let n_art = lp.b.iter().filter(|&&b| b < 0.0).count();
    let width = n + m + n_art;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_art = n + m;
    for i in 0..m {
        let s = if lp.b[i] < 0.0 { -1.0 } else { 1.0 };
        let mut row = vec![0.0; width + 1];
        for j in 0..n {
            row[j] = s * lp.a[i][j];
        }
        row[n + i] = s;
        row[width] = s * lp.b[i];
        if s < 0.0 {
            row[next_art] = 1.0;
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(n + i);
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, width };
    let mut budget = max_iterations;
    let mut iterations = 0;

    let fail = |status, iterations, residual| LpOutcome {
        status,
        x: vec![0.0; n],
        objective: f64::NAN,
        duals: vec![0.0; m],
        dual_objective: f64::NAN,
        phase_one_residual: residual,
        iterations,
    };

    let mut residual = 0.0;
    if n_art > 0 {
        let mut cost = vec![0.0; width];
        for c in cost.iter_mut().skip(n + m) {
            *c = 1.0;
        }
        let status = t.optimize(&cost, width, &mut budget, &mut iterations);
        if status == LpStatus::IterationLimit {
            return fail(status, iterations, f64::NAN);
        }
        residual = (0..t.rows.len())
            .filter(|&i| t.basis[i] >= n + m)
            .map(|i| t.rhs(i))
            .sum();
        let b_scale = lp.b.iter().fold(1.0f64, |s, v| s.max(v.abs()));
        if residual > feasibility_tol * b_scale {
            return fail(LpStatus::Infeasible, iterations, residual);
        }
        // drive zero-level artificials out of the basis; rows without a pivot are redundant
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= n + m {
                match (0..n + m).find(|&j| t.rows[i][j].abs() > 1e-9) {
                    Some(j) => t.pivot(i, j),
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let mut cost = vec![0.0; width];
    for j in 0..n {
        cost[j] = match lp.sense {
            Sense::Minimize => lp.c[j],
            Sense::Maximize => -lp.c[j],
        };
    }
    let status = t.optimize(&cost, n + m, &mut budget, &mut iterations);
    if status != LpStatus::Optimal {
        return fail(status, iterations, residual);
    }

    let mut x = vec![0.0; n];
    for (i, &bv) in t.basis.iter().enumerate() {
        if bv < n {
            x[bv] = t.rhs(i).max(0.0);
        }
    }
    let objective: f64 = lp.c.iter().zip(&x).map(|(c, x)| c * x).sum();
    // reduced cost of slack i is the multiplier of row i in the minimization form
    let r = t.reduced_costs(&cost);
    let duals: Vec<f64> = (0..m).map(|i| r[n + i].max(0.0)).collect();
    let by: f64 = lp.b.iter().zip(&duals).map(|(b, y)| b * y).sum();
    let dual_objective = match lp.sense {
        Sense::Maximize => by,
        Sense::Minimize => -by,
    };
    LpOutcome {
        status: LpStatus::Optimal,
        x,
        objective,
        duals,
        dual_objective,
        phase_one_residual: residual,
        iterations,
    }
}
