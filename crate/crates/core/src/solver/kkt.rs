use nalgebra::{DMatrix, DVector};

use super::canon::{Affine, Canon};
use super::nnls::nnls;
use crate::model::DeterministicProgram;

/// Constraints and bounds within this relative distance of their limit count as active.
pub const ACTIVE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KktReport {
    /// Largest constraint or bound violation (absolute).
    pub feasibility: f64,
    /// `||grad f0 + sum lambda_i grad f_i - mu||`, minimized over `lambda, mu >= 0` on the
    /// active set, divided by `max(1, ||grad f0||)`.
    pub stationarity: f64,
}

/// Exact (unsmoothed) gradient of `f`; `None` for the cone part when its argument is 0.
fn gradient(f: &Affine, x: &DVector<f64>) -> (DVector<f64>, bool) {
    let mut g = f.lin.clone();
    let mut kink = false;
    if let Some(c) = &f.cone {
        let z = c.image(x);
        let nz = z.norm();
        if nz > 0.0 {
            g += c.lx.transpose() * z * (c.scale / nz);
        } else {
            kink = true;
        }
    }
    (g, kink)
}

fn exact_value(f: &Affine, x: &DVector<f64>) -> (f64, f64) {
    let lin = f.lin.dot(x) + f.off;
    let mag = 1.0
        + f.lin.iter().zip(x.iter()).map(|(a, b)| (a * b).abs()).sum::<f64>()
        + f.off.abs();
    match &f.cone {
        None => (lin, mag),
        Some(c) => {
            let cv = c.scale * c.image(x).norm();
            (lin + cv, mag + cv.abs())
        }
    }
}

/// Feasibility and stationarity residuals at `x`.
///
/// A cone term whose argument is zero contributes the element of its subdifferential
/// `{scale * L'v : ||v|| <= 1}` that best reduces the residual for the objective, and
/// nothing for a constraint.
pub fn check_kkt(program: &DeterministicProgram, x: &[f64]) -> KktReport {
    let feasibility = program.max_violation(x);
    let canon = Canon::new(program);
    let n = canon.n;
    let xv = DVector::from_column_slice(x);

    let mut columns: Vec<DVector<f64>> = Vec::new();
    for c in &canon.constraints {
        let (val, mag) = exact_value(c, &xv);
        if val >= -ACTIVE_TOL * mag {
            columns.push(gradient(c, &xv).0);
        }
    }
    let x_scale = 1.0 + xv.amax();
    for j in 0..n {
        if x[j] <= ACTIVE_TOL * x_scale {
            let mut e = DVector::zeros(n);
            e[j] = -1.0;
            columns.push(e);
        }
    }
    let e = if columns.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(&columns)
    };

    let (mut g0, kink) = gradient(&canon.objective, &xv);
    let residual = |g0: &DVector<f64>| -> DVector<f64> {
        let lambda = nnls(&e, &(-g0));
        g0 + &e * lambda
    };
    let mut r = residual(&g0);
    if kink {
        let c = canon.objective.cone.as_ref().expect("kink implies cone");
        let m = c.lx.transpose() * c.scale;
        let svd = m.clone().svd(true, true);
        if let Ok(mut v) = svd.solve(&(-&r), 1e-14 * svd.singular_values.max().max(f64::MIN_POSITIVE)) {
            let nv = v.norm();
            if nv > 1.0 {
                v /= nv;
            }
            g0 += m * v;
            r = residual(&g0);
        }
    }
    KktReport {
        feasibility,
        stationarity: r.norm() / g0.norm().max(1.0),
    }
}
