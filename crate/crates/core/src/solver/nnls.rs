//! Lawson-Hanson nonnegative least squares.

use nalgebra::{DMatrix, DVector};

/// `argmin ||E z - f||` subject to `z >= 0`.
pub fn nnls(e: &DMatrix<f64>, f: &DVector<f64>) -> DVector<f64> {
    let k = e.ncols();
    let mut z = DVector::zeros(k);
    if k == 0 {
        return z;
    }
    let mut passive = vec![false; k];
    let scale = e.abs().max().max(1.0) * f.abs().max().max(1.0);
    let tol = 1e-13 * scale * k as f64;
    for _ in 0..3 * k + 10 {
        let w = e.transpose() * (f - e * &z);
        let candidate = (0..k)
            .filter(|&j| !passive[j] && w[j] > tol)
            .max_by(|&a, &b| w[a].total_cmp(&w[b]));
        let Some(t) = candidate else { break };
        passive[t] = true;
        loop {
            let s = restricted_lstsq(e, f, &passive);
            let bad: Vec<usize> = (0..k).filter(|&j| passive[j] && s[j] <= 0.0).collect();
            if bad.is_empty() {
                z = s;
                break;
            }
            let alpha = bad
                .iter()
                .map(|&j| z[j] / (z[j] - s[j]))
                .fold(f64::INFINITY, f64::min);
            z += (s - &z) * alpha;
            for j in 0..k {
                if passive[j] && z[j] <= 1e-15 * scale {
                    passive[j] = false;
                    z[j] = 0.0;
                }
            }
            if !passive.iter().any(|&p| p) {
                break;
            }
        }
    }
    z
}

fn restricted_lstsq(e: &DMatrix<f64>, f: &DVector<f64>, passive: &[bool]) -> DVector<f64> {
    let cols: Vec<usize> = (0..passive.len()).filter(|&j| passive[j]).collect();
    let sub = e.select_columns(&cols);
    let svd = sub.svd(true, true);
    let sol = svd
        .solve(f, 1e-14 * svd.singular_values.max().max(f64::MIN_POSITIVE))
        .unwrap_or_else(|_| DVector::zeros(cols.len()));
    let mut out = DVector::zeros(passive.len());
    for (i, &j) in cols.iter().enumerate() {
        out[j] = sol[i];
    }
    out
}
