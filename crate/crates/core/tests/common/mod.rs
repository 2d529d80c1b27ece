//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use elliptic_ccp::fixtures::{example_spec, shipped_samples};
use elliptic_ccp::model::{ProblemSpec, SampleSets, Sense};
use elliptic_ccp::transform::{estimate_all, Estimates};
use nalgebra::{DMatrix, DVector};
use statrs::function::gamma::ln_gamma;

pub fn example(name: &str) -> (ProblemSpec, SampleSets, Estimates) {
    let spec = example_spec(name).expect("shipped example");
    let samples = shipped_samples().expect("fixtures parse");
    let est = estimate_all(&spec, &samples, None).expect("estimates");
    (spec, samples, est)
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Adaptive Simpson on `[a, b]` to absolute tolerance `tol`.
pub fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Density of Student's t with `df` degrees of freedom, written out directly.
pub fn t_density(df: f64, t: f64) -> f64 {
    let ln_c = ln_gamma(0.5 * (df + 1.0)) - ln_gamma(0.5 * df) - 0.5 * (df * std::f64::consts::PI).ln();
    (ln_c - 0.5 * (df + 1.0) * (1.0 + t * t / df).ln()).exp()
}

/// `P(T <= t)` by quadrature of the density.
pub fn t_cdf_quadrature(df: f64, t: f64) -> f64 {
    let half = simpson(&|s| t_density(df, s), 0.0, t.abs(), 1e-15);
    if t >= 0.0 {
        0.5 + half
    } else {
        0.5 - half
    }
}

/// Best vertex of `{A x <= b, x >= 0}` by enumerating every basis.
/// Returns `None` when no vertex is feasible.
pub fn vertex_lp(sense: Sense, c: &[f64], rows: &[Vec<f64>], rhs: &[f64]) -> Option<(Vec<f64>, f64)> {
    let n = c.len();
    // hyperplanes: constraint rows, then x_j = 0
    let mut planes: Vec<(Vec<f64>, f64)> = rows.iter().cloned().zip(rhs.iter().copied()).collect();
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        planes.push((e, 0.0));
    }
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let a = DMatrix::from_fn(n, n, |r, k| planes[idx[r]].0[k]);
        let b = DVector::from_fn(n, |r, _| planes[idx[r]].1);
        if let Some(x) = a.lu().solve(&b) {
            let scale = 1.0 + x.amax();
            let ok = x.iter().all(|&v| v >= -1e-9 * scale)
                && rows
                    .iter()
                    .zip(rhs)
                    .all(|(r, &bi)| r.iter().zip(x.iter()).map(|(p, q)| p * q).sum::<f64>() <= bi + 1e-9 * (scale + bi.abs()));
            if ok {
                let z: f64 = c.iter().zip(x.iter()).map(|(p, q)| p * q).sum();
                let better = match &best {
                    None => true,
                    Some((_, zb)) => match sense {
                        Sense::Maximize => z > *zb,
                        Sense::Minimize => z < *zb,
                    },
                };
                if better {
                    best = Some((x.iter().copied().collect(), z));
                }
            }
        }
        // next combination
        let m = planes.len();
        let mut i = n;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if idx[i] < m - n + i {
                idx[i] += 1;
                for k in i + 1..n {
                    idx[k] = idx[k - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Maximum of `objective` over the feasible points of a `k x k` grid on the box
/// `[lo, hi]`, followed by `zooms` rounds of re-gridding around the incumbent.
pub fn grid_max_2d(
    objective: &dyn Fn(f64, f64) -> f64,
    feasible: &dyn Fn(f64, f64) -> bool,
    lo: (f64, f64),
    hi: (f64, f64),
    k: usize,
    zooms: usize,
) -> Option<(f64, f64, f64)> {
    let mut best: Option<(f64, f64, f64)> = None;
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..=zooms {
        let hx = (hi.0 - lo.0) / (k - 1) as f64;
        let hy = (hi.1 - lo.1) / (k - 1) as f64;
        for i in 0..k {
            let x = lo.0 + hx * i as f64;
            for j in 0..k {
                let y = lo.1 + hy * j as f64;
                if !feasible(x, y) {
                    continue;
                }
                let v = objective(x, y);
                if best.is_none_or(|b| v > b.2) {
                    best = Some((x, y, v));
                }
            }
        }
        let (bx, by, _) = best?;
        lo = ((bx - 2.0 * hx).max(0.0), (by - 2.0 * hy).max(0.0));
        hi = (bx + 2.0 * hx, by + 2.0 * hy);
    }
    best
}

/// Argmax of `ln f(lambda)` over the grid `step, 2 step, ..., upper`.
pub fn grid_argmax(ln_f: &dyn Fn(f64) -> f64, step: f64, upper: f64) -> f64 {
    let count = (upper / step).round() as usize;
    let mut best = (f64::NEG_INFINITY, 0.0);
    for i in 1..=count {
        let lam = step * i as f64;
        let v = ln_f(lam);
        if v > best.0 {
            best = (v, lam);
        }
    }
    best.1
}

/// Random symmetric positive definite matrix `B B' + shift I`.
pub fn random_spd(rng: &mut impl rand::Rng, d: usize, scale: f64, shift: f64) -> DMatrix<f64> {
    let b = DMatrix::from_fn(d, d, |_, _| rng.random_range(-1.0..1.0) * scale);
    &b * b.transpose() + DMatrix::identity(d, d) * shift
}
