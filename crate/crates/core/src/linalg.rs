//! Small dense linear-algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::LinalgError;

/// Relative threshold below which a negative eigenvalue is treated as rounding noise.
pub const PSD_NEGATIVE_TOL: f64 = 1e-10;

/// Symmetric positive semidefinite square root `R = Q diag(sqrt(l)) Q'`, so that
/// `R R = R'R = S`.
///
/// Eigenvalues in `[-1e-10 * |S|, 0)` are clamped to zero. Anything more negative
/// means the input is not a covariance and is rejected.
pub fn psd_sqrt(s: &DMatrix<f64>) -> Result<DMatrix<f64>, LinalgError> {
    check_square_symmetric(s)?;
    let n = s.nrows();
    if n == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    let scale = s.abs().max();
    if scale == 0.0 {
        return Ok(DMatrix::zeros(n, n));
    }
    let sym = symmetrize(s);
    let eig = SymmetricEigen::new(sym);
    let floor = -PSD_NEGATIVE_TOL * scale;
    let mut roots = DVector::zeros(n);
    for (i, &l) in eig.eigenvalues.iter().enumerate() {
        if l < floor {
            return Err(LinalgError::NotPositiveSemidefinite { eigenvalue: l });
        }
        roots[i] = l.max(0.0).sqrt();
    }
    let q = &eig.eigenvectors;
    let mut root = q * DMatrix::from_diagonal(&roots) * q.transpose();
    // exact symmetry, so that root(s^2 S) == s * root(S) up to rounding
    root = symmetrize(&root);
    // diagonal inputs give an exactly diagonal root
    if is_diagonal(s) {
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    root[(i, j)] = 0.0;
                }
            }
            root[(i, i)] = s[(i, i)].max(0.0).sqrt();
        }
    }
    Ok(root)
}

/// Lower-triangular factor `L` with `L L' = S` for a positive semidefinite `S`.
///
/// Zero pivots (within `1e-12 * max diag`) produce a zero column instead of failing,
/// so singular covariances such as zero-variance samples are accepted.
pub fn psd_cholesky(s: &DMatrix<f64>) -> Result<DMatrix<f64>, LinalgError> {
    check_square_symmetric(s)?;
    let n = s.nrows();
    let mut l = DMatrix::<f64>::zeros(n, n);
    let max_diag = (0..n).map(|i| s[(i, i)].abs()).fold(0.0, f64::max);
    let pivot_tol = 1e-12 * max_diag.max(f64::MIN_POSITIVE);
    for j in 0..n {
        let mut d = s[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if d < -PSD_NEGATIVE_TOL * max_diag.max(1.0) {
            return Err(LinalgError::NotPositiveSemidefinite { eigenvalue: d });
        }
        if d <= pivot_tol {
            continue;
        }
        let pivot = d.sqrt();
        l[(j, j)] = pivot;
        for i in (j + 1)..n {
            let mut v = s[(i, j)];
            for k in 0..j {
                v -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = v / pivot;
        }
    }
    Ok(l)
}

pub fn symmetrize(s: &DMatrix<f64>) -> DMatrix<f64> {
    (s + s.transpose()) * 0.5
}

pub fn is_diagonal(s: &DMatrix<f64>) -> bool {
    s.is_square()
        && (0..s.nrows()).all(|i| (0..s.ncols()).all(|j| i == j || s[(i, j)] == 0.0))
}

pub fn is_lower_triangular(s: &DMatrix<f64>) -> bool {
    s.is_square() && (0..s.nrows()).all(|i| ((i + 1)..s.ncols()).all(|j| s[(i, j)] == 0.0))
}

fn check_square_symmetric(s: &DMatrix<f64>) -> Result<(), LinalgError> {
    if !s.is_square() {
        return Err(LinalgError::NotSquare {
            rows: s.nrows(),
            cols: s.ncols(),
        });
    }
    let scale = s.abs().max().max(1.0);
    for i in 0..s.nrows() {
        for j in (i + 1)..s.ncols() {
            if (s[(i, j)] - s[(j, i)]).abs() > 1e-9 * scale {
                return Err(LinalgError::NotSymmetric);
            }
        }
    }
    Ok(())
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
