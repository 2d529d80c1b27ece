//! Sample means, scatter matrices and covariance estimators.

use nalgebra::{DMatrix, DVector};
use sha2::{Digest, Sha256};

use crate::elliptical::DensityGenerator;
use crate::error::{EstimatorError, SampleError};
use crate::model::SampleSet;

/// Search bracket for the likelihood scale factor.
pub const MLE_BRACKET: (f64, f64) = (1e-8, 1e8);

/// Estimates for one random vector.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorBundle {
    pub id: String,
    pub mean: DVector<f64>,
    /// `S = sum_k (x_k - x_bar)(x_k - x_bar)'`.
    pub scatter: DMatrix<f64>,
    /// `S / (N - 1)`.
    pub unbiased_cov: DMatrix<f64>,
    pub mle_cov: Option<DMatrix<f64>>,
    pub n: usize,
    pub generator_id: Option<String>,
}

impl EstimatorBundle {
    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    /// Hex SHA-256 over the id, `N` and the bit patterns of the mean and scatter.
    pub fn checksum(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.id.as_bytes());
        h.update([0u8]);
        h.update((self.n as u64).to_le_bytes());
        for v in self.mean.iter().chain(self.scatter.iter()) {
            h.update(v.to_bits().to_le_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn sample_mean(samples: &SampleSet) -> Result<DVector<f64>, EstimatorError> {
    let n = samples.len();
    if n == 0 {
        return Err(SampleError::Empty {
            id: samples.id.clone(),
        }
        .into());
    }
    let mut mean = DVector::zeros(samples.dim());
    for row in samples.data.row_iter() {
        mean += row.transpose();
    }
    Ok(mean / n as f64)
}

fn require_rows(samples: &SampleSet, needed: usize) -> Result<(), EstimatorError> {
    if samples.len() < needed {
        return Err(SampleError::TooFewRows {
            id: samples.id.clone(),
            rows: samples.len(),
            needed,
        }
        .into());
    }
    Ok(())
}

/// Sum of centered outer products.
pub fn scatter_matrix(samples: &SampleSet) -> Result<DMatrix<f64>, EstimatorError> {
    require_rows(samples, 2)?;
    let mean = sample_mean(samples)?;
    let d = samples.dim();
    let mut s = DMatrix::zeros(d, d);
    for row in samples.data.row_iter() {
        let c = row.transpose() - &mean;
        s.ger(1.0, &c, &c, 1.0);
    }
    // exact symmetry regardless of summation order
    Ok((&s + s.transpose()) * 0.5)
}

pub fn unbiased_cov(samples: &SampleSet) -> Result<DMatrix<f64>, EstimatorError> {
    let s = scatter_matrix(samples)?;
    Ok(s / (samples.len() - 1) as f64)
}

/// `S / (2 (1 - N) phi'(0))`, the unbiased covariance estimator under an elliptical
/// model whose generator has the given `phi'(0)`.
pub fn unbiased_cov_elliptical(
    samples: &SampleSet,
    generator: &DensityGenerator,
) -> Result<DMatrix<f64>, EstimatorError> {
    let s = scatter_matrix(samples)?;
    let phi = generator.phi_prime_0(samples.len() * samples.dim());
    scale_by_phi(s, phi, samples.len(), generator)
}

fn scale_by_phi(
    s: DMatrix<f64>,
    phi: f64,
    n: usize,
    generator: &DensityGenerator,
) -> Result<DMatrix<f64>, EstimatorError> {
    if !(phi < 0.0) {
        return Err(EstimatorError::NonNegativePhiPrime {
            id: generator.id(),
            value: phi,
        });
    }
    Ok(s / (2.0 * (1.0 - n as f64) * phi))
}

/// Maximizer of the profile likelihood `f(lambda) = lambda^{-N d / 2} g(d / lambda)`,
/// where `g` is the generator of the whole `N d`-dimensional sample matrix.
///
/// The log-derivative in `ln lambda` is strictly decreasing for every shipped
/// generator, so its root is found by bisection on the bracket [`MLE_BRACKET`];
/// a sign pattern without a crossing means the maximum sits on the boundary and is
/// reported as an error.
pub fn mle_scale_factor(
    n: usize,
    d: usize,
    generator: &DensityGenerator,
) -> Result<f64, EstimatorError> {
    let total = n * d;
    let half = 0.5 * total as f64;
    let dd = d as f64;
    // d/du ln f(e^u) = -N d / 2 - v * (ln g)'(v),  v = d e^{-u}
    let slope = |u: f64| -> f64 {
        let v = dd * (-u).exp();
        -half - v * ln_g_derivative(generator, v, total)
    };
    let (lo, hi) = MLE_BRACKET;
    let (mut a, mut b) = (lo.ln(), hi.ln());
    if !(slope(a) > 0.0 && slope(b) < 0.0) {
        return Err(EstimatorError::NoMaximizer { lo, hi });
    }
    while b - a > 1e-14 * a.abs().max(b.abs()).max(1.0) {
        let m = 0.5 * (a + b);
        if m == a || m == b {
            break;
        }
        if slope(m) > 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    Ok((0.5 * (a + b)).exp())
}

fn ln_g_derivative(generator: &DensityGenerator, v: f64, dim: usize) -> f64 {
    match *generator {
        DensityGenerator::Normal => -0.5,
        DensityGenerator::PearsonVii { nu } => -0.5 * (nu + dim as f64) / (nu + v),
        DensityGenerator::PowerExponential { beta } => -0.5 * beta * v.powf(beta - 1.0),
    }
}

/// Maximum likelihood covariance `lambda * S` under the given generator.
pub fn mle_cov(
    samples: &SampleSet,
    generator: &DensityGenerator,
) -> Result<DMatrix<f64>, EstimatorError> {
    let (n, d) = (samples.len(), samples.dim());
    if n < d {
        return Err(EstimatorError::MleNeedsMoreRows { n, d });
    }
    let s = scatter_matrix(samples)?;
    Ok(s * mle_scale_factor(n, d, generator)?)
}

/// Mean, scatter and unbiased covariance; the MLE is added when a generator is given
/// and `N >= d`.
pub fn estimate(
    samples: &SampleSet,
    generator: Option<&DensityGenerator>,
) -> Result<EstimatorBundle, EstimatorError> {
    let mean = sample_mean(samples)?;
    let scatter = scatter_matrix(samples)?;
    let n = samples.len();
    let unbiased = &scatter / (n - 1) as f64;
    let mle = match generator {
        Some(g) if n >= samples.dim() => {
            Some(&scatter * mle_scale_factor(n, samples.dim(), g)?)
        }
        _ => None,
    };
    Ok(EstimatorBundle {
        id: samples.id.clone(),
        mean,
        scatter,
        unbiased_cov: unbiased,
        mle_cov: mle,
        n,
        generator_id: generator.map(DensityGenerator::id),
    })
}

/// Bundle from known parameters rather than samples: `scatter = cov * (N - 1)`.
pub fn bundle_from_moments(
    id: impl Into<String>,
    mean: DVector<f64>,
    cov: DMatrix<f64>,
    n: usize,
) -> EstimatorBundle {
    assert!(n >= 2, "N must be at least 2");
    EstimatorBundle {
        id: id.into(),
        scatter: &cov * (n - 1) as f64,
        unbiased_cov: cov,
        mean,
        mle_cov: None,
        n,
        generator_id: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(rows: &[Vec<f64>]) -> SampleSet {
        SampleSet::from_rows("t", rows).unwrap()
    }

    #[test]
    fn two_point_mean() {
        let m = sample_mean(&set(&[vec![1.0, 3.0], vec![3.0, 5.0]])).unwrap();
        assert_eq!(m.as_slice(), &[2.0, 4.0]);
        let one = sample_mean(&set(&[vec![7.0, 5.0, 12.0]])).unwrap();
        assert_eq!(one.as_slice(), &[7.0, 5.0, 12.0]);
    }

    #[test]
    fn hand_scatter() {
        let s = scatter_matrix(&set(&[vec![1.0, 0.0], vec![-1.0, 0.0]])).unwrap();
        assert_eq!(s, DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.0]));
        let z = scatter_matrix(&set(&vec![vec![4.0, 4.0]; 5])).unwrap();
        assert_eq!(z, DMatrix::zeros(2, 2));
    }

    #[test]
    fn unbiased_variance() {
        let v = unbiased_cov(&set(&[vec![0.0], vec![2.0]])).unwrap();
        assert_eq!(v[(0, 0)], 2.0);
        assert!(unbiased_cov(&set(&[vec![1.0]])).is_err());
    }

    #[test]
    fn phi_minus_one() {
        let s = set(&[vec![0.0, 1.0], vec![2.0, -1.0], vec![1.0, 3.0]]);
        let scatter = scatter_matrix(&s).unwrap();
        let out = scale_by_phi(scatter.clone(), -1.0, 3, &DensityGenerator::Normal).unwrap();
        assert_eq!(out, scatter / 4.0);
        assert!(scale_by_phi(DMatrix::zeros(1, 1), 0.0, 3, &DensityGenerator::Normal).is_err());
    }

    #[test]
    fn normal_scale_factor_is_one_over_n() {
        for (n, d) in [(5, 1), (12, 3), (25, 4), (1000, 2)] {
            let lam = mle_scale_factor(n, d, &DensityGenerator::Normal).unwrap();
            assert!((lam * n as f64 - 1.0).abs() < 1e-12, "n={n} d={d} lam={lam}");
        }
    }

    #[test]
    fn mle_needs_rows() {
        let s = set(&[vec![1.0, 2.0, 3.0], vec![0.0, 1.0, 1.0]]);
        assert!(matches!(
            mle_cov(&s, &DensityGenerator::Normal),
            Err(EstimatorError::MleNeedsMoreRows { n: 2, d: 3 })
        ));
    }

    #[test]
    fn checksum_is_stable_and_sensitive() {
        let s = set(&[vec![1.0, 2.0], vec![3.0, 5.0], vec![0.5, 0.0]]);
        let a = estimate(&s, None).unwrap();
        assert_eq!(a.checksum(), estimate(&s, None).unwrap().checksum());
        assert_eq!(a.checksum().len(), 64);
        let t = set(&[vec![1.0, 2.0], vec![3.0, 5.0], vec![0.5, 1e-9]]);
        assert_ne!(a.checksum(), estimate(&t, None).unwrap().checksum());
    }
}
