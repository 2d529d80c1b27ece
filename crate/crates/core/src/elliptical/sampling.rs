use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::DensityGenerator;
use crate::model::SampleSet;
use crate::rng::seeded;

/// Uniform point on the unit sphere in `R^dim`.
pub fn unit_sphere<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DVector<f64> {
    loop {
        let z = DVector::<f64>::from_fn(dim, |_, _| StandardNormal.sample(rng));
        let n = z.norm();
        if n > 0.0 {
            return z / n;
        }
    }
}

/// `count` i.i.d. draws of `mean + R * cov_root * u`.
///
/// `cov_root` is expected lower triangular with a nonnegative diagonal; the scale matrix
/// of the draws is `cov_root * cov_root'` (the covariance is that times
/// [`DensityGenerator::covariance_factor`]).
pub fn sample_elliptical_with<R: Rng + ?Sized>(
    mean: &[f64],
    cov_root: &DMatrix<f64>,
    generator: &DensityGenerator,
    count: usize,
    rng: &mut R,
) -> DMatrix<f64> {
    let d = mean.len();
    assert_eq!(cov_root.nrows(), d, "cov_root rows must match mean");
    assert_eq!(cov_root.ncols(), d, "cov_root must be square");
    let mut out = DMatrix::zeros(count, d);
    for k in 0..count {
        let r = generator.sample_radius(d, rng);
        let u = unit_sphere(d, rng);
        let v = cov_root * u;
        for j in 0..d {
            out[(k, j)] = mean[j] + r * v[j];
        }
    }
    out
}

/// Seeded wrapper around [`sample_elliptical_with`] returning a [`SampleSet`].
pub fn sample_elliptical(
    mean: &[f64],
    cov_root: &DMatrix<f64>,
    generator: &DensityGenerator,
    count: usize,
    seed: u64,
) -> SampleSet {
    let mut rng = seeded(seed);
    let data = sample_elliptical_with(mean, cov_root, generator, count, &mut rng);
    SampleSet::new(format!("{}-seed{seed}", generator.id()), data)
        .expect("finite draws")
        .with_provenance(format!("sample_elliptical {} seed={seed}", generator.id()))
}

/// One draw of an `n_rows x d` sample matrix `X ~ E(1 mu', I ⊗ S; g)`: `vec(X)` is a
/// single `n_rows * d`-dimensional elliptical vector, so all rows share one radius.
///
/// Only for the normal kernel are the rows independent. This is the sampling model
/// under which the studentized mean is exactly t-distributed for every generator.
pub fn sample_matrix_elliptical<R: Rng + ?Sized>(
    mean: &[f64],
    cov_root: &DMatrix<f64>,
    generator: &DensityGenerator,
    n_rows: usize,
    rng: &mut R,
) -> DMatrix<f64> {
    let d = mean.len();
    assert_eq!(cov_root.nrows(), d);
    assert_eq!(cov_root.ncols(), d);
    let total = n_rows * d;
    let r = generator.sample_radius(total, rng);
    let u = unit_sphere(total, rng);
    let mut out = DMatrix::zeros(n_rows, d);
    for k in 0..n_rows {
        let block = DVector::from_iterator(d, u.rows(k * d, d).iter().copied());
        let v = cov_root * block;
        for j in 0..d {
            out[(k, j)] = mean[j] + r * v[j];
        }
    }
    out
}
