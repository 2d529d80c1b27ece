//! Monte Carlo check that the studentized mean is `t_{N-1}` under every generator.

use nalgebra::DMatrix;

use super::ks::{ks_critical_value, ks_p_value, ks_statistic};
use crate::elliptical::{
    registry_get, sample_elliptical_with, sample_matrix_elliptical, t_statistic, DensityGenerator,
    TStudent,
};
use crate::error::ValidationError;
use crate::rng::substream;

/// Significance level of the KS test.
pub const KS_LEVEL: f64 = 0.01;

/// How the `N` draws of one replicate are generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SampleScheme {
    /// The whole sample is one `N`-dimensional elliptical vector (shared radius).
    /// Under this model the statistic is exactly `t_{N-1}` for every generator.
    #[default]
    Joint,
    /// `N` independent draws. Exact only for the normal kernel.
    IndependentRows,
}

/// Signature of a studentized-mean statistic: `(x_bar, mu, scatter, N)`.
pub type Statistic = dyn Fn(f64, f64, f64, usize) -> f64;

#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceResult {
    pub generator_id: String,
    pub ks_statistic: f64,
    pub p_value: f64,
    pub critical_value: f64,
    pub pass: bool,
}

/// KS test of `t_statistic` against `t_{N-1}` for each generator, `M` replicates of
/// size `N`, joint sampling. Generator `k` uses RNG substream `k` of `seed`.
pub fn invariance_test(
    generator_ids: &[&str],
    n: usize,
    m: usize,
    seed: u64,
) -> Result<Vec<InvarianceResult>, ValidationError> {
    invariance_test_with(generator_ids, n, m, seed, SampleScheme::Joint, &|xb, mu, s2, n| {
        t_statistic(xb, mu, s2, n).unwrap_or(f64::NAN)
    })
}

/// [`invariance_test`] with an explicit sampling scheme and statistic.
pub fn invariance_test_with(
    generator_ids: &[&str],
    n: usize,
    m: usize,
    seed: u64,
    scheme: SampleScheme,
    statistic: &Statistic,
) -> Result<Vec<InvarianceResult>, ValidationError> {
    if n < 3 || m < 100 {
        return Err(ValidationError::InvarianceSize { n, m });
    }
    let generators: Vec<DensityGenerator> = generator_ids
        .iter()
        .map(|id| registry_get(id))
        .collect::<Result<_, _>>()?;
    let reference = TStudent::for_sample_size(n)?;
    let critical = ks_critical_value(m, KS_LEVEL);
    let root = DMatrix::from_element(1, 1, 1.0);
    let mu = 0.0;
    let mut out = Vec::with_capacity(generators.len());
    for (k, g) in generators.iter().enumerate() {
        let mut rng = substream(seed, k as u64);
        let mut stats = Vec::with_capacity(m);
        for _ in 0..m {
            let draws = match scheme {
                SampleScheme::Joint => sample_matrix_elliptical(&[mu], &root, g, n, &mut rng),
                SampleScheme::IndependentRows => sample_elliptical_with(&[mu], &root, g, n, &mut rng),
            };
            let x_bar = draws.mean();
            let s2: f64 = draws.iter().map(|v| (v - x_bar) * (v - x_bar)).sum();
            stats.push(statistic(x_bar, mu, s2, n));
        }
        let d = if stats.iter().all(|s| s.is_finite()) {
            ks_statistic(&stats, |t| reference.cdf(t))
        } else {
            1.0
        };
        let p = ks_p_value(d, m);
        out.push(InvarianceResult {
            generator_id: g.id(),
            ks_statistic: d,
            p_value: p,
            critical_value: critical,
            pass: p >= KS_LEVEL,
        });
    }
    Ok(out)
}
