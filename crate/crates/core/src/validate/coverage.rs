//! Empirical satisfaction rate of the chance constraints at a fixed decision.
//!
//! Each replication draws a fresh sample of the same size `N` from the chosen generator,
//! with the estimated mean and covariance taken as the true parameters, and checks the
//! constraint written in terms of the sample means. The rates therefore describe the
//! sampling distribution of the means, which is what the deterministic equivalents
//! guarantee, not single-draw feasibility.

use nalgebra::{DMatrix, DVector};

use super::ks::{wilson_interval, Z_95};
use crate::elliptical::{registry_get, sample_elliptical_with, DensityGenerator};
use crate::error::{TransformError, ValidationError};
use crate::estimators::EstimatorBundle;
use crate::linalg::{dot, psd_cholesky};
use crate::model::{ConstraintKind, ProblemSpec, RhsSource, VectorSource};
use crate::rng::substream;
use crate::transform::{detect_case, CaseTag, Estimates};

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintCoverage {
    /// 1-based constraint index.
    pub index: usize,
    pub nominal: f64,
    pub successes: usize,
    pub rate: f64,
    pub wilson: (f64, f64),
    pub pass: bool,
}

impl ConstraintCoverage {
    pub fn half_width(&self) -> f64 {
        0.5 * (self.wilson.1 - self.wilson.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub generator_id: String,
    pub case: CaseTag,
    pub replications: usize,
    pub constraints: Vec<ConstraintCoverage>,
}

impl CoverageReport {
    pub fn all_pass(&self) -> bool {
        self.constraints.iter().all(|c| c.pass)
    }
}

/// Draws one size-`N` sample with the bundle's mean and covariance and returns its mean.
struct MeanSampler<'a> {
    est: &'a EstimatorBundle,
    mean: Vec<f64>,
    root: DMatrix<f64>,
    generator: DensityGenerator,
}

impl<'a> MeanSampler<'a> {
    fn new(est: &'a EstimatorBundle, generator: DensityGenerator) -> Result<Self, ValidationError> {
        let d = est.dim();
        // scale matrix = covariance / (E[R^2] / d)
        let factor = generator.covariance_factor(d);
        let root = psd_cholesky(&est.unbiased_cov)? / factor.sqrt();
        Ok(Self {
            est,
            mean: est.mean.iter().copied().collect(),
            root,
            generator,
        })
    }

    fn draw<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> DVector<f64> {
        let rows = sample_elliptical_with(&self.mean, &self.root, &self.generator, self.est.n, rng);
        let n = rows.nrows() as f64;
        DVector::from_iterator(rows.ncols(), rows.column_iter().map(|c| c.sum() / n))
    }
}

fn bundle<'a>(estimates: &'a Estimates, id: &str) -> Result<&'a EstimatorBundle, ValidationError> {
    estimates
        .get(id)
        .ok_or_else(|| TransformError::MissingEstimator(id.to_string()).into())
}

/// Coverage of every random constraint at `x`. Constraint `i` uses RNG substream `i`.
pub fn coverage_test(
    spec: &ProblemSpec,
    estimates: &Estimates,
    x: &[f64],
    generator_id: &str,
    m: usize,
    seed: u64,
) -> Result<CoverageReport, ValidationError> {
    if m == 0 {
        return Err(ValidationError::NoReplications);
    }
    if x.len() != spec.n_vars {
        return Err(ValidationError::DecisionLength {
            got: x.len(),
            expected: spec.n_vars,
        });
    }
    let case = detect_case(spec)?;
    if !matches!(case, CaseTag::II | CaseTag::III | CaseTag::IV) {
        return Err(TransformError::WrongCase {
            expected: "II, III or IV".into(),
            found: case.to_string(),
        }
        .into());
    }
    let generator = registry_get(generator_id)?;
    let n = spec.n_vars;
    let mut out = Vec::new();
    for (i, con) in spec.constraints.iter().enumerate() {
        if !con.is_random() {
            continue;
        }
        let alpha = con.alpha.ok_or(TransformError::MissingAlpha(i + 1))?;
        // lhs(mean draw) <= 0 means the constraint holds
        let (set, lhs): (&str, Box<dyn Fn(&DVector<f64>) -> (f64, f64)>) = match &con.kind {
            ConstraintKind::Separate {
                row: VectorSource::Random(id),
                rhs: RhsSource::Fixed(b),
            } => {
                let b = *b;
                (
                    id,
                    Box::new(move |a: &DVector<f64>| {
                        let v = dot(a.as_slice(), x);
                        (v - b, v.abs() + b.abs())
                    }),
                )
            }
            ConstraintKind::Separate {
                row: VectorSource::Fixed(a),
                rhs: RhsSource::Random { set, column },
            } => {
                let ax = dot(a, x);
                let col = *column;
                (
                    set,
                    Box::new(move |b: &DVector<f64>| (ax - b[col], ax.abs() + b[col].abs())),
                )
            }
            ConstraintKind::Joint { set } => (
                set,
                Box::new(move |g: &DVector<f64>| {
                    let v = dot(&g.as_slice()[..n], x);
                    (v - g[n], v.abs() + g[n].abs())
                }),
            ),
            _ => unreachable!("case detection admits no other random constraint"),
        };
        let sampler = MeanSampler::new(bundle(estimates, set)?, generator)?;
        let mut rng = substream(seed, i as u64);
        let mut successes = 0;
        for _ in 0..m {
            let (v, mag) = lhs(&sampler.draw(&mut rng));
            // rounding slack for zero-variance data evaluated exactly on the boundary
            if v <= 1e-12 * (1.0 + mag) {
                successes += 1;
            }
        }
        let rate = successes as f64 / m as f64;
        let nominal = 1.0 - alpha;
        let wilson = wilson_interval(successes, m, Z_95);
        out.push(ConstraintCoverage {
            index: i + 1,
            nominal,
            successes,
            rate,
            wilson,
            pass: rate >= nominal || wilson.1 >= nominal,
        });
    }
    Ok(CoverageReport {
        generator_id: generator.id(),
        case,
        replications: m,
        constraints: out,
    })
}
