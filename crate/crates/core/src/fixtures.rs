//! Shipped example problems and their sample files.
//!
//! The sample files are synthesized so that their sample mean and unbiased covariance
//! hit prescribed values up to rounding: normal draws are centered, whitened with the
//! inverse Cholesky factor of their own covariance, then mapped through the target
//! factor and shifted to the target mean. `examples/generate_fixtures.rs` rewrites the
//! files from [`TARGETS`].

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{InputError, LinalgError};
use crate::io::{parse_samples, parse_spec};
use crate::linalg::psd_cholesky;
use crate::model::{sample_map, ProblemSpec, SampleSet, SampleSets};
use crate::rng::substream;

/// Default seed of the shipped files.
pub const FIXTURE_SEED: u64 = 20_231_101;

/// Prescribed moments of one shipped sample set.
#[derive(Debug, Clone, Copy)]
pub struct FixtureTarget {
    pub file: &'static str,
    pub id: &'static str,
    pub n: usize,
    pub mean: &'static [f64],
    /// Diagonal of the unbiased covariance.
    pub variances: &'static [f64],
}

impl FixtureTarget {
    pub fn covariance(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_column_slice(self.variances))
    }

    pub fn columns(&self) -> Vec<String> {
        (1..=self.mean.len()).map(|j| format!("{}_{j}", self.id)).collect()
    }
}

pub const TARGETS: [FixtureTarget; 8] = [
    FixtureTarget {
        file: "profit_c.csv",
        id: "c",
        n: 12,
        mean: &[50.0, 70.0, 70.0],
        variances: &[450.0, 2600.0, 850.0],
    },
    FixtureTarget {
        file: "rows_a1.csv",
        id: "a1",
        n: 25,
        mean: &[12.0, 2.0, 4.0],
        variances: &[30.0, 10.0, 12.0],
    },
    FixtureTarget {
        file: "rows_a2.csv",
        id: "a2",
        n: 25,
        mean: &[7.0, 5.0, 12.0],
        variances: &[22.0, 32.0, 15.0],
    },
    FixtureTarget {
        file: "rows_a3.csv",
        id: "a3",
        n: 25,
        mean: &[2.0, 4.0, 3.5],
        variances: &[15.0, 14.0, 9.0],
    },
    FixtureTarget {
        file: "capacity_b.csv",
        id: "b",
        n: 25,
        mean: &[1000.0, 1500.0, 750.0],
        variances: &[5000.0, 4000.0, 500.0],
    },
    FixtureTarget {
        file: "joint_g1.csv",
        id: "g1",
        n: 25,
        mean: &[12.0, 2.0, 4.0, 1000.0],
        variances: &[30.0, 10.0, 12.0, 5000.0],
    },
    FixtureTarget {
        file: "joint_g2.csv",
        id: "g2",
        n: 25,
        mean: &[7.0, 5.0, 12.0, 1500.0],
        variances: &[22.0, 32.0, 15.0, 4000.0],
    },
    FixtureTarget {
        file: "joint_g3.csv",
        id: "g3",
        n: 25,
        mean: &[2.0, 4.0, 3.5, 750.0],
        variances: &[15.0, 14.0, 9.0, 500.0],
    },
];

/// `(file name, contents)` of every shipped file.
pub const FILES: [(&str, &str); 12] = [
    ("profit_c.csv", include_str!("../fixtures/profit_c.csv")),
    ("rows_a1.csv", include_str!("../fixtures/rows_a1.csv")),
    ("rows_a2.csv", include_str!("../fixtures/rows_a2.csv")),
    ("rows_a3.csv", include_str!("../fixtures/rows_a3.csv")),
    ("capacity_b.csv", include_str!("../fixtures/capacity_b.csv")),
    ("joint_g1.csv", include_str!("../fixtures/joint_g1.csv")),
    ("joint_g2.csv", include_str!("../fixtures/joint_g2.csv")),
    ("joint_g3.csv", include_str!("../fixtures/joint_g3.csv")),
    ("example1.toml", include_str!("../fixtures/example1.toml")),
    ("example2.toml", include_str!("../fixtures/example2.toml")),
    ("example3.toml", include_str!("../fixtures/example3.toml")),
    ("example4.toml", include_str!("../fixtures/example4.toml")),
];

pub fn file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(f, _)| *f == name).map(|(_, t)| *t)
}

/// Rows with exactly the requested sample mean and unbiased covariance, up to rounding.
pub fn synthesize_exact(
    id: &str,
    mean: &[f64],
    cov: &DMatrix<f64>,
    n: usize,
    rng: &mut impl Rng,
) -> Result<SampleSet, LinalgError> {
    let d = mean.len();
    assert!(n > d, "need more rows than columns");
    let mut z = DMatrix::<f64>::from_fn(n, d, |_, _| StandardNormal.sample(rng));
    for mut col in z.column_iter_mut() {
        let m = col.sum() / n as f64;
        col.add_scalar_mut(-m);
    }
    let own = z.transpose() * &z / (n - 1) as f64;
    let own_root = psd_cholesky(&own)?;
    // rows of `white` have identity sample covariance
    let white = own_root
        .solve_lower_triangular(&z.transpose())
        .ok_or(LinalgError::NotPositiveSemidefinite { eigenvalue: 0.0 })?
        .transpose();
    let mut x = white * psd_cholesky(cov)?.transpose();
    for (j, mut col) in x.column_iter_mut().enumerate() {
        col.add_scalar_mut(mean[j]);
    }
    Ok(SampleSet::new(id, x).expect("finite by construction"))
}

/// Regenerates one shipped sample set; set `k` of [`TARGETS`] uses substream `k`.
pub fn synthesize_target(index: usize, seed: u64) -> Result<SampleSet, LinalgError> {
    let t = &TARGETS[index];
    let mut rng = substream(seed, index as u64);
    Ok(synthesize_exact(t.id, t.mean, &t.covariance(), t.n, &mut rng)?
        .with_columns(t.columns())
        .with_provenance(format!("synthesized, seed {seed}, set {index}")))
}

pub const EXAMPLES: [&str; 4] = ["example1", "example2", "example3", "example4"];

/// Spec of a shipped example.
pub fn example_spec(name: &str) -> Option<ProblemSpec> {
    let file_name = format!("{name}.toml");
    let text = file(&file_name)?;
    Some(parse_spec(text, &file_name).expect("shipped spec parses"))
}

/// Every shipped sample set, keyed by id.
pub fn shipped_samples() -> Result<SampleSets, InputError> {
    let sets = TARGETS
        .iter()
        .map(|t| parse_samples(file(t.file).expect("embedded"), t.file))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(sample_map(sets))
}
