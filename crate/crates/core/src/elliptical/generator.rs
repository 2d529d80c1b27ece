//! Density generators `g` of elliptically contoured distributions.
//!
//! A `d`-dimensional elliptical vector with location `mu` and scale `S` has density
//! `|S|^{-1/2} g((x - mu)' S^{-1} (x - mu))`, with `g` normalized so that
//! `pi^{d/2} / Gamma(d/2) * int_0^inf v^{d/2 - 1} g(v) dv = 1`. Every generator here
//! also has the stochastic representation `x = mu + R A u`, `A A' = S`, `u` uniform on
//! the unit sphere, and its covariance is `-2 phi'(0) S`.

use std::f64::consts::PI;
use std::fmt;

use rand::Rng;
use rand_distr::{ChiSquared, Distribution, Gamma};
use statrs::function::gamma::ln_gamma;

use crate::error::DistributionError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensityGenerator {
    /// `g(v) ∝ exp(-v/2)`.
    Normal,
    /// Multivariate t kernel, `g(v) ∝ (1 + v/nu)^{-(nu + d)/2}`, `nu > 2`.
    PearsonVii { nu: f64 },
    /// `g(v) ∝ exp(-v^beta / 2)`, `beta > 0`; `beta = 1` is the normal kernel.
    PowerExponential { beta: f64 },
}

impl DensityGenerator {
    pub fn pearson7(nu: f64) -> Result<Self, DistributionError> {
        if !(nu.is_finite() && nu > 2.0) {
            return Err(DistributionError::InvalidShape {
                id: format!("pearson7({nu})"),
                reason: "nu must exceed 2 for the covariance to exist".into(),
            });
        }
        Ok(Self::PearsonVii { nu })
    }

    pub fn power_exponential(beta: f64) -> Result<Self, DistributionError> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(DistributionError::InvalidShape {
                id: format!("power_exponential({beta})"),
                reason: "beta must be positive".into(),
            });
        }
        Ok(Self::PowerExponential { beta })
    }

    /// Canonical id, accepted back by [`registry_get`].
    pub fn id(&self) -> String {
        match self {
            Self::Normal => "normal".into(),
            Self::PearsonVii { nu } => format!("pearson7({nu})"),
            Self::PowerExponential { beta } => format!("power_exponential({beta})"),
        }
    }

    /// `ln g(v)` for a `dim`-dimensional vector.
    pub fn ln_g(&self, v: f64, dim: usize) -> f64 {
        let d = dim as f64;
        match *self {
            Self::Normal => -0.5 * d * (2.0 * PI).ln() - 0.5 * v,
            Self::PearsonVii { nu } => {
                ln_gamma(0.5 * (nu + d)) - ln_gamma(0.5 * nu) - 0.5 * d * (nu * PI).ln()
                    - 0.5 * (nu + d) * (v / nu).ln_1p()
            }
            Self::PowerExponential { beta } => {
                let ln_norm = ln_gamma(0.5 * d) + beta.ln()
                    - 0.5 * d * PI.ln()
                    - d / (2.0 * beta) * 2f64.ln()
                    - ln_gamma(d / (2.0 * beta));
                ln_norm - 0.5 * v.powf(beta)
            }
        }
    }

    pub fn g(&self, v: f64, dim: usize) -> f64 {
        self.ln_g(v, dim).exp()
    }

    /// `E[R^2] / d`, the ratio between covariance and scale matrix; equals `-2 phi'(0)`.
    pub fn covariance_factor(&self, dim: usize) -> f64 {
        let d = dim as f64;
        match *self {
            Self::Normal => 1.0,
            Self::PearsonVii { nu } => nu / (nu - 2.0),
            Self::PowerExponential { beta } => {
                let k = d / (2.0 * beta);
                (ln_gamma(k + 1.0 / beta) - ln_gamma(k) + 2f64.ln() / beta).exp() / d
            }
        }
    }

    /// Derivative at zero of the characteristic generator `phi`.
    ///
    /// The t and normal kernels give the same value in every dimension; the power
    /// exponential kernel does not, so the dimension of the whole random vector is
    /// needed.
    pub fn phi_prime_0(&self, dim: usize) -> f64 {
        -0.5 * self.covariance_factor(dim)
    }

    /// Draws the radius `R` of the stochastic representation in dimension `dim`.
    pub fn sample_radius<R: Rng + ?Sized>(&self, dim: usize, rng: &mut R) -> f64 {
        let d = dim as f64;
        match *self {
            Self::Normal => ChiSquared::new(d).expect("d > 0").sample(rng).sqrt(),
            Self::PearsonVii { nu } => {
                let num = ChiSquared::new(d).expect("d > 0").sample(rng);
                let den = ChiSquared::new(nu).expect("nu > 2").sample(rng);
                (num / (den / nu)).sqrt()
            }
            Self::PowerExponential { beta } => {
                let w = Gamma::new(d / (2.0 * beta), 1.0)
                    .expect("positive shape")
                    .sample(rng);
                (2.0 * w).powf(1.0 / (2.0 * beta))
            }
        }
    }
}

impl fmt::Display for DensityGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// Looks up a generator by id: `normal`, `pearson7(nu)` or `power_exponential(beta)`.
pub fn registry_get(id: &str) -> Result<DensityGenerator, DistributionError> {
    let compact: String = id.chars().filter(|c| !c.is_whitespace()).collect();
    let compact = compact.to_ascii_lowercase();
    if compact == "normal" || compact == "gaussian" {
        return Ok(DensityGenerator::Normal);
    }
    let unknown = || DistributionError::UnknownGenerator(id.to_string());
    let (name, rest) = compact.split_once('(').ok_or_else(unknown)?;
    let arg = rest.strip_suffix(')').ok_or_else(unknown)?;
    let value: f64 = arg.parse().map_err(|_| DistributionError::InvalidShape {
        id: id.to_string(),
        reason: format!("cannot parse shape parameter '{arg}'"),
    })?;
    match name {
        "pearson7" | "pearsonvii" | "t" => DensityGenerator::pearson7(value),
        "power_exponential" | "powerexponential" => DensityGenerator::power_exponential(value),
        _ => Err(unknown()),
    }
}

/// The three generators shipped by default: normal, `pearson7(5)` and
/// `power_exponential(1)`.
pub fn shipped_generators() -> Vec<DensityGenerator> {
    vec![
        DensityGenerator::Normal,
        DensityGenerator::PearsonVii { nu: 5.0 },
        DensityGenerator::PowerExponential { beta: 1.0 },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_round_trip() {
        for g in shipped_generators() {
            assert_eq!(registry_get(&g.id()).unwrap(), g);
        }
        assert_eq!(
            registry_get("power_exponential(0.5)").unwrap(),
            DensityGenerator::PowerExponential { beta: 0.5 }
        );
    }

    #[test]
    fn registry_errors() {
        assert!(matches!(
            registry_get("pearson7(2)"),
            Err(DistributionError::InvalidShape { .. })
        ));
        assert!(matches!(
            registry_get("laplace"),
            Err(DistributionError::UnknownGenerator(_))
        ));
        assert!(registry_get("power_exponential(-1)").is_err());
        assert!(registry_get("pearson7(x)").is_err());
    }

    #[test]
    fn phi_prime_values() {
        assert_eq!(DensityGenerator::Normal.phi_prime_0(3), -0.5);
        let t5 = registry_get("pearson7(5)").unwrap();
        assert!((t5.phi_prime_0(1) + 5.0 / 6.0).abs() < 1e-15);
        let pe1 = registry_get("power_exponential(1)").unwrap();
        for d in 1..8 {
            assert!((pe1.phi_prime_0(d) + 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn normal_kernel_shape() {
        let g = DensityGenerator::Normal;
        let ratio = g.g(2.0, 3) / g.g(0.0, 3);
        assert!((ratio - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn power_exponential_one_equals_normal() {
        let pe = DensityGenerator::PowerExponential { beta: 1.0 };
        for d in 1..6 {
            for v in [0.0, 0.5, 3.0, 10.0] {
                assert!((pe.ln_g(v, d) - DensityGenerator::Normal.ln_g(v, d)).abs() < 1e-12);
            }
        }
    }
}
