//! Student-t distribution: CDF through the regularized incomplete beta function,
//! quantiles by safeguarded root finding on the CDF.

use statrs::function::gamma::ln_gamma;

use crate::error::DistributionError;

const CF_EPS: f64 = 1e-16;
const CF_TINY: f64 = 1e-300;
const CF_MAX_ITER: usize = 10_000;

/// Student-t distribution with a positive integer number of degrees of freedom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TStudent {
    df: u64,
}

impl TStudent {
    pub fn new(df: u64) -> Result<Self, DistributionError> {
        if df == 0 {
            return Err(DistributionError::InvalidDegreesOfFreedom(df));
        }
        Ok(Self { df })
    }

    /// The t distribution of a studentized mean from `n` draws (`n - 1` degrees of freedom).
    pub fn for_sample_size(n: usize) -> Result<Self, DistributionError> {
        if n < 2 {
            return Err(DistributionError::SampleTooSmall(n));
        }
        Self::new(n as u64 - 1)
    }

    pub fn df(&self) -> u64 {
        self.df
    }

    pub fn pdf(&self, t: f64) -> f64 {
        let nu = self.df as f64;
        let ln_norm = ln_gamma((nu + 1.0) / 2.0)
            - ln_gamma(nu / 2.0)
            - 0.5 * (nu * std::f64::consts::PI).ln();
        (ln_norm - (nu + 1.0) / 2.0 * (t * t / nu).ln_1p()).exp()
    }

    /// `P(T <= t)`.
    pub fn cdf(&self, t: f64) -> f64 {
        if t.is_nan() {
            return f64::NAN;
        }
        if t == 0.0 {
            return 0.5;
        }
        let tail = self.tail(t.abs());
        if t > 0.0 {
            1.0 - tail
        } else {
            tail
        }
    }

    /// Upper tail `P(T > t)` for `t >= 0`, computed without cancellation.
    fn tail(&self, t: f64) -> f64 {
        if t.is_infinite() {
            return 0.0;
        }
        let nu = self.df as f64;
        let x = nu / (nu + t * t);
        0.5 * incomplete_beta(nu / 2.0, 0.5, x)
    }

    /// Inverse CDF. `p` must lie strictly inside `(0, 1)`.
    pub fn quantile(&self, p: f64) -> Result<f64, DistributionError> {
        if !(p > 0.0 && p < 1.0) {
            return Err(DistributionError::ProbabilityOutOfRange(p));
        }
        if p == 0.5 {
            return Ok(0.0);
        }
        // upper-tail target keeps full relative precision for p near 0 or 1
        let (target, sign) = if p > 0.5 { (1.0 - p, 1.0) } else { (p, -1.0) };
        Ok(sign * self.upper_quantile(target))
    }

    /// Solves `tail(t) = q` for `t >= 0`, `q in (0, 0.5)`.
    fn upper_quantile(&self, q: f64) -> f64 {
        let mut lo = 0.0;
        let mut hi = 1.0;
        while self.tail(hi) > q {
            lo = hi;
            hi *= 2.0;
            if !hi.is_finite() {
                return f64::INFINITY;
            }
        }
        // Newton on the tail, falling back to bisection whenever a step leaves the bracket.
        let mut t = 0.5 * (lo + hi);
        for _ in 0..200 {
            let f = self.tail(t) - q;
            if f == 0.0 {
                return t;
            }
            if f > 0.0 {
                lo = t;
            } else {
                hi = t;
            }
            let newton = t + f / self.pdf(t);
            let next = if newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            let step = (next - t).abs();
            t = next;
            if step <= 2.0 * f64::EPSILON * t.max(1.0) || hi - lo <= 4.0 * f64::EPSILON * hi.max(1.0) {
                break;
            }
        }
        t
    }
}

/// Regularized incomplete beta `I_x(a, b)` via Lentz's continued fraction, using the
/// symmetry `I_x(a, b) = 1 - I_{1-x}(b, a)` past the switch point `(a + 1)/(a + b + 2)`.
pub fn incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front =
        ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (-x).ln_1p();
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_continued_fraction(a, b, x) / a
    } else {
        1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b
    }
}

fn beta_continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < CF_TINY {
        d = CF_TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=CF_MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < CF_TINY {
            d = CF_TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < CF_TINY {
            c = CF_TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < CF_TINY {
            d = CF_TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < CF_TINY {
            c = CF_TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < CF_EPS {
            break;
        }
    }
    h
}

/// Studentized mean `sqrt(N) sqrt(N-1) (x_bar - mu) / sqrt(s2)`, with `s2` the
/// scatter `sum (x_k - x_bar)^2` (not divided by anything).
pub fn t_statistic(x_bar: f64, mu: f64, s2: f64, n: usize) -> Result<f64, DistributionError> {
    if n < 2 {
        return Err(DistributionError::SampleTooSmall(n));
    }
    if !(s2 > 0.0) {
        return Err(DistributionError::NonPositiveScatter(s2));
    }
    let n = n as f64;
    Ok(n.sqrt() * (n - 1.0).sqrt() * (x_bar - mu) / s2.sqrt())
}

/// `F_T^{-1}(p)` for `df` degrees of freedom.
pub fn t_quantile(df: u64, p: f64) -> Result<f64, DistributionError> {
    TStudent::new(df)?.quantile(p)
}

pub fn t_cdf(df: u64, t: f64) -> Result<f64, DistributionError> {
    Ok(TStudent::new(df)?.cdf(t))
}
