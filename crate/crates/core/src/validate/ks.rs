//! One-sample Kolmogorov-Smirnov test and Wilson score intervals.

/// `sup |F_emp - F|` for the sample against a continuous CDF.
pub fn ks_statistic(sample: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut sorted: Vec<f64> = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    let m = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i as f64 + 1.0) / m - f).max(f - i as f64 / m);
    }
    d
}

/// Kolmogorov tail `Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2)`.
pub fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for j in 1..=200 {
        let j = j as f64;
        let term = (-2.0 * j * j * lambda * lambda).exp();
        sum += sign * term;
        if term < 1e-17 * sum.abs() {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

fn effective_root(m: usize) -> f64 {
    let s = (m as f64).sqrt();
    s + 0.12 + 0.11 / s
}

/// Asymptotic p-value of statistic `d` for sample size `m` (Stephens' correction).
pub fn ks_p_value(d: f64, m: usize) -> f64 {
    kolmogorov_q(effective_root(m) * d)
}

/// Critical value of `D` at significance `level`.
pub fn ks_critical_value(m: usize, level: f64) -> f64 {
    // Q is decreasing in lambda
    let (mut lo, mut hi) = (0.2, 5.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if kolmogorov_q(mid) > level {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi) / effective_root(m)
}

/// 95% two-sided normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

/// Wilson score interval for `successes` out of `trials` at normal quantile `z`.
pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let m = trials as f64;
    let p = successes as f64 / m;
    let z2 = z * z;
    let denom = 1.0 + z2 / m;
    let center = (p + z2 / (2.0 * m)) / denom;
    let half = z * (p * (1.0 - p) / m + z2 / (4.0 * m * m)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_critical_value() {
        // large-sample 1% critical value 1.6276 / sqrt(M)
        let c = ks_critical_value(1_000_000, 0.01);
        assert!((c * 1000.0 - 1.6276).abs() < 1e-3);
    }

    #[test]
    fn statistic_of_perfect_grid() {
        let m = 100;
        let s: Vec<f64> = (0..m).map(|i| (i as f64 + 0.5) / m as f64).collect();
        let d = ks_statistic(&s, |x| x.clamp(0.0, 1.0));
        assert!((d - 0.005).abs() < 1e-12);
    }

    #[test]
    fn wilson_contains_rate() {
        let (lo, hi) = wilson_interval(990, 1000, Z_95);
        assert!(lo < 0.99 && 0.99 < hi);
        assert!(wilson_interval(10, 10, Z_95).1 > 1.0 - 1e-12);
    }
}
