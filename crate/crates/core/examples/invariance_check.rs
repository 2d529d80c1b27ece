//! The studentized sample mean has the same t law under every generator.
//!
//! ```text
//! cargo run --release --example invariance_check -- [SEED]
//! ```

use elliptic_ccp::validate::{invariance_test, invariance_test_with, SampleScheme};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = match std::env::args().nth(1) {
        Some(s) => s.parse()?,
        None => 1,
    };
    let ids = ["normal", "pearson7(5)", "power_exponential(1)", "power_exponential(3)"];
    println!("{:<24}{:>10}{:>10}  result", "generator", "KS", "p-value");
    for r in invariance_test(&ids, 10, 2000, seed)? {
        println!(
            "{:<24}{:>10.5}{:>10.4}  {}",
            r.generator_id,
            r.ks_statistic,
            r.p_value,
            if r.pass { "pass" } else { "FAIL" }
        );
    }

    // scaling by sqrt(N) instead of sqrt(N-1) gives the wrong law
    let wrong = |xb: f64, mu: f64, s2: f64, n: usize| (xb - mu) * (n as f64).sqrt() / s2.sqrt();
    let r = invariance_test_with(&["normal"], 10, 2000, seed, SampleScheme::Joint, &wrong)?;
    println!("mis-scaled statistic p-value {:.2e}", r[0].p_value);
    Ok(())
}
