//! Mean, unbiased covariance and the likelihood covariance under each generator.
//!
//! ```text
//! cargo run --example estimators
//! ```

use elliptic_ccp::elliptical::shipped_generators;
use elliptic_ccp::estimators::{estimate, mle_scale_factor, unbiased_cov_elliptical};
use elliptic_ccp::fixtures::shipped_samples;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let samples = shipped_samples()?;
    let set = &samples["a1"];
    let (n, d) = (set.len(), set.dim());

    let plain = estimate(set, None)?;
    println!("set {}  N = {n}  d = {d}", set.id);
    println!("mean        {:.6?}", plain.mean.as_slice());
    println!("S/(N-1)     {:.6?}", plain.unbiased_cov.diagonal().as_slice());

    for g in shipped_generators() {
        let lambda = mle_scale_factor(n, d, &g)?;
        let unbiased = unbiased_cov_elliptical(set, &g)?;
        println!(
            "{:<22} lambda*N = {:<10.6} elliptical unbiased diag {:.4?}",
            g.id(),
            lambda * n as f64,
            unbiased.diagonal().as_slice()
        );
    }
    Ok(())
}
