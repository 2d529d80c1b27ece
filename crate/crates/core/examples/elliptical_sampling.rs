//! Draws from each shipped generator with a common covariance.
//!
//! ```text
//! cargo run --example elliptical_sampling
//! ```

use elliptic_ccp::elliptical::{sample_elliptical, shipped_generators};
use elliptic_ccp::estimators::unbiased_cov;
use elliptic_ccp::linalg::psd_cholesky;
use nalgebra::DMatrix;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cov = DMatrix::from_row_slice(2, 2, &[4.0, 1.2, 1.2, 1.0]);
    let mean = [1.0, -2.0];
    for g in shipped_generators() {
        // the scale matrix is cov / covariance_factor
        let root = psd_cholesky(&cov)? / g.covariance_factor(2).sqrt();
        let set = sample_elliptical(&mean, &root, &g, 100_000, 42);
        let est = unbiased_cov(&set)?;
        println!(
            "{:<22} cov = [{:.3} {:.3}; {:.3} {:.3}]  error {:.4}",
            g.id(),
            est[(0, 0)],
            est[(0, 1)],
            est[(1, 0)],
            est[(1, 1)],
            (&est - &cov).norm() / cov.norm()
        );
    }
    Ok(())
}
