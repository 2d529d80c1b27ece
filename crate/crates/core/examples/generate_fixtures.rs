//! Rewrites the shipped sample files.
//!
//! ```text
//! cargo run --example generate_fixtures -- [SEED] [DIR]
//! ```

use elliptic_ccp::estimators::estimate;
use elliptic_ccp::fixtures::{synthesize_target, FIXTURE_SEED, TARGETS};
use elliptic_ccp::io::write_samples;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let seed = match args.next() {
        Some(s) => s.parse()?,
        None => FIXTURE_SEED,
    };
    let dir = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures").to_string());
    for (k, target) in TARGETS.iter().enumerate() {
        let set = synthesize_target(k, seed)?;
        let est = estimate(&set, None)?;
        let worst = (&est.unbiased_cov - target.covariance()).amax();
        std::fs::write(format!("{dir}/{}", target.file), write_samples(&set))?;
        println!("{:<16} N={:<3} max |S* - target| = {worst:.2e}", target.file, set.len());
    }
    Ok(())
}
