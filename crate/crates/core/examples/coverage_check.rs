//! Empirical coverage of the solved random-row constraints under each generator.
//!
//! ```text
//! cargo run --release --example coverage_check -- [REPLICATIONS] [SEED]
//! ```

use elliptic_ccp::fixtures::{example_spec, shipped_samples};
use elliptic_ccp::solver::{solve, SolverOptions};
use elliptic_ccp::transform::{build, estimate_all};
use elliptic_ccp::validate::coverage_test;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let m: usize = args.next().map_or(Ok(20_000), |s| s.parse())?;
    let seed: u64 = args.next().map_or(Ok(1), |s| s.parse())?;

    let spec = example_spec("example2").expect("shipped");
    let est = estimate_all(&spec, &shipped_samples()?, None)?;
    let x = solve(&build(&spec, &est)?, &SolverOptions::default())?.x;

    for g in ["normal", "pearson7(5)", "power_exponential(1)"] {
        let rep = coverage_test(&spec, &est, &x, g, m, seed)?;
        for c in &rep.constraints {
            println!(
                "{:<22} row {}  rate {:.4}  nominal {:.2}  +-{:.4}",
                rep.generator_id,
                c.index,
                c.rate,
                c.nominal,
                c.half_width()
            );
        }
    }
    Ok(())
}
