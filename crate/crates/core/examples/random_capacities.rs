//! Only the right-hand sides are random: the equivalent stays a linear program.
//!
//! ```text
//! cargo run --example random_capacities
//! ```

use elliptic_ccp::fixtures::{example_spec, shipped_samples};
use elliptic_ccp::solver::{solve, SolverOptions};
use elliptic_ccp::transform::{build, estimate_all};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = example_spec("example3").expect("shipped");
    let samples = shipped_samples()?;
    let est = estimate_all(&spec, &samples, None)?;
    let program = build(&spec, &est)?;
    assert!(program.is_linear());

    for (i, c) in program.constraints.iter().enumerate() {
        println!("row {}: {:?} x <= {:.4}", i + 1, c.linear, -c.offset);
    }
    let s = solve(&program, &SolverOptions::default())?;
    println!("method {:?}, status {}", s.method, s.status);
    println!("x = {:.5?}", s.x);
    println!("z_max = {:.4}", s.plain_objective);
    Ok(())
}
