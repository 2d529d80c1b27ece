//! Row and capacity sampled together, with random profits in the objective.
//!
//! ```text
//! cargo run --example joint_randomness -- 0.5
//! ```

use elliptic_ccp::fixtures::{example_spec, shipped_samples};
use elliptic_ccp::io::{render_structured, EstimatorStamp, SolveReport};
use elliptic_ccp::solver::{solve, SolverOptions};
use elliptic_ccp::transform::{build, detect_case, estimate_all};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k1: f64 = match std::env::args().nth(1) {
        Some(s) => s.parse()?,
        None => 0.5,
    };
    let spec = example_spec("example4").expect("shipped").with_k1(k1);
    let samples = shipped_samples()?;
    let est = estimate_all(&spec, &samples, None)?;
    let program = build(&spec, &est)?;
    let solution = solve(&program, &SolverOptions::default())?;

    let report = SolveReport {
        case: detect_case(&spec)?,
        sense: spec.sense,
        k1: spec.k1,
        k2: spec.k2,
        quantiles: program.provenance.quantiles.clone(),
        estimators: est.values().map(EstimatorStamp::from).collect(),
        solution,
    };
    print!("{}", render_structured(&report));
    Ok(())
}
