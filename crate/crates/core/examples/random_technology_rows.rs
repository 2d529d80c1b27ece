//! Each constraint row is random; the deterministic equivalent is a cone program.
//!
//! ```text
//! cargo run --example random_technology_rows
//! ```

use elliptic_ccp::fixtures::{example_spec, shipped_samples};
use elliptic_ccp::io::{render_table, SolveReport};
use elliptic_ccp::solver::{solve, SolverOptions};
use elliptic_ccp::transform::{build, detect_case, estimate_all};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = example_spec("example2").expect("shipped");
    let samples = shipped_samples()?;
    let est = estimate_all(&spec, &samples, None)?;
    let program = build(&spec, &est)?;

    for (i, (c, q)) in program
        .constraints
        .iter()
        .zip(&program.provenance.quantiles)
        .enumerate()
    {
        let cone = c.cone.as_ref().expect("random row");
        println!(
            "row {}: mean {:?}  quantile {:.6}  cone scale {:.6}",
            i + 1,
            c.linear,
            q.unwrap_or(f64::NAN),
            cone.scale
        );
    }

    let solution = solve(&program, &SolverOptions::default())?;
    let report = SolveReport {
        case: detect_case(&spec)?,
        sense: spec.sense,
        k1: spec.k1,
        k2: spec.k2,
        quantiles: program.provenance.quantiles.clone(),
        estimators: Vec::new(),
        solution,
    };
    print!("{}", render_table(&report));

    // tighter risk levels shrink the feasible set
    for alpha in [0.10, 0.05, 0.01, 0.001] {
        let p = build(&spec.with_alphas(&[alpha]), &est)?;
        let s = solve(&p, &SolverOptions::default())?;
        println!("alpha {alpha:<6} z_max {:.4}", s.plain_objective);
    }
    Ok(())
}
