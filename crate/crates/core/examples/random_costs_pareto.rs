//! Random unit profits: trade mean profit against its standard deviation.
//!
//! ```text
//! cargo run --example random_costs_pareto
//! ```

use elliptic_ccp::fixtures::{example_spec, shipped_samples};
use elliptic_ccp::io::render_pareto_table;
use elliptic_ccp::solver::SolverOptions;
use elliptic_ccp::transform::{estimate_all, pareto_sweep};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = example_spec("example1").expect("shipped");
    let samples = shipped_samples()?;
    let est = estimate_all(&spec, &samples, None)?;

    let grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let points = pareto_sweep(&spec, &est, &grid, &SolverOptions::default())?;
    print!("{}", render_pareto_table(spec.sense, &points));

    // every point is a Pareto optimum of (mean profit, -std dev)
    println!("\n{:>6}{:>14}{:>14}", "k1", "mean", "std dev");
    let c = &est["c"];
    for p in &points {
        let s = p.outcome.as_ref().expect("solver ran");
        let x = nalgebra::DVector::from_column_slice(&s.x);
        let sd = ((x.transpose() * &c.unbiased_cov * &x)[0] / c.n as f64).sqrt();
        println!("{:>6.1}{:>14.3}{:>14.3}", p.k1, s.plain_objective, sd);
    }
    Ok(())
}
