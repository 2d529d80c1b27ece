//! Plain product-mix LP solved by the simplex path, with its dual certificate.
//!
//! ```text
//! cargo run --example deterministic_lp
//! ```

use elliptic_ccp::model::{DeterministicProgram, Sense};
use elliptic_ccp::solver::{as_linear_program, simplex, solve, SolverOptions};

fn main() {
    let rows = vec![
        vec![12.0, 2.0, 4.0],
        vec![7.0, 5.0, 12.0],
        vec![2.0, 4.0, 3.5],
    ];
    let rhs = [1000.0, 1500.0, 750.0];
    let program = DeterministicProgram::lp(Sense::Maximize, vec![50.0, 70.0, 70.0], &rows, &rhs);

    let solution = solve(&program, &SolverOptions::default()).expect("valid program");
    println!("status     {}", solution.status);
    for (j, v) in solution.x.iter().enumerate() {
        println!("x{}         {v:.6}", j + 1);
    }
    println!("z_max      {:.6}", solution.plain_objective);

    // the raw simplex also returns shadow prices
    let lp = simplex(&as_linear_program(&program), 1000, 1e-9);
    println!("duals      {:?}", lp.duals);
    println!("dual obj   {:.6}", lp.dual_objective);
}
