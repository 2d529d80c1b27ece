mod common;

use common::{example, grid_max_2d, random_spd, rel, vertex_lp};
use elliptic_ccp::error::SolverError;
use elliptic_ccp::linalg::psd_sqrt;
use elliptic_ccp::model::{ConeTerm, DeterministicProgram, ProgramConstraint, Sense, SolveMethod, SolveStatus};
use elliptic_ccp::rng::seeded;
use elliptic_ccp::solver::{check_kkt, simplex, solve, LinearProgram, LpStatus, SolverOptions};
use elliptic_ccp::transform::build;
use proptest::prelude::*;
use rand::Rng;

fn example_lp() -> DeterministicProgram {
    let rows = vec![vec![12.0, 2.0, 4.0], vec![7.0, 5.0, 12.0], vec![2.0, 4.0, 3.5]];
    DeterministicProgram::lp(Sense::Maximize, vec![50.0, 70.0, 70.0], &rows, &[1000.0, 1500.0, 750.0])
}

#[test]
fn example_lp_optimum() {
    let s = solve(&example_lp(), &SolverOptions::default()).unwrap();
    assert_eq!(s.status, SolveStatus::Optimal);
    assert_eq!(s.method, SolveMethod::Simplex);
    for (got, want) in s.x.iter().zip([47.45763, 123.7288, 45.76271]) {
        assert!(rel(*got, want) < 1e-6, "{got} vs {want}");
    }
    assert!((s.objective - 14237.2881).abs() < 1e-4);
}

#[test]
fn shipped_examples_are_optimal() {
    for (name, z) in [("example2", 10904.8076), ("example3", 13997.1624), ("example4", 10895.75)] {
        let (spec, _, est) = example(name);
        let s = solve(&build(&spec, &est).unwrap(), &SolverOptions::default()).unwrap();
        assert!(s.is_optimal(), "{name}");
        assert!(s.max_constraint_violation <= 1e-8 && s.kkt_residual <= 1e-6);
        assert!(rel(s.plain_objective, z) < 1e-6, "{name}: {}", s.plain_objective);
    }
}

#[test]
fn infeasible_and_unbounded() {
    let p = DeterministicProgram::lp(Sense::Maximize, vec![1.0, 1.0], &[vec![1.0, 0.0]], &[-1.0]);
    let s = solve(&p, &SolverOptions::default()).unwrap();
    assert_eq!(s.status, SolveStatus::Infeasible);
    assert!(s.objective.is_nan());
    let p = DeterministicProgram::lp(Sense::Maximize, vec![1.0, 1.0], &[vec![1.0, -1.0]], &[3.0]);
    assert_eq!(solve(&p, &SolverOptions::default()).unwrap().status, SolveStatus::Unbounded);
}

#[test]
fn infeasible_cone_program() {
    let mut p = example_lp();
    p.constraints.push(ProgramConstraint {
        linear: vec![0.0; 3],
        offset: 0.0,
        cone: Some(ConeTerm { scale: 1.0, root: nalgebra::DMatrix::from_row_slice(1, 4, &[0.0, 0.0, 0.0, 1.0]), augmented: true }),
    });
    assert_eq!(solve(&p, &SolverOptions::default()).unwrap().status, SolveStatus::Infeasible);
}

#[test]
fn rejects_bad_programs() {
    let mut p = example_lp();
    p.cone_objective = Some(ConeTerm { scale: 1.0, root: nalgebra::DMatrix::identity(3, 3), augmented: false });
    assert!(matches!(solve(&p, &SolverOptions::default()), Err(SolverError::NonConvex(_))));
    let mut q = example_lp();
    q.constraints[0].linear.pop();
    assert!(matches!(solve(&q, &SolverOptions::default()), Err(SolverError::Dimension(_))));
    let opts = SolverOptions { kkt_tol: 0.0, ..SolverOptions::default() };
    assert!(matches!(solve(&example_lp(), &opts), Err(SolverError::Options(_))));
}

#[test]
fn kkt_residuals() {
    let p = example_lp();
    let origin = check_kkt(&p, &[0.0; 3]);
    assert_eq!(origin.feasibility, 0.0);
    assert!(origin.stationarity > 0.1);
    let rounded = check_kkt(&p, &[47.45763, 123.7288, 45.76271]);
    assert!(rounded.feasibility <= 1e-3);
    assert!(rounded.stationarity <= 1e-6);
    let outside = check_kkt(&p, &[100.0, 0.0, 0.0]);
    assert!((outside.feasibility - 200.0).abs() < 1e-9);
}

#[test]
fn solves_are_deterministic() {
    let (spec, _, est) = example("example4");
    let p = build(&spec, &est).unwrap();
    let a = solve(&p, &SolverOptions::default()).unwrap();
    let b = solve(&p, &SolverOptions::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn cone_optimum_beats_nearby_grid() {
    let mut rng = seeded(2024);
    for k in 0..8 {
        let c = [rng.random_range(1.0..10.0), rng.random_range(1.0..10.0)];
        let mut constraints = Vec::new();
        let mut rows = Vec::new();
        for _ in 0..2 {
            let a = vec![rng.random_range(1.0..10.0), rng.random_range(1.0..10.0)];
            let cov = random_spd(&mut rng, 2, 1.5, 0.1);
            let b = rng.random_range(50.0..150.0);
            let kappa = rng.random_range(0.1..0.8);
            rows.push((a.clone(), cov.clone(), kappa, b));
            constraints.push(ProgramConstraint {
                linear: a,
                offset: -b,
                cone: Some(ConeTerm { scale: kappa, root: psd_sqrt(&cov).unwrap(), augmented: false }),
            });
        }
        let p = DeterministicProgram {
            constraints,
            ..DeterministicProgram::lp(Sense::Maximize, c.to_vec(), &[], &[])
        };
        let s = solve(&p, &SolverOptions::default()).unwrap();
        assert!(s.is_optimal(), "instance {k}: {}", s.status);
        let feasible = |x: f64, y: f64| {
            rows.iter().all(|(a, cov, kappa, b)| {
                let q = cov[(0, 0)] * x * x + 2.0 * cov[(0, 1)] * x * y + cov[(1, 1)] * y * y;
                a[0] * x + a[1] * y + kappa * q.max(0.0).sqrt() <= *b
            })
        };
        let obj = |x: f64, y: f64| c[0] * x + c[1] * y;
        let r = 0.02 * (1.0 + s.x[0].abs().max(s.x[1].abs()));
        let lo = ((s.x[0] - r).max(0.0), (s.x[1] - r).max(0.0));
        let hi = (s.x[0] + r, s.x[1] + r);
        let (_, _, best) = grid_max_2d(&obj, &feasible, lo, hi, 201, 4).unwrap();
        assert!(best <= s.objective * (1.0 + 1e-6), "instance {k}: grid {best} beats {}", s.objective);
        assert!(rel(s.objective, best) <= 1e-6, "instance {k}: solver {} grid {best}", s.objective);
    }
}

fn lp_strategy() -> impl Strategy<Value = (Vec<f64>, Vec<Vec<f64>>, Vec<f64>)> {
    (2usize..5, 1usize..5).prop_flat_map(|(n, m)| {
        (
            prop::collection::vec(-5.0f64..10.0, n),
            prop::collection::vec(prop::collection::vec(0.1f64..10.0, n), m),
            prop::collection::vec(1.0f64..100.0, m),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn simplex_matches_vertex_enumeration((c, a, b) in lp_strategy(), maximize in any::<bool>()) {
        let sense = if maximize { Sense::Maximize } else { Sense::Minimize };
        let lp = LinearProgram { sense, c: c.clone(), a: a.clone(), b: b.clone() };
        let out = simplex(&lp, 10_000, 1e-9);
        let (_, z) = vertex_lp(sense, &c, &a, &b).unwrap();
        prop_assert_eq!(out.status, LpStatus::Optimal);
        prop_assert!((out.objective - z).abs() <= 1e-9 * (1.0 + z.abs()), "{} vs {}", out.objective, z);
        prop_assert!((out.objective - out.dual_objective).abs() <= 1e-8 * (1.0 + z.abs()));
        prop_assert!(out.duals.iter().all(|&y| y >= -1e-12));
    }

    #[test]
    fn mixed_sign_rhs((c, a, b) in lp_strategy(), flip in 0usize..4) {
        let mut b = b;
        let k = flip % b.len();
        b[k] = -b[k];
        let mut a = a;
        for v in a[k].iter_mut() {
            *v = -*v;
        }
        let lp = LinearProgram { sense: Sense::Minimize, c: c.iter().map(|v| v.abs()).collect(), a: a.clone(), b: b.clone() };
        let out = simplex(&lp, 10_000, 1e-9);
        match vertex_lp(Sense::Minimize, &lp.c, &a, &b) {
            Some((_, z)) => {
                prop_assert_eq!(out.status, LpStatus::Optimal);
                prop_assert!((out.objective - z).abs() <= 1e-9 * (1.0 + z.abs()));
            }
            None => prop_assert_eq!(out.status, LpStatus::Infeasible),
        }
    }
}
