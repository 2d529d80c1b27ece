mod common;

use common::example;
use elliptic_ccp::error::{TransformError, ValidationError};
use elliptic_ccp::model::{sample_map, SampleSet};
use elliptic_ccp::solver::{solve, SolverOptions};
use elliptic_ccp::transform::{build, estimate_all};
use elliptic_ccp::validate::{coverage_test, invariance_test, invariance_test_with, SampleScheme};

fn solved_x(name: &str, alpha: f64) -> Vec<f64> {
    let (spec, _, est) = example(name);
    let s = solve(&build(&spec.with_alphas(&[alpha]), &est).unwrap(), &SolverOptions::default()).unwrap();
    assert!(s.is_optimal());
    s.x
}

#[test]
fn invariance_small_run() {
    let out = invariance_test(&["normal", "pearson7(5)"], 3, 100, 1).unwrap();
    assert_eq!(out.len(), 2);
    for r in &out {
        assert!((0.0..=1.0).contains(&r.ks_statistic));
        assert!((0.0..=1.0).contains(&r.p_value));
        assert!(r.critical_value > 0.0);
    }
    assert!(matches!(invariance_test(&["normal"], 2, 100, 1), Err(ValidationError::InvarianceSize { .. })));
    assert!(matches!(invariance_test(&["normal"], 5, 99, 1), Err(ValidationError::InvarianceSize { .. })));
    assert!(invariance_test(&["nope"], 5, 100, 1).is_err());
}

#[test]
fn invariance_is_seeded() {
    let a = invariance_test(&["pearson7(5)"], 10, 500, 9).unwrap();
    let b = invariance_test(&["pearson7(5)"], 10, 500, 9).unwrap();
    let c = invariance_test(&["pearson7(5)"], 10, 500, 10).unwrap();
    assert_eq!(a, b);
    assert_ne!(a[0].ks_statistic, c[0].ks_statistic);
}

#[test]
fn wrong_statistic_is_caught() {
    // z statistic with the scatter in place of the variance
    let wrong = |xb: f64, mu: f64, s2: f64, n: usize| (xb - mu) * (n as f64).sqrt() / s2.sqrt();
    let out = invariance_test_with(&["normal"], 10, 2000, 3, SampleScheme::IndependentRows, &wrong).unwrap();
    assert!(!out[0].pass);
}

#[test]
fn half_alpha_coverage() {
    let (spec, _, est) = example("example2");
    let spec = spec.with_alphas(&[0.5]);
    let x = solved_x("example2", 0.5);
    let r = coverage_test(&spec, &est, &x, "normal", 4000, 2).unwrap();
    for c in &r.constraints {
        assert_eq!(c.nominal, 0.5);
        assert!(c.wilson.1 >= 0.5, "{c:?}");
    }
}

#[test]
fn zero_variance_is_always_covered() {
    let rows = [[12.0, 2.0, 4.0], [7.0, 5.0, 12.0], [2.0, 4.0, 3.5]];
    let sets = sample_map((0..3).map(|i| SampleSet::from_rows(format!("a{}", i + 1), &vec![rows[i].to_vec(); 25]).unwrap()));
    let (spec, _, _) = example("example2");
    let est = estimate_all(&spec, &sets, None).unwrap();
    let x = solve(&build(&spec, &est).unwrap(), &SolverOptions::default()).unwrap().x;
    let r = coverage_test(&spec, &est, &x, "pearson7(5)", 500, 4).unwrap();
    assert!(r.constraints.iter().all(|c| c.rate == 1.0));
}

#[test]
fn coverage_agrees_across_generators() {
    for name in ["example2", "example3", "example4"] {
        let (spec, _, est) = example(name);
        let spec = spec.with_alphas(&[0.1]);
        let x = solved_x(name, 0.1);
        let reports: Vec<_> = ["normal", "pearson7(5)", "power_exponential(0.5)"]
            .iter()
            .map(|g| coverage_test(&spec, &est, &x, g, 4000, 8).unwrap())
            .collect();
        for i in 0..reports[0].constraints.len() {
            let cs: Vec<_> = reports.iter().map(|r| &r.constraints[i]).collect();
            let width = cs.iter().map(|c| c.half_width()).fold(0.0, f64::max);
            for c in &cs {
                assert!((c.rate - cs[0].rate).abs() <= 3.0 * width, "{name} constraint {}: {cs:?}", i + 1);
                assert!(c.pass, "{name}: {c:?}");
            }
        }
    }
}

#[test]
fn coverage_is_seeded() {
    let (spec, _, est) = example("example4");
    let x = solved_x("example4", 0.01);
    let a = coverage_test(&spec, &est, &x, "pearson7(5)", 300, 5).unwrap();
    assert_eq!(a, coverage_test(&spec, &est, &x, "pearson7(5)", 300, 5).unwrap());
}

#[test]
fn coverage_argument_errors() {
    let (spec1, _, est1) = example("example1");
    assert!(matches!(
        coverage_test(&spec1, &est1, &[1.0, 1.0, 1.0], "normal", 10, 1),
        Err(ValidationError::Transform(TransformError::WrongCase { .. }))
    ));
    let (spec, _, est) = example("example2");
    assert!(matches!(coverage_test(&spec, &est, &[1.0], "normal", 10, 1), Err(ValidationError::DecisionLength { got: 1, expected: 3 })));
    assert!(matches!(coverage_test(&spec, &est, &[1.0; 3], "normal", 0, 1), Err(ValidationError::NoReplications)));
}
