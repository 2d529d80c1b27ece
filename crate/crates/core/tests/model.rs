mod common;

use common::example;
use elliptic_ccp::error::{SolverError, TransformError};
use elliptic_ccp::model::{
    sample_map, validate_spec, ConstraintSpec, DiagnosticCode, ProblemSpec, SampleSet, SampleSets, Sense,
    VectorSource,
};
use elliptic_ccp::solver::{solve, SolverOptions};
use elliptic_ccp::transform::{build, estimate_all};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn codes(spec: &ProblemSpec, samples: &SampleSets) -> Vec<DiagnosticCode> {
    validate_spec(spec, samples).into_iter().map(|d| d.code).collect()
}

#[test]
fn shipped_specs_are_clean() {
    for name in ["example1", "example2", "example3", "example4"] {
        let (spec, samples, _) = example(name);
        assert!(validate_spec(&spec, &samples).is_empty(), "{name}");
    }
    let lp = ProblemSpec {
        sense: Sense::Maximize,
        n_vars: 3,
        objective: VectorSource::Fixed(vec![50.0, 70.0, 70.0]),
        constraints: vec![ConstraintSpec::fixed(vec![12.0, 2.0, 4.0], 1000.0)],
        k1: 1.0,
        k2: 0.0,
    };
    assert!(validate_spec(&lp, &SampleSets::new()).is_empty());
}

#[test]
fn weight_diagnostics() {
    let (spec, samples, _) = example("example1");
    let bad = ProblemSpec { k1: 0.6, k2: 0.6, ..spec.clone() };
    assert_eq!(codes(&bad, &samples), [DiagnosticCode::WeightsNotConvex]);
    let bad = ProblemSpec { k1: 1.5, k2: -0.5, ..spec };
    assert_eq!(codes(&bad, &samples), [DiagnosticCode::WeightOutOfRange; 2]);
}

#[test]
fn constraint_diagnostics() {
    let (spec, samples, _) = example("example2");
    assert_eq!(codes(&spec.with_alphas(&[0.0]), &samples), [DiagnosticCode::AlphaOutOfRange; 3]);
    assert_eq!(codes(&spec.with_alphas(&[1.0]), &samples), [DiagnosticCode::AlphaOutOfRange; 3]);
    let mut s = spec.clone();
    s.constraints[1].alpha = None;
    assert_eq!(codes(&s, &samples), [DiagnosticCode::AlphaMissing]);
    let mut s = spec.clone();
    s.constraints[0] = ConstraintSpec::random_row("zz", 1000.0, 0.01);
    assert_eq!(codes(&s, &samples), [DiagnosticCode::UnknownSampleSet]);
    let s = ProblemSpec { n_vars: 2, objective: VectorSource::Fixed(vec![1.0, 1.0]), ..spec };
    assert_eq!(codes(&s, &samples), [DiagnosticCode::DimensionMismatch; 3]);
    let (mut spec3, samples3, _) = example("example3");
    spec3.constraints[2] = ConstraintSpec::random_rhs(vec![2.0, 4.0, 3.5], "b", 3, 0.01);
    assert_eq!(codes(&spec3, &samples3), [DiagnosticCode::ColumnOutOfRange]);
    let mut tiny = samples3.clone();
    tiny.insert("b".into(), SampleSet::from_rows("b", &[vec![1.0, 2.0, 3.0]]).unwrap());
    let (spec3, _, _) = example("example3");
    assert_eq!(codes(&spec3, &tiny), [DiagnosticCode::SampleTooSmall; 3]);
    let empty = ProblemSpec { n_vars: 0, objective: VectorSource::Fixed(vec![]), constraints: vec![], ..spec3 };
    assert_eq!(codes(&empty, &tiny), [DiagnosticCode::EmptyProblem]);
}

#[test]
fn validation_is_pure() {
    let (spec, samples, _) = example("example4");
    let bad = ProblemSpec { k1: 0.9, ..spec.with_alphas(&[0.0]) };
    let (before, sets_before) = (bad.clone(), samples.clone());
    let first = validate_spec(&bad, &samples);
    assert_eq!(first, validate_spec(&bad, &samples));
    assert_eq!(bad, before);
    assert_eq!(samples, sets_before);
    assert!(first.iter().all(|d| !d.message.is_empty()));
}

/// A spec whose referenced sets have randomly chosen (possibly wrong) widths.
fn fuzz_case() -> impl Strategy<Value = (ProblemSpec, SampleSets)> {
    (1usize..4, 0usize..5, 1usize..4, prop::collection::vec((0usize..4, 1usize..5, 1usize..6, 0.01f64..0.5), 1..4))
        .prop_map(|(n, case, c_width, cons)| {
            let mut sets = Vec::new();
            let mut set = |id: String, d: usize, rows: usize| {
                let data = DMatrix::from_fn(rows, d, |r, j| 1.0 + ((r * 7 + j * 3) % 5) as f64 + 0.1 * r as f64);
                sets.push(SampleSet::new(id.clone(), data).unwrap());
                id
            };
            let objective = if case == 1 || case == 4 {
                VectorSource::Random(set("c".into(), c_width, 6))
            } else {
                VectorSource::Fixed(vec![1.0; n])
            };
            let constraints = cons
                .iter()
                .enumerate()
                .map(|(i, &(kind, d, rows, alpha))| match (case, kind) {
                    (2, _) => ConstraintSpec::random_row(set(format!("r{i}"), d, rows), 10.0, alpha),
                    (3, _) => ConstraintSpec::random_rhs(vec![1.0; n], set(format!("b{i}"), d, rows), kind, alpha),
                    (4, _) => ConstraintSpec::joint(set(format!("g{i}"), d, rows), alpha),
                    _ => ConstraintSpec::fixed(vec![1.0; d], 10.0),
                })
                .collect();
            let spec = ProblemSpec { sense: Sense::Minimize, n_vars: n, objective, constraints, k1: 0.5, k2: 0.5 };
            (spec, sample_map(sets))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn clean_specs_never_hit_dimension_errors((spec, samples) in fuzz_case()) {
        if validate_spec(&spec, &samples).is_empty() {
            let est = estimate_all(&spec, &samples, None).unwrap();
            match build(&spec, &est) {
                Err(TransformError::Dimension { .. }) => prop_assert!(false, "dimension error after clean validation"),
                Err(e) => prop_assert!(matches!(e, TransformError::MismatchedSampleSizes { .. }), "{e}"),
                Ok(p) => {
                    prop_assert!(p.check_dimensions().is_ok());
                    prop_assert!(!matches!(solve(&p, &SolverOptions::default()), Err(SolverError::Dimension(_))));
                }
            }
        }
    }
}
