//! Deterministic equivalents of chance-constrained programs.
//!
//! Which of `c`, `a_i`, `b_i` are sampled decides the case:
//!
//! | case | random data            | result                                      |
//! |------|------------------------|---------------------------------------------|
//! | I    | `c`                    | mean/std-dev weighted objective, LP rows    |
//! | II   | rows `a_i`             | `a_i'x + (eta/sqrt N) ||S_a^{1/2} x|| <= b_i` |
//! | III  | right-hand sides `b_i` | tightened LP rows                           |
//! | IV   | `c` and joint `(a_i, b_i)` | case I objective, cone over `(x, -1)`   |
//!
//! Any other mix is rejected. A program without random data is tagged
//! [`CaseTag::Deterministic`] and passes through unchanged.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;

use crate::elliptical::{t_quantile, DensityGenerator};
use crate::error::{SolverError, TransformError};
use crate::estimators::{estimate, EstimatorBundle};
use crate::linalg::psd_sqrt;
use crate::model::{
    ConeTerm, ConstraintKind, DeterministicProgram, ProblemSpec, ProgramConstraint, Provenance,
    RhsSource, SampleSets, Sense, Solution, VectorSource,
};
use crate::solver::{solve, SolverOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    Deterministic,
    I,
    II,
    III,
    IV,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Deterministic => "deterministic",
            CaseTag::I => "I",
            CaseTag::II => "II",
            CaseTag::III => "III",
            CaseTag::IV => "IV",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "deterministic" => CaseTag::Deterministic,
            "I" => CaseTag::I,
            "II" => CaseTag::II,
            "III" => CaseTag::III,
            "IV" => CaseTag::IV,
            _ => return None,
        })
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Estimator bundles keyed by sample-set id.
pub type Estimates = BTreeMap<String, EstimatorBundle>;

/// Estimates every sample set the spec refers to.
pub fn estimate_all(
    spec: &ProblemSpec,
    samples: &SampleSets,
    generator: Option<&DensityGenerator>,
) -> Result<Estimates, TransformError> {
    let mut out = Estimates::new();
    for id in spec.referenced_sets() {
        if out.contains_key(id) {
            continue;
        }
        let set = samples
            .get(id)
            .ok_or_else(|| TransformError::MissingEstimator(id.to_string()))?;
        if set.len() < 2 {
            return Err(TransformError::SampleTooSmall {
                id: id.to_string(),
                n: set.len(),
            });
        }
        out.insert(id.to_string(), estimate(set, generator)?);
    }
    Ok(out)
}

/// Classifies a spec by which slots are sampled.
pub fn detect_case(spec: &ProblemSpec) -> Result<CaseTag, TransformError> {
    let random_c = spec.objective.is_random();
    let (mut rows, mut rhs, mut joint) = (false, false, false);
    for (i, con) in spec.constraints.iter().enumerate() {
        match &con.kind {
            ConstraintKind::Separate { row, rhs: b } => {
                let r = row.is_random();
                let s = matches!(b, RhsSource::Random { .. });
                if r && s {
                    return Err(TransformError::UnsupportedMix(format!(
                        "constraint {} has a random row and a separately random rhs; \
                         use one joint sample set over (a_i, b_i)",
                        i + 1
                    )));
                }
                rows |= r;
                rhs |= s;
            }
            ConstraintKind::Joint { .. } => joint = true,
        }
    }
    match (random_c, rows, rhs, joint) {
        (false, false, false, false) => Ok(CaseTag::Deterministic),
        (true, false, false, false) => Ok(CaseTag::I),
        (false, true, false, false) => Ok(CaseTag::II),
        (false, false, true, false) => Ok(CaseTag::III),
        (true, false, false, true) => Ok(CaseTag::IV),
        _ => {
            let mut parts = Vec::new();
            if random_c {
                parts.push("c");
            }
            if rows {
                parts.push("rows a_i");
            }
            if rhs {
                parts.push("rhs b_i");
            }
            if joint {
                parts.push("joint (a_i, b_i)");
            }
            Err(TransformError::UnsupportedMix(format!(
                "random {}; encode partial randomness as a joint set with zero-variance columns",
                parts.join(" + ")
            )))
        }
    }
}

/// Builds the deterministic equivalent for whatever case the spec falls in.
pub fn build(spec: &ProblemSpec, estimates: &Estimates) -> Result<DeterministicProgram, TransformError> {
    match detect_case(spec)? {
        CaseTag::Deterministic => build_deterministic(spec),
        CaseTag::I => build_case1(spec, estimates),
        CaseTag::II => build_case2(spec, estimates),
        CaseTag::III => build_case3(spec, estimates),
        CaseTag::IV => build_case4(spec, estimates),
    }
}

fn expect_case(spec: &ProblemSpec, expected: CaseTag) -> Result<(), TransformError> {
    let found = detect_case(spec)?;
    if found != expected {
        return Err(TransformError::WrongCase {
            expected: expected.to_string(),
            found: found.to_string(),
        });
    }
    Ok(())
}

fn bundle<'a>(estimates: &'a Estimates, id: &str) -> Result<&'a EstimatorBundle, TransformError> {
    estimates
        .get(id)
        .ok_or_else(|| TransformError::MissingEstimator(id.to_string()))
}

fn root_of(id: &str, m: &DMatrix<f64>) -> Result<DMatrix<f64>, TransformError> {
    psd_sqrt(m).map_err(|source| TransformError::CovarianceRoot {
        id: id.to_string(),
        source,
    })
}

/// Cone term, or `None` when it vanishes identically.
fn cone(scale: f64, root: DMatrix<f64>, augmented: bool) -> Option<ConeTerm> {
    if scale == 0.0 || root.iter().all(|&v| v == 0.0) {
        None
    } else {
        Some(ConeTerm {
            scale,
            root,
            augmented,
        })
    }
}

fn check_len(constraint: usize, what: &str, got: usize, want: usize) -> Result<(), TransformError> {
    if got != want {
        return Err(TransformError::Dimension {
            constraint,
            reason: format!("{what} has length {got}, expected {want}"),
        });
    }
    Ok(())
}

fn fixed_cost(spec: &ProblemSpec) -> Result<Vec<f64>, TransformError> {
    match &spec.objective {
        VectorSource::Fixed(c) => {
            check_len(0, "objective", c.len(), spec.n_vars)?;
            Ok(c.clone())
        }
        VectorSource::Random(id) => Err(TransformError::MissingEstimator(id.clone())),
    }
}

/// Copies a constraint whose row and rhs are both fixed.
fn fixed_row(spec: &ProblemSpec, i: usize) -> Result<Option<ProgramConstraint>, TransformError> {
    if let ConstraintKind::Separate {
        row: VectorSource::Fixed(a),
        rhs: RhsSource::Fixed(b),
    } = &spec.constraints[i].kind
    {
        check_len(i + 1, "row", a.len(), spec.n_vars)?;
        return Ok(Some(ProgramConstraint::linear(a.clone(), -b)));
    }
    Ok(None)
}

fn alpha_of(spec: &ProblemSpec, i: usize) -> Result<f64, TransformError> {
    spec.constraints[i]
        .alpha
        .ok_or(TransformError::MissingAlpha(i + 1))
}

/// Upper quantile `F^{-1}(1 - alpha)` for a convex cone constraint.
fn safety_quantile(i: usize, alpha: f64, n: usize) -> Result<f64, TransformError> {
    if alpha > 0.5 {
        return Err(TransformError::NonConvexRisk {
            constraint: i + 1,
            alpha,
        });
    }
    Ok(t_quantile(n as u64 - 1, 1.0 - alpha)?)
}

fn require_n(b: &EstimatorBundle) -> Result<(), TransformError> {
    if b.n < 2 {
        return Err(TransformError::SampleTooSmall {
            id: b.id.clone(),
            n: b.n,
        });
    }
    Ok(())
}

/// Objective `k1 c_bar'x +/- k2 ||(S_c / N)^{1/2} x||`: the dispersion term is added
/// when minimizing and subtracted when maximizing.
fn random_objective(
    spec: &ProblemSpec,
    est_c: &EstimatorBundle,
) -> Result<(Vec<f64>, Option<ConeTerm>, Vec<f64>), TransformError> {
    require_n(est_c)?;
    check_len(0, "objective sample set", est_c.dim(), spec.n_vars)?;
    let c_bar: Vec<f64> = est_c.mean.iter().copied().collect();
    let linear = c_bar.iter().map(|v| spec.k1 * v).collect();
    let root = root_of(&est_c.id, &(&est_c.unbiased_cov / est_c.n as f64))?;
    let scale = match spec.sense {
        Sense::Minimize => spec.k2,
        Sense::Maximize => -spec.k2,
    };
    Ok((linear, cone(scale, root, false), c_bar))
}

fn program(
    spec: &ProblemSpec,
    case: CaseTag,
    linear_objective: Vec<f64>,
    cone_objective: Option<ConeTerm>,
    reference: Vec<f64>,
    constraints: Vec<ProgramConstraint>,
    quantiles: Vec<Option<f64>>,
) -> DeterministicProgram {
    let (k1, k2) = if spec.objective.is_random() {
        (spec.k1, spec.k2)
    } else {
        (1.0, 0.0)
    };
    DeterministicProgram {
        sense: spec.sense,
        linear_objective,
        cone_objective,
        constraints,
        reference_objective: reference,
        provenance: Provenance {
            case: Some(case),
            quantiles,
            k1,
            k2,
        },
    }
}

fn build_deterministic(spec: &ProblemSpec) -> Result<DeterministicProgram, TransformError> {
    expect_case(spec, CaseTag::Deterministic)?;
    let c = fixed_cost(spec)?;
    let mut cons = Vec::with_capacity(spec.constraints.len());
    for i in 0..spec.constraints.len() {
        cons.push(fixed_row(spec, i)?.expect("deterministic case has only fixed rows"));
    }
    let q = vec![None; cons.len()];
    Ok(program(spec, CaseTag::Deterministic, c.clone(), None, c, cons, q))
}

/// Case I: random cost vector, fixed constraints.
pub fn build_case1(spec: &ProblemSpec, estimates: &Estimates) -> Result<DeterministicProgram, TransformError> {
    expect_case(spec, CaseTag::I)?;
    let VectorSource::Random(id) = &spec.objective else {
        unreachable!()
    };
    let (linear, cone_obj, c_bar) = random_objective(spec, bundle(estimates, id)?)?;
    let mut cons = Vec::with_capacity(spec.constraints.len());
    for i in 0..spec.constraints.len() {
        cons.push(fixed_row(spec, i)?.expect("case I has only fixed rows"));
    }
    let q = vec![None; cons.len()];
    Ok(program(spec, CaseTag::I, linear, cone_obj, c_bar, cons, q))
}

/// Case II: random constraint rows, each `a_i'x + (eta_i / sqrt N) ||S_a^{1/2} x|| - b_i <= 0`
/// with `eta_i` the `1 - alpha_i` quantile of `t_{N-1}`.
pub fn build_case2(spec: &ProblemSpec, estimates: &Estimates) -> Result<DeterministicProgram, TransformError> {
    expect_case(spec, CaseTag::II)?;
    let c = fixed_cost(spec)?;
    let mut cons = Vec::with_capacity(spec.constraints.len());
    let mut q = Vec::with_capacity(spec.constraints.len());
    for (i, con) in spec.constraints.iter().enumerate() {
        if let Some(fixed) = fixed_row(spec, i)? {
            cons.push(fixed);
            q.push(None);
            continue;
        }
        let ConstraintKind::Separate {
            row: VectorSource::Random(id),
            rhs: RhsSource::Fixed(b),
        } = &con.kind
        else {
            unreachable!("case II rows are random with fixed rhs")
        };
        let est = bundle(estimates, id)?;
        require_n(est)?;
        check_len(i + 1, "row sample set", est.dim(), spec.n_vars)?;
        let eta = safety_quantile(i, alpha_of(spec, i)?, est.n)?;
        let root = root_of(id, &est.unbiased_cov)?;
        cons.push(ProgramConstraint {
            linear: est.mean.iter().copied().collect(),
            offset: -b,
            cone: cone(eta / (est.n as f64).sqrt(), root, false),
        });
        q.push(Some(eta));
    }
    Ok(program(spec, CaseTag::II, c.clone(), None, c, cons, q))
}

/// Case III: random right-hand sides, `a_i'x - b_bar_i - (delta_i / sqrt N) s_i <= 0`
/// with `delta_i` the `alpha_i` quantile of `t_{N-1}`. The result is a plain LP.
pub fn build_case3(spec: &ProblemSpec, estimates: &Estimates) -> Result<DeterministicProgram, TransformError> {
    expect_case(spec, CaseTag::III)?;
    let c = fixed_cost(spec)?;
    let mut cons = Vec::with_capacity(spec.constraints.len());
    let mut q = Vec::with_capacity(spec.constraints.len());
    for (i, con) in spec.constraints.iter().enumerate() {
        if let Some(fixed) = fixed_row(spec, i)? {
            cons.push(fixed);
            q.push(None);
            continue;
        }
        let ConstraintKind::Separate {
            row: VectorSource::Fixed(a),
            rhs: RhsSource::Random { set, column },
        } = &con.kind
        else {
            unreachable!("case III rows are fixed with random rhs")
        };
        check_len(i + 1, "row", a.len(), spec.n_vars)?;
        let est = bundle(estimates, set)?;
        require_n(est)?;
        if *column >= est.dim() {
            return Err(TransformError::Dimension {
                constraint: i + 1,
                reason: format!("rhs column {column} out of range for '{set}'"),
            });
        }
        let delta = t_quantile(est.n as u64 - 1, alpha_of(spec, i)?)?;
        let var = est.unbiased_cov[(*column, *column)];
        let sd = var.max(0.0).sqrt();
        cons.push(ProgramConstraint::linear(
            a.clone(),
            -est.mean[*column] - delta / (est.n as f64).sqrt() * sd,
        ));
        q.push(Some(delta));
    }
    Ok(program(spec, CaseTag::III, c.clone(), None, c, cons, q))
}

/// Case IV: random cost vector and joint `(a_i, b_i)` rows. With `y = (x', -1)'` each
/// constraint reads `g_bar_i'y + (tau_i / sqrt N) ||S_g^{1/2} y|| <= 0`; all joint sets
/// must share one sample size.
pub fn build_case4(spec: &ProblemSpec, estimates: &Estimates) -> Result<DeterministicProgram, TransformError> {
    expect_case(spec, CaseTag::IV)?;
    let VectorSource::Random(cid) = &spec.objective else {
        unreachable!()
    };
    let (linear, cone_obj, c_bar) = random_objective(spec, bundle(estimates, cid)?)?;
    let n = spec.n_vars;
    let mut common_n: Option<usize> = None;
    let mut cons = Vec::with_capacity(spec.constraints.len());
    let mut q = Vec::with_capacity(spec.constraints.len());
    for (i, con) in spec.constraints.iter().enumerate() {
        if let Some(fixed) = fixed_row(spec, i)? {
            cons.push(fixed);
            q.push(None);
            continue;
        }
        let ConstraintKind::Joint { set } = &con.kind else {
            unreachable!("case IV random rows are joint")
        };
        let est = bundle(estimates, set)?;
        require_n(est)?;
        check_len(i + 1, "joint sample set", est.dim(), n + 1)?;
        match common_n {
            None => common_n = Some(est.n),
            Some(first) if first != est.n => {
                return Err(TransformError::MismatchedSampleSizes {
                    first,
                    other: est.n,
                })
            }
            _ => {}
        }
        let tau = safety_quantile(i, alpha_of(spec, i)?, est.n)?;
        let root = root_of(set, &est.unbiased_cov)?;
        cons.push(ProgramConstraint {
            linear: est.mean.iter().take(n).copied().collect(),
            offset: -est.mean[n],
            cone: cone(tau / (est.n as f64).sqrt(), root, true),
        });
        q.push(Some(tau));
    }
    Ok(program(spec, CaseTag::IV, linear, cone_obj, c_bar, cons, q))
}

/// One point of a weight sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ParetoPoint {
    pub k1: f64,
    pub k2: f64,
    pub outcome: Result<Solution, SolverError>,
}

/// Re-solves the program for each `(k1, 1 - k1)` on the grid, in increasing `k1`.
/// Solver failures are kept per point and do not stop the sweep.
pub fn pareto_sweep(
    spec: &ProblemSpec,
    estimates: &Estimates,
    k1_grid: &[f64],
    options: &SolverOptions,
) -> Result<Vec<ParetoPoint>, TransformError> {
    let case = detect_case(spec)?;
    if !matches!(case, CaseTag::I | CaseTag::IV) {
        return Err(TransformError::WrongCase {
            expected: "I or IV".into(),
            found: case.to_string(),
        });
    }
    if let Some(&bad) = k1_grid.iter().find(|k| !(0.0..=1.0).contains(*k)) {
        return Err(TransformError::GridOutOfRange(bad));
    }
    let mut grid = k1_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let mut out = Vec::with_capacity(grid.len());
    for k1 in grid {
        let weighted = spec.with_k1(k1);
        let prog = build(&weighted, estimates)?;
        out.push(ParetoPoint {
            k1,
            k2: weighted.k2,
            outcome: solve(&prog, options),
        });
    }
    Ok(out)
}
