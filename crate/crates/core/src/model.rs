//! Problem descriptions and the deterministic program that every case reduces to.
//!
//! A [`ProblemSpec`] says which of `c`, `a_i`, `b_i` are fixed and which come from
//! sample sets. The transforms turn it into a [`DeterministicProgram`]: a linear
//! objective plus an optional norm term, and constraints of the form
//!
//! ```text
//! u_i'x + e_i + k_i * ||L_i y|| <= 0,    x >= 0,
//! ```
//!
//! where `y = x`, or `y = (x', -1)'` for constraints built from joint `(a_i, b_i)`
//! samples.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;

use crate::error::SampleError;
use crate::transform::CaseTag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Minimize,
    Maximize,
}

impl Sense {
    pub fn as_str(self) -> &'static str {
        match self {
            Sense::Minimize => "minimize",
            Sense::Maximize => "maximize",
        }
    }
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A vector slot (cost vector or constraint row) that is either known or sampled.
#[derive(Debug, Clone, PartialEq)]
pub enum VectorSource {
    Fixed(Vec<f64>),
    /// Id of a sample set whose rows are draws of the whole vector.
    Random(String),
}

impl VectorSource {
    pub fn is_random(&self) -> bool {
        matches!(self, VectorSource::Random(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RhsSource {
    Fixed(f64),
    /// Column `column` of the sample set `set` holds draws of this right-hand side.
    Random { set: String, column: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConstraintKind {
    Separate { row: VectorSource, rhs: RhsSource },
    /// Sample set over `(a_i', b_i)'`, dimension `n + 1`.
    Joint { set: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSpec {
    pub kind: ConstraintKind,
    /// Risk level; required for random constraints, ignored for fixed ones.
    pub alpha: Option<f64>,
}

impl ConstraintSpec {
    pub fn fixed(row: Vec<f64>, rhs: f64) -> Self {
        Self {
            kind: ConstraintKind::Separate {
                row: VectorSource::Fixed(row),
                rhs: RhsSource::Fixed(rhs),
            },
            alpha: None,
        }
    }

    pub fn random_row(set: impl Into<String>, rhs: f64, alpha: f64) -> Self {
        Self {
            kind: ConstraintKind::Separate {
                row: VectorSource::Random(set.into()),
                rhs: RhsSource::Fixed(rhs),
            },
            alpha: Some(alpha),
        }
    }

    pub fn random_rhs(row: Vec<f64>, set: impl Into<String>, column: usize, alpha: f64) -> Self {
        Self {
            kind: ConstraintKind::Separate {
                row: VectorSource::Fixed(row),
                rhs: RhsSource::Random {
                    set: set.into(),
                    column,
                },
            },
            alpha: Some(alpha),
        }
    }

    pub fn joint(set: impl Into<String>, alpha: f64) -> Self {
        Self {
            kind: ConstraintKind::Joint { set: set.into() },
            alpha: Some(alpha),
        }
    }

    pub fn is_random(&self) -> bool {
        match &self.kind {
            ConstraintKind::Separate { row, rhs } => {
                row.is_random() || matches!(rhs, RhsSource::Random { .. })
            }
            ConstraintKind::Joint { .. } => true,
        }
    }

    /// Sample-set ids this constraint refers to, in declaration order.
    pub fn referenced_sets(&self) -> Vec<&str> {
        match &self.kind {
            ConstraintKind::Separate { row, rhs } => {
                let mut ids = Vec::new();
                if let VectorSource::Random(id) = row {
                    ids.push(id.as_str());
                }
                if let RhsSource::Random { set, .. } = rhs {
                    ids.push(set.as_str());
                }
                ids
            }
            ConstraintKind::Joint { set } => vec![set.as_str()],
        }
    }
}

/// Declarative stochastic linear program.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub sense: Sense,
    pub n_vars: usize,
    pub objective: VectorSource,
    pub constraints: Vec<ConstraintSpec>,
    /// Weight on the mean of `c'x`.
    pub k1: f64,
    /// Weight on the standard deviation of `c'x`.
    pub k2: f64,
}

impl ProblemSpec {
    /// Copy with `(k1, 1 - k1)` weights.
    pub fn with_k1(&self, k1: f64) -> Self {
        Self {
            k1,
            k2: 1.0 - k1,
            ..self.clone()
        }
    }

    /// Copy with every random constraint's alpha replaced.
    pub fn with_alphas(&self, alphas: &[f64]) -> Self {
        let mut out = self.clone();
        for (i, c) in out.constraints.iter_mut().enumerate() {
            if let Some(&a) = alphas.get(i).or(alphas.last()) {
                c.alpha = Some(a);
            }
        }
        out
    }

    pub fn referenced_sets(&self) -> Vec<&str> {
        let mut ids = Vec::new();
        if let VectorSource::Random(id) = &self.objective {
            ids.push(id.as_str());
        }
        for c in &self.constraints {
            ids.extend(c.referenced_sets());
        }
        ids
    }
}

/// `N x d` matrix of i.i.d. draws for one random vector; one row per draw.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub id: String,
    pub data: DMatrix<f64>,
    pub columns: Vec<String>,
    /// Free-form origin note (file path, generator and seed, ...).
    pub provenance: Option<String>,
}

impl SampleSet {
    pub fn new(id: impl Into<String>, data: DMatrix<f64>) -> Result<Self, SampleError> {
        let id = id.into();
        if data.nrows() == 0 {
            return Err(SampleError::Empty { id });
        }
        if data.ncols() == 0 {
            return Err(SampleError::NoColumns { id });
        }
        for row in 0..data.nrows() {
            for col in 0..data.ncols() {
                if !data[(row, col)].is_finite() {
                    return Err(SampleError::NonFinite { id, row, col });
                }
            }
        }
        let columns = (1..=data.ncols()).map(|j| format!("x{j}")).collect();
        Ok(Self {
            id,
            data,
            columns,
            provenance: None,
        })
    }

    pub fn from_rows(id: impl Into<String>, rows: &[Vec<f64>]) -> Result<Self, SampleError> {
        let id = id.into();
        let d = rows.first().map_or(0, Vec::len);
        if rows.is_empty() {
            return Err(SampleError::Empty { id });
        }
        let flat: Vec<f64> = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), d, "ragged rows");
                r.iter().copied()
            })
            .collect();
        Self::new(id, DMatrix::from_row_slice(rows.len(), d, &flat))
    }

    pub fn with_columns(mut self, columns: Vec<String>) -> Self {
        assert_eq!(columns.len(), self.dim());
        self.columns = columns;
        self
    }

    pub fn with_provenance(mut self, note: impl Into<String>) -> Self {
        self.provenance = Some(note.into());
        self
    }

    /// Sample size `N`.
    pub fn len(&self) -> usize {
        self.data.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.data.nrows() == 0
    }

    /// Column dimension `d`.
    pub fn dim(&self) -> usize {
        self.data.ncols()
    }
}

/// Sample sets keyed by id.
pub type SampleSets = BTreeMap<String, SampleSet>;

pub fn sample_map(sets: impl IntoIterator<Item = SampleSet>) -> SampleSets {
    sets.into_iter().map(|s| (s.id.clone(), s)).collect()
}

/// `scale * ||root * y||`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeTerm {
    pub scale: f64,
    pub root: DMatrix<f64>,
    /// When set, `y = (x', -1)'` and `root` has `n + 1` columns.
    pub augmented: bool,
}

impl ConeTerm {
    /// `root * y`.
    pub fn image(&self, x: &[f64]) -> Vec<f64> {
        let cols = self.root.ncols();
        (0..self.root.nrows())
            .map(|r| {
                let mut acc = 0.0;
                for (j, xj) in x.iter().enumerate().take(cols) {
                    acc += self.root[(r, j)] * xj;
                }
                if self.augmented {
                    acc -= self.root[(r, cols - 1)];
                }
                acc
            })
            .collect()
    }

    pub fn norm(&self, x: &[f64]) -> f64 {
        crate::linalg::norm(&self.image(x))
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        if self.scale == 0.0 {
            return 0.0;
        }
        self.scale * self.norm(x)
    }

    /// Number of decision-variable columns of the root.
    pub fn var_cols(&self) -> usize {
        self.root.ncols() - usize::from(self.augmented)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProgramConstraint {
    pub linear: Vec<f64>,
    pub offset: f64,
    pub cone: Option<ConeTerm>,
}

impl ProgramConstraint {
    pub fn linear(linear: Vec<f64>, offset: f64) -> Self {
        Self {
            linear,
            offset,
            cone: None,
        }
    }

    /// Left-hand side `u'x + e + k ||L y||`; the constraint holds when this is `<= 0`.
    pub fn value(&self, x: &[f64]) -> f64 {
        crate::linalg::dot(&self.linear, x)
            + self.offset
            + self.cone.as_ref().map_or(0.0, |c| c.value(x))
    }
}

/// Where a program came from; carried into reports.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Provenance {
    pub case: Option<CaseTag>,
    /// Student-t quantile used by each constraint, if any.
    pub quantiles: Vec<Option<f64>>,
    pub k1: f64,
    pub k2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeterministicProgram {
    pub sense: Sense,
    pub linear_objective: Vec<f64>,
    /// Signed: for maximization a dispersion penalty has a negative scale.
    pub cone_objective: Option<ConeTerm>,
    pub constraints: Vec<ProgramConstraint>,
    /// Unweighted mean cost `c`, used to report the plain objective `z = c'x`.
    pub reference_objective: Vec<f64>,
    pub provenance: Provenance,
}

impl DeterministicProgram {
    /// Plain LP `sense c'x  s.t.  A x <= b, x >= 0`.
    pub fn lp(sense: Sense, c: Vec<f64>, rows: &[Vec<f64>], rhs: &[f64]) -> Self {
        let constraints = rows
            .iter()
            .zip(rhs)
            .map(|(row, &b)| ProgramConstraint::linear(row.clone(), -b))
            .collect();
        Self {
            sense,
            linear_objective: c.clone(),
            cone_objective: None,
            constraints,
            reference_objective: c,
            provenance: Provenance {
                k1: 1.0,
                ..Provenance::default()
            },
        }
    }

    pub fn n_vars(&self) -> usize {
        self.linear_objective.len()
    }

    /// True when no cone term is present (or all cone scales are zero).
    pub fn is_linear(&self) -> bool {
        let zero = |c: &Option<ConeTerm>| c.as_ref().is_none_or(|c| c.scale == 0.0);
        zero(&self.cone_objective) && self.constraints.iter().all(|c| zero(&c.cone))
    }

    /// Program objective `Z(x)`.
    pub fn objective_value(&self, x: &[f64]) -> f64 {
        crate::linalg::dot(&self.linear_objective, x)
            + self.cone_objective.as_ref().map_or(0.0, |c| c.value(x))
    }

    /// Plain objective `z(x) = c'x`.
    pub fn reference_value(&self, x: &[f64]) -> f64 {
        crate::linalg::dot(&self.reference_objective, x)
    }

    /// Largest violation over all constraints and the bounds `x >= 0`; zero when feasible.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let cons = self
            .constraints
            .iter()
            .map(|c| c.value(x).max(0.0))
            .fold(0.0, f64::max);
        let bounds = x.iter().map(|&v| (-v).max(0.0)).fold(0.0, f64::max);
        cons.max(bounds)
    }

    pub fn check_dimensions(&self) -> Result<(), crate::error::SolverError> {
        use crate::error::SolverError;
        let n = self.n_vars();
        if n == 0 {
            return Err(SolverError::Dimension("no decision variables".into()));
        }
        if self.reference_objective.len() != n {
            return Err(SolverError::Dimension(format!(
                "reference objective has length {}, expected {n}",
                self.reference_objective.len()
            )));
        }
        let check_cone = |what: String, c: &ConeTerm| -> Result<(), SolverError> {
            let want = n + usize::from(c.augmented);
            if c.root.ncols() != want {
                return Err(SolverError::Dimension(format!(
                    "{what}: cone root has {} columns, expected {want}",
                    c.root.ncols()
                )));
            }
            if !c.scale.is_finite() || c.root.iter().any(|v| !v.is_finite()) {
                return Err(SolverError::Dimension(format!("{what}: non-finite cone term")));
            }
            Ok(())
        };
        if let Some(c) = &self.cone_objective {
            if c.augmented {
                return Err(SolverError::Dimension(
                    "objective cone term cannot be augmented".into(),
                ));
            }
            check_cone("objective".into(), c)?;
        }
        for (i, con) in self.constraints.iter().enumerate() {
            if con.linear.len() != n {
                return Err(SolverError::Dimension(format!(
                    "constraint {}: linear part has length {}, expected {n}",
                    i + 1,
                    con.linear.len()
                )));
            }
            if let Some(c) = &con.cone {
                check_cone(format!("constraint {}", i + 1), c)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
    MaxIterations,
    NumericalFailure,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::Infeasible => "infeasible",
            SolveStatus::Unbounded => "unbounded",
            SolveStatus::MaxIterations => "max_iterations",
            SolveStatus::NumericalFailure => "numerical_failure",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "optimal" => SolveStatus::Optimal,
            "infeasible" => SolveStatus::Infeasible,
            "unbounded" => SolveStatus::Unbounded,
            "max_iterations" => SolveStatus::MaxIterations,
            "numerical_failure" => SolveStatus::NumericalFailure,
            _ => return None,
        })
    }
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which branch of the solver produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveMethod {
    Simplex,
    Barrier,
}

impl SolveMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveMethod::Simplex => "simplex",
            SolveMethod::Barrier => "barrier",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "simplex" => Some(SolveMethod::Simplex),
            "barrier" => Some(SolveMethod::Barrier),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub x: Vec<f64>,
    /// Program objective `Z(x)` (weighted mean/dispersion where applicable).
    pub objective: f64,
    /// Plain objective `z(x) = c'x`.
    pub plain_objective: f64,
    pub status: SolveStatus,
    pub max_constraint_violation: f64,
    pub kkt_residual: f64,
    pub method: SolveMethod,
    pub iterations: usize,
}

impl Solution {
    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }
}

/// Machine-readable diagnostic codes from [`validate_spec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiagnosticCode {
    EmptyProblem,
    WeightOutOfRange,
    WeightsNotConvex,
    AlphaOutOfRange,
    AlphaMissing,
    UnknownSampleSet,
    DimensionMismatch,
    ColumnOutOfRange,
    SampleTooSmall,
    NonFiniteValue,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::EmptyProblem => "EMPTY_PROBLEM",
            DiagnosticCode::WeightOutOfRange => "WEIGHT_OUT_OF_RANGE",
            DiagnosticCode::WeightsNotConvex => "WEIGHTS_NOT_CONVEX",
            DiagnosticCode::AlphaOutOfRange => "ALPHA_OUT_OF_RANGE",
            DiagnosticCode::AlphaMissing => "ALPHA_MISSING",
            DiagnosticCode::UnknownSampleSet => "UNKNOWN_SAMPLE_SET",
            DiagnosticCode::DimensionMismatch => "DIMENSION_MISMATCH",
            DiagnosticCode::ColumnOutOfRange => "COLUMN_OUT_OF_RANGE",
            DiagnosticCode::SampleTooSmall => "SAMPLE_TOO_SMALL",
            DiagnosticCode::NonFiniteValue => "NON_FINITE_VALUE",
        }
    }
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Checks a spec against its sample sets. Returns one diagnostic per violation, in a
/// fixed order (weights, objective, then constraints in declaration order); an empty
/// list means the spec is safe to transform.
pub fn validate_spec(spec: &ProblemSpec, samples: &SampleSets) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut push = |code, message: String| out.push(Diagnostic { code, message });
    let n = spec.n_vars;

    if n == 0 {
        push(DiagnosticCode::EmptyProblem, "n_vars must be positive".into());
    }

    let mut weights_ok = true;
    for (name, w) in [("k1", spec.k1), ("k2", spec.k2)] {
        if !w.is_finite() || !(0.0..=1.0).contains(&w) {
            weights_ok = false;
            push(
                DiagnosticCode::WeightOutOfRange,
                format!("{name} = {w} must lie in [0, 1]"),
            );
        }
    }
    if weights_ok && (spec.k1 + spec.k2 - 1.0).abs() > WEIGHT_SUM_TOL {
        push(
            DiagnosticCode::WeightsNotConvex,
            format!("k1 + k2 = {} but must equal 1", spec.k1 + spec.k2),
        );
    }

    check_vector(&mut push, samples, "objective", &spec.objective, n);

    for (idx, con) in spec.constraints.iter().enumerate() {
        let label = format!("constraint {}", idx + 1);
        match &con.kind {
            ConstraintKind::Separate { row, rhs } => {
                check_vector(&mut push, samples, &format!("{label} row"), row, n);
                match rhs {
                    RhsSource::Fixed(b) => {
                        if !b.is_finite() {
                            push(
                                DiagnosticCode::NonFiniteValue,
                                format!("{label} rhs is not finite"),
                            );
                        }
                    }
                    RhsSource::Random { set, column } => match samples.get(set) {
                        None => push(
                            DiagnosticCode::UnknownSampleSet,
                            format!("{label} rhs refers to unknown sample set '{set}'"),
                        ),
                        Some(s) => {
                            if *column >= s.dim() {
                                push(
                                    DiagnosticCode::ColumnOutOfRange,
                                    format!(
                                        "{label} rhs column {column} out of range for '{set}' (d = {})",
                                        s.dim()
                                    ),
                                );
                            }
                            check_size(&mut push, &label, s);
                        }
                    },
                }
            }
            ConstraintKind::Joint { set } => {
                check_set(&mut push, samples, &format!("{label} joint"), set, n + 1)
            }
        }
        match con.alpha {
            Some(a) if !(a > 0.0 && a < 1.0) => push(
                DiagnosticCode::AlphaOutOfRange,
                format!("{label} alpha = {a} must lie in (0, 1)"),
            ),
            None if con.is_random() => push(
                DiagnosticCode::AlphaMissing,
                format!("{label} is random but has no alpha"),
            ),
            _ => {}
        }
    }
    out
}

fn check_vector(
    push: &mut impl FnMut(DiagnosticCode, String),
    samples: &SampleSets,
    what: &str,
    src: &VectorSource,
    want: usize,
) {
    match src {
        VectorSource::Fixed(v) => {
            if v.len() != want {
                push(
                    DiagnosticCode::DimensionMismatch,
                    format!("{what} has {} entries, expected {want}", v.len()),
                );
            }
            if v.iter().any(|x| !x.is_finite()) {
                push(
                    DiagnosticCode::NonFiniteValue,
                    format!("{what} has a non-finite entry"),
                );
            }
        }
        VectorSource::Random(id) => check_set(push, samples, what, id, want),
    }
}

fn check_set(
    push: &mut impl FnMut(DiagnosticCode, String),
    samples: &SampleSets,
    what: &str,
    id: &str,
    want: usize,
) {
    match samples.get(id) {
        None => push(
            DiagnosticCode::UnknownSampleSet,
            format!("{what} refers to unknown sample set '{id}'"),
        ),
        Some(s) => {
            if s.dim() != want {
                push(
                    DiagnosticCode::DimensionMismatch,
                    format!("{what}: sample set '{id}' has d = {}, expected {want}", s.dim()),
                );
            }
            check_size(push, what, s);
        }
    }
}

fn check_size(push: &mut impl FnMut(DiagnosticCode, String), what: &str, s: &SampleSet) {
    if s.len() < 2 {
        push(
            DiagnosticCode::SampleTooSmall,
            format!("{what}: sample set '{}' has N = {} (need N >= 2)", s.id, s.len()),
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1() -> ProblemSpec {
        ProblemSpec {
            sense: Sense::Maximize,
            n_vars: 3,
            objective: VectorSource::Fixed(vec![50.0, 70.0, 70.0]),
            constraints: vec![
                ConstraintSpec::fixed(vec![12.0, 2.0, 4.0], 1000.0),
                ConstraintSpec::fixed(vec![7.0, 5.0, 12.0], 1500.0),
                ConstraintSpec::fixed(vec![2.0, 4.0, 3.5], 750.0),
            ],
            k1: 1.0,
            k2: 0.0,
        }
    }

    fn codes(d: &[Diagnostic]) -> Vec<DiagnosticCode> {
        d.iter().map(|d| d.code).collect()
    }

    #[test]
    fn example1_is_clean() {
        assert!(validate_spec(&example1(), &SampleSets::new()).is_empty());
    }

    #[test]
    fn weights_must_sum_to_one() {
        let mut s = example1();
        s.k1 = 0.6;
        s.k2 = 0.6;
        assert_eq!(
            codes(&validate_spec(&s, &SampleSets::new())),
            [DiagnosticCode::WeightsNotConvex]
        );
    }

    #[test]
    fn alpha_zero_rejected() {
        let mut s = example1();
        s.constraints[0].alpha = Some(0.0);
        assert_eq!(
            codes(&validate_spec(&s, &SampleSets::new())),
            [DiagnosticCode::AlphaOutOfRange]
        );
    }

    #[test]
    fn unresolved_and_mismatched_sets() {
        let mut s = example1();
        s.objective = VectorSource::Random("c".into());
        s.constraints[1] = ConstraintSpec::random_row("a2", 1500.0, 0.05);
        s.constraints[2] = ConstraintSpec::random_rhs(vec![2.0, 4.0, 3.5], "b", 5, 0.05);
        let c = SampleSet::from_rows("c", &[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let b = SampleSet::from_rows("b", &[vec![1.0, 2.0, 3.0]]).unwrap();
        let d = validate_spec(&s, &sample_map([c, b]));
        assert_eq!(
            codes(&d),
            [
                DiagnosticCode::DimensionMismatch,
                DiagnosticCode::UnknownSampleSet,
                DiagnosticCode::ColumnOutOfRange,
                DiagnosticCode::SampleTooSmall,
            ]
        );
    }

    #[test]
    fn random_constraint_needs_alpha() {
        let mut s = example1();
        let a = SampleSet::from_rows("a1", &[vec![1.0, 2.0, 3.0], vec![2.0, 2.0, 2.0]]).unwrap();
        s.constraints[0] = ConstraintSpec::random_row("a1", 1000.0, 0.1);
        s.constraints[0].alpha = None;
        assert_eq!(
            codes(&validate_spec(&s, &sample_map([a]))),
            [DiagnosticCode::AlphaMissing]
        );
    }

    #[test]
    fn validation_is_deterministic() {
        let mut s = example1();
        s.k1 = -1.0;
        s.constraints[2].alpha = Some(2.0);
        s.objective = VectorSource::Fixed(vec![1.0, f64::NAN]);
        let a = validate_spec(&s, &SampleSets::new());
        let b = validate_spec(&s, &SampleSets::new());
        assert_eq!(a, b);
        assert_eq!(a.len(), 4);
    }

    #[test]
    fn cone_image_augmented() {
        let cone = ConeTerm {
            scale: 2.0,
            root: DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.0, 3.0])),
            augmented: true,
        };
        // y = (3, 4, -1) -> image (3, 4, -3)
        assert_eq!(cone.image(&[3.0, 4.0]), vec![3.0, 4.0, -3.0]);
        assert!((cone.value(&[3.0, 4.0]) - 2.0 * 34f64.sqrt()).abs() < 1e-12);
    }
}
