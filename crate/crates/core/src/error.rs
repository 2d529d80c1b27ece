use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPositiveSemidefinite { eigenvalue: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SampleError {
    #[error("sample set '{id}' has no rows")]
    Empty { id: String },
    #[error("sample set '{id}' has {rows} rows; at least {needed} required")]
    TooFewRows { id: String, rows: usize, needed: usize },
    #[error("sample set '{id}' has a non-finite value at row {row}, column {col}")]
    NonFinite { id: String, row: usize, col: usize },
    #[error("sample set '{id}' has zero columns")]
    NoColumns { id: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistributionError {
    #[error("unknown density generator '{0}'")]
    UnknownGenerator(String),
    #[error("invalid shape parameter for '{id}': {reason}")]
    InvalidShape { id: String, reason: String },
    #[error("probability {0} is outside the open interval (0, 1)")]
    ProbabilityOutOfRange(f64),
    #[error("degrees of freedom must be at least 1, got {0}")]
    InvalidDegreesOfFreedom(u64),
    #[error("scatter must be positive, got {0}")]
    NonPositiveScatter(f64),
    #[error("sample size {0} too small for a t statistic (need N >= 2)")]
    SampleTooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EstimatorError {
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error("maximum likelihood needs N >= d (N = {n}, d = {d})")]
    MleNeedsMoreRows { n: usize, d: usize },
    #[error("no finite maximizer of the profile likelihood inside ({lo:e}, {hi:e})")]
    NoMaximizer { lo: f64, hi: f64 },
    #[error("generator '{id}' has phi'(0) = {value}, expected a negative value")]
    NonNegativePhiPrime { id: String, value: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error("randomness pattern is not one of the supported cases: {0}")]
    UnsupportedMix(String),
    #[error("builder for case {expected} called on a case {found} problem")]
    WrongCase { expected: String, found: String },
    #[error("no estimator bundle for sample set '{0}'")]
    MissingEstimator(String),
    #[error("constraint {constraint}: {reason}")]
    Dimension { constraint: usize, reason: String },
    #[error("constraint {0} is random but has no alpha")]
    MissingAlpha(usize),
    #[error("constraint {constraint}: alpha = {alpha} > 0.5 yields a non-convex deterministic equivalent")]
    NonConvexRisk { constraint: usize, alpha: f64 },
    #[error("joint sample sets disagree on N ({first} vs {other})")]
    MismatchedSampleSizes { first: usize, other: usize },
    #[error("sample set '{id}' has N = {n}; at least 2 draws are required")]
    SampleTooSmall { id: String, n: usize },
    #[error("covariance root for '{id}': {source}")]
    CovarianceRoot {
        id: String,
        #[source]
        source: LinalgError,
    },
    #[error("k1 grid value {0} outside [0, 1]")]
    GridOutOfRange(f64),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
    #[error(transparent)]
    Estimator(#[from] EstimatorError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("program dimensions are inconsistent: {0}")]
    Dimension(String),
    #[error("program is not convex: {0}")]
    NonConvex(String),
    #[error("invalid solver options: {0}")]
    Options(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    #[error(transparent)]
    Distribution(#[from] DistributionError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error("invariance test needs N >= 3 and M >= 100 (got N = {n}, M = {m})")]
    InvarianceSize { n: usize, m: usize },
    #[error("coverage test needs at least one replication")]
    NoReplications,
    #[error("decision vector has length {got}, program has {expected} variables")]
    DecisionLength { got: usize, expected: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// File ingestion failures, with the position of the offending token when known.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum InputError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}
