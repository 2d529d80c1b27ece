//! Problem spec files (TOML).
//!
//! ```toml
//! sense = "maximize"
//! n_vars = 3
//! objective = "c"            # sample-set id, or a literal array
//! k1 = 0.5                   # optional, default 1
//! k2 = 0.5                   # optional, default 1 - k1
//!
//! [[constraint]]
//! row = "a1"                 # sample-set id, or a literal array
//! rhs = 1000                 # number, or { samples = "b", column = 1 }
//! alpha = 0.01
//!
//! [[constraint]]
//! joint = "g1"               # N x (n_vars + 1) sample set holding (row, rhs)
//! alpha = 0.01
//! ```
//!
//! Columns of a random right-hand side are 1-based. There is no `case` key: the case is
//! always detected from which parts are random.

use serde::Deserialize;

use crate::error::InputError;
use crate::model::{ConstraintKind, ConstraintSpec, ProblemSpec, RhsSource, Sense, VectorSource};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    sense: String,
    n_vars: usize,
    objective: RawVector,
    k1: Option<f64>,
    k2: Option<f64>,
    #[serde(default)]
    constraint: Vec<RawConstraint>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawVector {
    Literal(Vec<f64>),
    Samples(String),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawRhs {
    Literal(f64),
    Samples { samples: String, column: usize },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConstraint {
    row: Option<RawVector>,
    rhs: Option<RawRhs>,
    joint: Option<String>,
    alpha: Option<f64>,
}

/// `(line, column)`, both 1-based, of a byte offset.
pub(crate) fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.len(), |p| before.len() - p - 1) + 1;
    (line, column)
}

impl From<RawVector> for VectorSource {
    fn from(v: RawVector) -> Self {
        match v {
            RawVector::Literal(a) => VectorSource::Fixed(a),
            RawVector::Samples(id) => VectorSource::Random(id),
        }
    }
}

fn convert_constraint(index: usize, raw: RawConstraint) -> Result<ConstraintSpec, String> {
    let kind = match (raw.joint, raw.row, raw.rhs) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
            return Err(format!(
                "JOINT_CONFLICT: constraint {index} sets `joint` together with `row`/`rhs`"
            ))
        }
        (Some(set), None, None) => ConstraintKind::Joint { set },
        (None, Some(row), Some(rhs)) => ConstraintKind::Separate {
            row: row.into(),
            rhs: match rhs {
                RawRhs::Literal(b) => RhsSource::Fixed(b),
                RawRhs::Samples { samples, column } => {
                    if column == 0 {
                        return Err(format!("constraint {index}: rhs column is 1-based"));
                    }
                    RhsSource::Random {
                        set: samples,
                        column: column - 1,
                    }
                }
            },
        },
        (None, None, _) => return Err(format!("constraint {index}: missing `row`")),
        (None, Some(_), None) => return Err(format!("constraint {index}: missing `rhs`")),
    };
    Ok(ConstraintSpec {
        kind,
        alpha: raw.alpha,
    })
}

/// Parses spec text. `path` is only used in error messages.
pub fn parse_spec(text: &str, path: &str) -> Result<ProblemSpec, InputError> {
    let raw: RawSpec = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| position(text, s.start));
        InputError::Parse {
            path: path.to_string(),
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    let invalid = |message: String| InputError::Invalid {
        path: path.to_string(),
        message,
    };
    let sense = match raw.sense.to_ascii_lowercase().as_str() {
        "maximize" | "max" => Sense::Maximize,
        "minimize" | "min" => Sense::Minimize,
        other => return Err(invalid(format!("unknown sense `{other}`"))),
    };
    let k1 = raw.k1.unwrap_or(1.0);
    let k2 = raw.k2.unwrap_or(1.0 - k1);
    let constraints = raw
        .constraint
        .into_iter()
        .enumerate()
        .map(|(i, c)| convert_constraint(i + 1, c))
        .collect::<Result<Vec<_>, _>>()
        .map_err(invalid)?;
    Ok(ProblemSpec {
        sense,
        n_vars: raw.n_vars,
        objective: raw.objective.into(),
        constraints,
        k1,
        k2,
    })
}

pub fn read_spec(path: &str) -> Result<ProblemSpec, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })?;
    parse_spec(&text, path)
}

fn vector_toml(v: &VectorSource) -> String {
    match v {
        VectorSource::Fixed(a) => {
            let items: Vec<String> = a.iter().map(|x| format!("{x:?}")).collect();
            format!("[{}]", items.join(", "))
        }
        VectorSource::Random(id) => format!("{id:?}"),
    }
}

/// Inverse of [`parse_spec`].
pub fn write_spec(spec: &ProblemSpec) -> String {
    let mut out = format!(
        "sense = \"{}\"\nn_vars = {}\nobjective = {}\nk1 = {:?}\nk2 = {:?}\n",
        spec.sense.as_str(),
        spec.n_vars,
        vector_toml(&spec.objective),
        spec.k1,
        spec.k2
    );
    for c in &spec.constraints {
        out.push_str("\n[[constraint]]\n");
        match &c.kind {
            ConstraintKind::Joint { set } => out.push_str(&format!("joint = {set:?}\n")),
            ConstraintKind::Separate { row, rhs } => {
                out.push_str(&format!("row = {}\n", vector_toml(row)));
                match rhs {
                    RhsSource::Fixed(b) => out.push_str(&format!("rhs = {b:?}\n")),
                    RhsSource::Random { set, column } => out.push_str(&format!(
                        "rhs = {{ samples = {set:?}, column = {} }}\n",
                        column + 1
                    )),
                }
            }
        }
        if let Some(a) = c.alpha {
            out.push_str(&format!("alpha = {a:?}\n"));
        }
    }
    out
}
