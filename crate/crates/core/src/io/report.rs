//! Solve reports: a line-oriented `key = value` document with dotted keys, and a
//! plain-text table with one row per variable followed by the objective values.
//!
//! Structured field set, in emission order:
//!
//! | key | value |
//! |---|---|
//! | `report.version` | integer, currently 1 |
//! | `problem.case` | `deterministic`, `I`, `II`, `III` or `IV` |
//! | `problem.sense` | `maximize` or `minimize` |
//! | `problem.n_vars`, `problem.constraints` | integers |
//! | `problem.k1`, `problem.k2` | objective weights |
//! | `provenance.quantile.<i>` | quantile used by constraint `i` (1-based), absent for fixed rows |
//! | `provenance.estimator.<id>.n` | sample size behind estimator `id` |
//! | `provenance.estimator.<id>.checksum` | hex SHA-256 of that estimator bundle |
//! | `solution.status`, `solution.method` | strings |
//! | `solution.iterations` | integer |
//! | `solution.x.<j>` | decision variable `j` (1-based) |
//! | `solution.Z` | weighted objective |
//! | `solution.z` | plain linear objective at the mean |
//! | `solution.max_constraint_violation`, `solution.kkt_residual` | residuals |
//!
//! Floats are written in shortest round-trip form (`nan`/`inf` for non-finite values),
//! so parsing a report and rendering it again is byte-identical. The document is valid
//! TOML.

use std::fmt::Write as _;

use toml::{Table, Value};

use crate::error::InputError;
use crate::estimators::EstimatorBundle;
use crate::model::{Sense, Solution, SolveMethod, SolveStatus};
use crate::transform::{CaseTag, ParetoPoint};

pub const REPORT_VERSION: i64 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorStamp {
    pub id: String,
    pub n: usize,
    pub checksum: String,
}

impl From<&EstimatorBundle> for EstimatorStamp {
    fn from(b: &EstimatorBundle) -> Self {
        Self {
            id: b.id.clone(),
            n: b.n,
            checksum: b.checksum(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub case: CaseTag,
    pub sense: Sense,
    pub k1: f64,
    pub k2: f64,
    pub quantiles: Vec<Option<f64>>,
    pub estimators: Vec<EstimatorStamp>,
    pub solution: Solution,
}

/// Shortest round-trip float literal.
pub fn float(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:?}")
    }
}

pub fn key_segment(s: &str) -> String {
    if !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-') {
        s.to_string()
    } else {
        format!("{s:?}")
    }
}

pub fn render_structured(r: &SolveReport) -> String {
    let mut o = String::new();
    let s = &r.solution;
    let _ = writeln!(o, "report.version = {REPORT_VERSION}");
    let _ = writeln!(o, "problem.case = \"{}\"", r.case.as_str());
    let _ = writeln!(o, "problem.sense = \"{}\"", r.sense.as_str());
    let _ = writeln!(o, "problem.n_vars = {}", s.x.len());
    let _ = writeln!(o, "problem.constraints = {}", r.quantiles.len());
    let _ = writeln!(o, "problem.k1 = {}", float(r.k1));
    let _ = writeln!(o, "problem.k2 = {}", float(r.k2));
    for (i, q) in r.quantiles.iter().enumerate() {
        if let Some(q) = q {
            let _ = writeln!(o, "provenance.quantile.{} = {}", i + 1, float(*q));
        }
    }
    let mut stamps: Vec<&EstimatorStamp> = r.estimators.iter().collect();
    stamps.sort_by(|a, b| a.id.cmp(&b.id));
    for e in stamps {
        let id = key_segment(&e.id);
        let _ = writeln!(o, "provenance.estimator.{id}.n = {}", e.n);
        let _ = writeln!(o, "provenance.estimator.{id}.checksum = \"{}\"", e.checksum);
    }
    let _ = writeln!(o, "solution.status = \"{}\"", s.status.as_str());
    let _ = writeln!(o, "solution.method = \"{}\"", s.method.as_str());
    let _ = writeln!(o, "solution.iterations = {}", s.iterations);
    for (j, v) in s.x.iter().enumerate() {
        let _ = writeln!(o, "solution.x.{} = {}", j + 1, float(*v));
    }
    let _ = writeln!(o, "solution.Z = {}", float(s.objective));
    let _ = writeln!(o, "solution.z = {}", float(s.plain_objective));
    let _ = writeln!(o, "solution.max_constraint_violation = {}", float(s.max_constraint_violation));
    let _ = writeln!(o, "solution.kkt_residual = {}", float(s.kkt_residual));
    o
}

struct Doc<'a> {
    path: &'a str,
}

impl Doc<'_> {
    fn err(&self, message: String) -> InputError {
        InputError::Invalid {
            path: self.path.to_string(),
            message,
        }
    }

    fn get<'t>(&self, t: &'t Table, key: &str, full: &str) -> Result<&'t Value, InputError> {
        t.get(key).ok_or_else(|| self.err(format!("missing `{full}`")))
    }

    fn table<'t>(&self, t: &'t Table, key: &str, full: &str) -> Result<&'t Table, InputError> {
        self.get(t, key, full)?
            .as_table()
            .ok_or_else(|| self.err(format!("`{full}` is not a table")))
    }

    fn str<'t>(&self, t: &'t Table, key: &str, full: &str) -> Result<&'t str, InputError> {
        self.get(t, key, full)?
            .as_str()
            .ok_or_else(|| self.err(format!("`{full}` is not a string")))
    }

    fn f64(&self, t: &Table, key: &str, full: &str) -> Result<f64, InputError> {
        self.get(t, key, full)?
            .as_float()
            .ok_or_else(|| self.err(format!("`{full}` is not a float")))
    }

    fn usize(&self, t: &Table, key: &str, full: &str) -> Result<usize, InputError> {
        self.get(t, key, full)?
            .as_integer()
            .and_then(|v| usize::try_from(v).ok())
            .ok_or_else(|| self.err(format!("`{full}` is not a non-negative integer")))
    }
}

/// Reads a document produced by [`render_structured`].
pub fn parse_structured(text: &str, path: &str) -> Result<SolveReport, InputError> {
    let root: Table = text.parse().map_err(|e: toml::de::Error| {
        let (line, column) = e
            .span()
            .map_or((1, 1), |s| super::spec_file::position(text, s.start));
        InputError::Parse {
            path: path.to_string(),
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    let d = Doc { path };
    let version = d.usize(d.table(&root, "report", "report")?, "version", "report.version")?;
    if version as i64 != REPORT_VERSION {
        return Err(d.err(format!("unsupported report version {version}")));
    }
    let problem = d.table(&root, "problem", "problem")?;
    let case_s = d.str(problem, "case", "problem.case")?;
    let case = CaseTag::parse(case_s).ok_or_else(|| d.err(format!("unknown case `{case_s}`")))?;
    let sense = match d.str(problem, "sense", "problem.sense")? {
        "maximize" => Sense::Maximize,
        "minimize" => Sense::Minimize,
        other => return Err(d.err(format!("unknown sense `{other}`"))),
    };
    let n_vars = d.usize(problem, "n_vars", "problem.n_vars")?;
    let m = d.usize(problem, "constraints", "problem.constraints")?;
    let k1 = d.f64(problem, "k1", "problem.k1")?;
    let k2 = d.f64(problem, "k2", "problem.k2")?;

    let empty = Table::new();
    let prov = match root.get("provenance") {
        Some(v) => v.as_table().ok_or_else(|| d.err("`provenance` is not a table".into()))?,
        None => &empty,
    };
    let qt = match prov.get("quantile") {
        Some(v) => v.as_table().ok_or_else(|| d.err("bad `provenance.quantile`".into()))?,
        None => &empty,
    };
    let mut quantiles = vec![None; m];
    for (k, v) in qt {
        let i: usize = k
            .parse()
            .ok()
            .filter(|&i| (1..=m).contains(&i))
            .ok_or_else(|| d.err(format!("bad quantile index `{k}`")))?;
        quantiles[i - 1] = Some(
            v.as_float()
                .ok_or_else(|| d.err(format!("`provenance.quantile.{k}` is not a float")))?,
        );
    }
    let mut estimators = Vec::new();
    if let Some(v) = prov.get("estimator") {
        let et = v.as_table().ok_or_else(|| d.err("bad `provenance.estimator`".into()))?;
        for (id, v) in et {
            let full = format!("provenance.estimator.{id}");
            let t = v.as_table().ok_or_else(|| d.err(format!("`{full}` is not a table")))?;
            estimators.push(EstimatorStamp {
                id: id.clone(),
                n: d.usize(t, "n", &format!("{full}.n"))?,
                checksum: d.str(t, "checksum", &format!("{full}.checksum"))?.to_string(),
            });
        }
    }

    let sol = d.table(&root, "solution", "solution")?;
    let status_s = d.str(sol, "status", "solution.status")?;
    let status =
        SolveStatus::parse(status_s).ok_or_else(|| d.err(format!("unknown status `{status_s}`")))?;
    let method_s = d.str(sol, "method", "solution.method")?;
    let method =
        SolveMethod::parse(method_s).ok_or_else(|| d.err(format!("unknown method `{method_s}`")))?;
    let xt = d.table(sol, "x", "solution.x")?;
    let x = (1..=n_vars)
        .map(|j| d.f64(xt, &j.to_string(), &format!("solution.x.{j}")))
        .collect::<Result<Vec<_>, _>>()?;
    if xt.len() != n_vars {
        return Err(d.err(format!("`solution.x` has {} entries, expected {n_vars}", xt.len())));
    }
    Ok(SolveReport {
        case,
        sense,
        k1,
        k2,
        quantiles,
        estimators,
        solution: Solution {
            x,
            objective: d.f64(sol, "Z", "solution.Z")?,
            plain_objective: d.f64(sol, "z", "solution.z")?,
            status,
            max_constraint_violation: d.f64(
                sol,
                "max_constraint_violation",
                "solution.max_constraint_violation",
            )?,
            kkt_residual: d.f64(sol, "kkt_residual", "solution.kkt_residual")?,
            method,
            iterations: d.usize(sol, "iterations", "solution.iterations")?,
        },
    })
}

fn extreme(sense: Sense) -> &'static str {
    match sense {
        Sense::Maximize => "max",
        Sense::Minimize => "min",
    }
}

fn cell(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.4}")
    } else {
        "-".into()
    }
}

/// Variable/value table with `Z` and `z` rows.
pub fn render_table(r: &SolveReport) -> String {
    let s = &r.solution;
    let mut o = String::new();
    let _ = writeln!(
        o,
        "case {}  {}  k1 = {}  k2 = {}",
        r.case,
        r.sense,
        float(r.k1),
        float(r.k2)
    );
    let _ = writeln!(o, "{:<10}{:>16}", "variable", "value");
    for (j, v) in s.x.iter().enumerate() {
        let _ = writeln!(o, "{:<10}{:>16}", format!("x{}", j + 1), cell(*v));
    }
    let ext = extreme(r.sense);
    let _ = writeln!(o, "{:<10}{:>16}", format!("Z_{ext}"), cell(s.objective));
    let _ = writeln!(o, "{:<10}{:>16}", format!("z_{ext}"), cell(s.plain_objective));
    let _ = writeln!(
        o,
        "status {} ({}, {} iterations, violation {:.1e}, kkt {:.1e})",
        s.status,
        s.method.as_str(),
        s.iterations,
        s.max_constraint_violation,
        s.kkt_residual
    );
    o
}

/// One column per weight pair.
pub fn render_pareto_table(sense: Sense, points: &[ParetoPoint]) -> String {
    let mut o = String::new();
    let width = 14;
    let _ = write!(o, "{:<10}", "variable");
    for p in points {
        let _ = write!(o, "{:>width$}", format!("k1={}", float(p.k1)));
    }
    o.push('\n');
    let n = points
        .iter()
        .find_map(|p| p.outcome.as_ref().ok().map(|s| s.x.len()))
        .unwrap_or(0);
    let row = |o: &mut String, label: String, f: &dyn Fn(&Solution) -> f64| {
        let _ = write!(o, "{label:<10}");
        for p in points {
            let v = p.outcome.as_ref().map_or(f64::NAN, f);
            let _ = write!(o, "{:>width$}", cell(v));
        }
        o.push('\n');
    };
    for j in 0..n {
        row(&mut o, format!("x{}", j + 1), &|s| s.x[j]);
    }
    let ext = extreme(sense);
    row(&mut o, format!("Z_{ext}"), &|s| s.objective);
    row(&mut o, format!("z_{ext}"), &|s| s.plain_objective);
    let _ = write!(o, "{:<10}", "status");
    for p in points {
        let st = match &p.outcome {
            Ok(s) => s.status.as_str().to_string(),
            Err(_) => "error".into(),
        };
        let _ = write!(o, "{st:>width$}");
    }
    o.push('\n');
    o
}

/// `pareto.<i>.*` keys, one block per weight pair.
pub fn render_pareto_structured(points: &[ParetoPoint]) -> String {
    let mut o = String::new();
    let _ = writeln!(o, "report.version = {REPORT_VERSION}");
    let _ = writeln!(o, "pareto.points = {}", points.len());
    for (i, p) in points.iter().enumerate() {
        let i = i + 1;
        let _ = writeln!(o, "pareto.{i}.k1 = {}", float(p.k1));
        let _ = writeln!(o, "pareto.{i}.k2 = {}", float(p.k2));
        match &p.outcome {
            Ok(s) => {
                let _ = writeln!(o, "pareto.{i}.status = \"{}\"", s.status.as_str());
                for (j, v) in s.x.iter().enumerate() {
                    let _ = writeln!(o, "pareto.{i}.x.{} = {}", j + 1, float(*v));
                }
                let _ = writeln!(o, "pareto.{i}.Z = {}", float(s.objective));
                let _ = writeln!(o, "pareto.{i}.z = {}", float(s.plain_objective));
            }
            Err(e) => {
                let _ = writeln!(o, "pareto.{i}.status = \"error\"");
                let _ = writeln!(o, "pareto.{i}.error = {:?}", e.to_string());
            }
        }
    }
    o
}
