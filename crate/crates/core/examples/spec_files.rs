//! Spec and sample files from text, a structured report, and its re-check.
//!
//! ```text
//! cargo run --example spec_files
//! ```

use elliptic_ccp::io::{parse_samples, parse_spec, parse_structured, render_structured, SolveReport};
use elliptic_ccp::model::{sample_map, validate_spec};
use elliptic_ccp::solver::{solve, SolverOptions};
use elliptic_ccp::transform::{build, detect_case, estimate_all};

const SPEC: &str = r#"
sense = "minimize"
n_vars = 2
objective = [1, 1]

[[constraint]]
row = "demand"
rhs = -4
alpha = 0.05
"#;

// rows are (-a1, -a2): "a'x >= 4" written as "-a'x <= -4"
const DEMAND: &str = "# id: demand
a1,a2
-1.0,-2.1
-1.3,-1.8
-0.8,-2.4
-1.1,-1.9
-0.9,-2.2
-1.2,-2.0
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = parse_spec(SPEC, "inline.toml")?;
    let samples = sample_map([parse_samples(DEMAND, "demand.csv")?]);
    let diags = validate_spec(&spec, &samples);
    assert!(diags.is_empty(), "{diags:?}");

    let est = estimate_all(&spec, &samples, None)?;
    let program = build(&spec, &est)?;
    let report = SolveReport {
        case: detect_case(&spec)?,
        sense: spec.sense,
        k1: spec.k1,
        k2: spec.k2,
        quantiles: program.provenance.quantiles.clone(),
        estimators: est.values().map(Into::into).collect(),
        solution: solve(&program, &SolverOptions::default())?,
    };
    let text = render_structured(&report);
    print!("{text}");

    let again = render_structured(&parse_structured(&text, "report")?);
    println!("re-rendered identically: {}", again == text);
    Ok(())
}
