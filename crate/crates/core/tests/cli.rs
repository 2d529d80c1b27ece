use std::fs;
use std::path::PathBuf;

use elliptic_ccp::cli::{run, EXIT_DIAGNOSTICS, EXIT_INPUT, EXIT_NOT_OPTIMAL, EXIT_OK};
use elliptic_ccp::fixtures::FILES;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("chance-elliptic").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Fresh directory holding every shipped file.
fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("chance-elliptic-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    for (file, text) in FILES {
        fs::write(dir.join(file), text).unwrap();
    }
    dir
}

fn path(dir: &PathBuf, file: &str) -> String {
    dir.join(file).to_string_lossy().into_owned()
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn value(structured: &str, key: &str) -> f64 {
    structured
        .lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix(" = "))
        .unwrap_or_else(|| panic!("no key {key}"))
        .parse()
        .unwrap()
}

#[test]
fn reproduce_example1() {
    let (code, out, _) = call(&["reproduce", "example1", "--format", "structured"]);
    assert_eq!(code, EXIT_OK);
    assert!((value(&out, "example1.solve.solution.z") - 14237.2881).abs() < 1e-4);
    for (i, z) in [249.9528, 6176.6103, 12625.1526].into_iter().enumerate() {
        let got = value(&out, &format!("example1.sweep.pareto.{}.Z", i + 1));
        assert!((got - z).abs() < 1e-4, "{got} vs {z}");
    }
    let (code, table, _) = call(&["reproduce", "example1"]);
    assert_eq!(code, EXIT_OK);
    assert!(table.contains("z_max") && table.contains("14237.2881"));
}

#[test]
fn reproduce_example4_single_weight() {
    let (code, out, _) = call(&["reproduce", "example4", "--k1", "0.5", "--format", "structured"]);
    assert_eq!(code, EXIT_OK);
    assert!((value(&out, "example4.solve.solution.Z") - 4804.4404).abs() < 1e-3);
    assert!((value(&out, "example4.solve.solution.z") - 10895.75).abs() < 1e-2);
    assert!(!out.contains("sweep"));
}

#[test]
fn reproduce_all_and_unknown() {
    let (code, out, _) = call(&["reproduce", "all"]);
    assert_eq!(code, EXIT_OK);
    for name in ["example1", "example2", "example3", "example4"] {
        assert!(out.contains(&format!("== {name}")), "{name}");
    }
    assert_eq!(call(&["reproduce", "example9"]).0, EXIT_INPUT);
}

#[test]
fn malformed_samples_report_position() {
    let dir = workdir("malformed");
    fs::write(dir.join("bad.csv"), "# id: m\nx,y\n1,2\n3,oops\n").unwrap();
    let (code, _, err) = call(&["estimate", "--samples", &path(&dir, "bad.csv")]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("bad.csv:4:2:"), "{err}");
    fs::write(dir.join("nan.csv"), "# id: m\nx,y\n1,2\nNaN,4\n").unwrap();
    let (code, _, err) = call(&["estimate", "--samples", &path(&dir, "nan.csv")]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("nan.csv:4:1:") && err.contains("non-finite"), "{err}");
    fs::write(dir.join("ragged.csv"), "# id: m\nx,y\n1,2\n3\n").unwrap();
    let (code, _, err) = call(&["estimate", "--samples", &path(&dir, "ragged.csv")]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("ragged"), "{err}");
    let (code, _, _) = call(&["estimate", "--samples", &path(&dir, "missing.csv")]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn two_by_two_ingest() {
    let dir = workdir("ingest");
    fs::write(dir.join("ok.csv"), "# id: m\nx,y\n1,2\n3,4\n").unwrap();
    let (code, out, _) = call(&["estimate", "--samples", &path(&dir, "ok.csv"), "--format", "structured"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("m") && out.contains("2.0"), "{out}");
    let (code, _, _) = call(&["estimate", "--samples", &path(&dir, "ok.csv"), "--generator", "pearson7(5)"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn check_round_trip() {
    let dir = workdir("check");
    let base = [
        "solve",
        "--spec",
        &path(&dir, "example2.toml"),
        "--samples",
        &path(&dir, "rows_a1.csv"),
        &path(&dir, "rows_a2.csv"),
        &path(&dir, "rows_a3.csv"),
    ]
    .map(String::from);
    let args = |extra: &[&str]| -> Vec<String> { base.iter().cloned().chain(extra.iter().map(|s| s.to_string())).collect() };

    let first = args(&["--format", "structured"]);
    let (code, report, _) = call(&refs(&first));
    assert_eq!(code, EXIT_OK);
    let again = call(&refs(&first)).1;
    assert_eq!(report, again);
    let parsed = elliptic_ccp::io::parse_structured(&report, "r").unwrap();
    assert_eq!(elliptic_ccp::io::render_structured(&parsed), report);

    let report_path = path(&dir, "report.toml");
    fs::write(&report_path, &report).unwrap();
    assert_eq!(call(&refs(&args(&["--check", &report_path]))).0, EXIT_OK);

    let tampered = report
        .lines()
        .map(|l| if l.starts_with("solution.x.1 ") { "solution.x.1 = 38.0".to_string() } else { l.to_string() })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n";
    fs::write(&report_path, tampered).unwrap();
    let (code, _, err) = call(&refs(&args(&["--check", &report_path])));
    assert_eq!(code, EXIT_DIAGNOSTICS);
    assert!(err.contains("solution.x.1"), "{err}");

    fs::write(&report_path, "not = [valid").unwrap();
    assert_eq!(call(&refs(&args(&["--check", &report_path]))).0, EXIT_INPUT);

    let (code, _, err) = call(&refs(&args(&["--alpha", "0"])));
    assert_eq!(code, EXIT_DIAGNOSTICS);
    assert!(err.contains("ALPHA_OUT_OF_RANGE"), "{err}");

    let (code, _, _) = call(&refs(&args(&["--tol-kkt", "1e-30"])));
    assert_eq!(code, EXIT_NOT_OPTIMAL);

    let (code, _, _) = call(&refs(&args(&["--alpha", "0.6"])));
    assert_eq!(code, EXIT_DIAGNOSTICS);
}

#[test]
fn spec_file_errors() {
    let dir = workdir("spec");
    let joint = "sense = \"maximize\"\nn_vars = 3\nobjective = [1, 1, 1]\n\n[[constraint]]\njoint = \"g1\"\nrow = [1, 1, 1]\nalpha = 0.1\n";
    fs::write(dir.join("joint.toml"), joint).unwrap();
    let (code, _, err) = call(&["solve", "--spec", &path(&dir, "joint.toml")]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("JOINT_CONFLICT"), "{err}");
    fs::write(dir.join("unknown.toml"), "sense = \"maximize\"\nn_vars = 1\nobjective = [1]\ncase = \"II\"\n").unwrap();
    let (code, _, err) = call(&["solve", "--spec", &path(&dir, "unknown.toml")]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("unknown.toml:4:"), "{err}");
    fs::write(dir.join("weights.toml"), "sense = \"maximize\"\nn_vars = 3\nobjective = \"c\"\nk1 = 0.6\nk2 = 0.6\n").unwrap();
    let (code, _, err) = call(&["solve", "--spec", &path(&dir, "weights.toml"), "--samples", &path(&dir, "profit_c.csv")]);
    assert_eq!(code, EXIT_DIAGNOSTICS);
    assert!(err.contains("WEIGHTS_NOT_CONVEX"), "{err}");
}

#[test]
fn transform_pareto_validate() {
    let dir = workdir("subcommands");
    let spec4 = path(&dir, "example4.toml");
    let samples4: Vec<String> = ["profit_c.csv", "joint_g1.csv", "joint_g2.csv", "joint_g3.csv"].iter().map(|f| path(&dir, f)).collect();
    let mut args = vec!["transform", "--spec", &spec4, "--samples"];
    args.extend(samples4.iter().map(String::as_str));
    let (code, out, _) = call(&args);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("IV"), "{out}");

    args[0] = "pareto";
    args.extend(["--grid", "0.25,0.5,0.75", "--format", "structured"]);
    let (code, out, _) = call(&args);
    assert_eq!(code, EXIT_OK);
    assert!((value(&out, "pareto.1.Z") - 1781.9370).abs() < 1e-3);
    assert!((value(&out, "pareto.3.Z") - 7850.0963).abs() < 1e-3);

    let spec2 = path(&dir, "example2.toml");
    let rows: Vec<String> = ["rows_a1.csv", "rows_a2.csv", "rows_a3.csv"].iter().map(|f| path(&dir, f)).collect();
    let mut v = vec!["validate", "--spec", &spec2, "--samples"];
    v.extend(rows.iter().map(String::as_str));
    v.extend(["--generator", "normal,pearson7(5)", "--replications", "500", "--seed", "3"]);
    let (code, out, err) = call(&v);
    assert_eq!(code, EXIT_OK, "{out}{err}");
    assert!(out.contains("pearson7(5)"), "{out}");
    let mut p = vec!["pareto", "--spec", &spec2, "--samples"];
    p.extend(rows.iter().map(String::as_str));
    assert_eq!(call(&p).0, EXIT_DIAGNOSTICS);
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["solve"]).0, EXIT_INPUT);
    assert_eq!(call(&["frobnicate"]).0, EXIT_INPUT);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
    assert_eq!(call(&["--version"]).0, EXIT_OK);
}
