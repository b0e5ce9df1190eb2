//! CLI behavior tests: command output shapes, verdicts and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_softnorm")
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("softnorm-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn stdout_json_lines(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each output line is JSON"))
        .collect()
}

#[test]
fn verify_canonical_norm_passes() {
    let out = run(&["verify", "--norm", "canonical", "--p", "2", "--samples", "5000"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = stdout_json_lines(&out);
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["suite"], "norm-axioms");
    assert_eq!(reports[0]["violations"], 0);
}

#[test]
fn verify_negative_controls_exit_one() {
    for norm in ["no-abs", "squared"] {
        let out = run(&["verify", "--norm", norm, "--samples", "5000"]);
        assert_eq!(out.status.code(), Some(1), "norm {norm}");
        let reports = stdout_json_lines(&out);
        assert!(reports[0]["violations"].as_u64().unwrap() > 0);
        assert!(!reports[0]["counterexamples"].as_array().unwrap().is_empty());
    }
}

#[test]
fn verify_metric_emits_two_reports() {
    let out = run(&["verify", "--metric", "canonical", "--samples", "5000"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = stdout_json_lines(&out);
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["suite"], "metric-axioms");
    assert_eq!(reports[1]["suite"], "metric-norm-compatibility");
}

#[test]
fn verify_operator_submultiplicative() {
    let path = write_temp(
        "pair.json",
        r#"[{"A":[[1.0,0.5],[0.0,1.0]],"b":[0.0,0.0],"c":[0.0,0.0],"lam":1.0},
            {"A":[[0.5,0.0],[0.5,0.5]],"b":[1.0,0.0],"c":[0.0,1.0],"lam":0.5}]"#,
    );
    let out = run(&[
        "verify",
        "--operator",
        path.to_str().unwrap(),
        "--suite",
        "submultiplicative",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let reports = stdout_json_lines(&out);
    assert_eq!(reports[0]["suite"], "submultiplicative");
}

#[test]
fn opnorm_identity_and_zero() {
    let id = write_temp(
        "id.json",
        r#"{"A":[[1.0,0.0],[0.0,1.0]],"b":[0.0,0.0],"c":[0.0,0.0],"lam":1.0}"#,
    );
    let out = run(&["opnorm", id.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json_lines(&out);
    assert!((v[0]["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);

    let zero = write_temp(
        "zero.json",
        r#"{"A":[[0.0,0.0],[0.0,0.0]],"b":[0.0,0.0],"c":[0.0,0.0],"lam":0.0}"#,
    );
    let out = run(&["opnorm", zero.to_str().unwrap()]);
    let v = stdout_json_lines(&out);
    assert_eq!(v[0]["value"].as_f64().unwrap(), 0.0);
}

#[test]
fn opnorm_projection_with_oracle() {
    let path = write_temp(
        "proj.json",
        r#"{"A":[[1.0,0.0],[0.0,0.0]],"b":[0.0,0.0],"c":[0.0,0.0],"lam":0.0}"#,
    );
    let out = run(&["opnorm", path.to_str().unwrap(), "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json_lines(&out);
    assert!((v[0]["value"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    let gap = v[0]["certificate_gap"].as_f64().unwrap();
    assert!(gap.abs() <= 1e-3, "gap = {gap}");
}

#[test]
fn indep_verdicts() {
    let independent = write_temp(
        "indep.json",
        r#"[{"x":[1.0,0.0],"e":0.0},{"x":[0.0,1.0],"e":0.0},{"x":[0.0,0.0],"e":1.0}]"#,
    );
    let out = run(&["indep", independent.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json_lines(&out);
    assert_eq!(v[0]["independent"], true);
    assert_eq!(v[0]["rank"], 3);

    let with_zero = write_temp(
        "zero_vec.json",
        r#"[{"x":[0.0,0.0],"e":0.0},{"x":[1.0,2.0],"e":1.0}]"#,
    );
    let v = stdout_json_lines(&run(&["indep", with_zero.to_str().unwrap()]));
    assert_eq!(v[0]["independent"], false);

    // pigeonhole: more than n + 1 vectors in dimension n
    let too_many = write_temp(
        "many.json",
        r#"[{"x":[1.0,0.0],"e":0.0},{"x":[0.0,1.0],"e":0.0},
            {"x":[0.0,0.0],"e":1.0},{"x":[1.0,1.0],"e":1.0}]"#,
    );
    let v = stdout_json_lines(&run(&["indep", too_many.to_str().unwrap()]));
    assert_eq!(v[0]["independent"], false);
}

#[test]
fn sequence_verdicts() {
    let harmonic = write_temp(
        "harm.json",
        r#"{"kind":"harmonic","base":{"x":[0.0,0.0],"e":0.0},"direction":{"x":[1.0,0.0],"e":1.0}}"#,
    );
    let out = run(&[
        "sequence",
        harmonic.to_str().unwrap(),
        "--eps",
        "0.01",
        "--horizon",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json_lines(&out);
    assert_eq!(v[0]["convergence"]["verdict"], "CONVERGED_AT");
    assert!(v[0]["convergence"]["index"].as_u64().unwrap() <= 201);
    assert_eq!(v[0]["cauchy"]["verdict"], "CAUCHY_AT");
    assert!(v[0]["cauchy"]["index"].as_u64().unwrap() <= 201);
    assert_eq!(v[0]["implication"]["violations"], 0);

    let alternating = write_temp(
        "alt.json",
        r#"{"kind":"alternating","base":{"x":[0.0,0.0],"e":0.0},"direction":{"x":[1.0,0.0],"e":0.0}}"#,
    );
    let v = stdout_json_lines(&run(&["sequence", alternating.to_str().unwrap()]));
    assert_eq!(v[0]["convergence"]["verdict"], "NOT_WITHIN_HORIZON");
    assert_eq!(v[0]["cauchy"]["verdict"], "NOT_WITHIN_HORIZON");
    assert_eq!(v[0]["implication"]["violations"], 0);

    let constant = write_temp(
        "const.json",
        r#"{"kind":"constant","base":{"x":[1.0,2.0],"e":0.5}}"#,
    );
    let v = stdout_json_lines(&run(&["sequence", constant.to_str().unwrap()]));
    assert_eq!(v[0]["convergence"]["index"], 1);
    assert_eq!(v[0]["cauchy"]["index"], 1);

    let unknown = write_temp(
        "weird.json",
        r#"{"kind":"fibonacci","base":{"x":[0.0],"e":0.0}}"#,
    );
    assert_eq!(run(&["sequence", unknown.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let target = std::env::temp_dir().join("softnorm-cli-tests").join("report.json");
    std::fs::create_dir_all(target.parent().unwrap()).unwrap();
    let out = run(&[
        "verify",
        "--norm",
        "canonical",
        "--samples",
        "1000",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    let report: serde_json::Value = serde_json::from_str(written.trim()).unwrap();
    assert_eq!(report["suite"], "norm-axioms");
}

#[test]
fn text_format_renders_pass_line() {
    let out = run(&["verify", "--norm", "canonical", "--samples", "1000", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("suite=norm-axioms"));
    assert!(text.contains("PASS"));
}

#[test]
fn invalid_p_exits_two() {
    let out = run(&["verify", "--norm", "canonical", "--p", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--p"));
}
