use std::process::{Command, Output};

fn minrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_sl2_emits_schema_and_passes() {
    let out = minrep(&[
        "verify",
        "--suite",
        "sl2",
        "--rank",
        "2",
        "--max-degree",
        "6",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["schema"], "minrep-report/1");
    assert_eq!(report["suite"], "sl2");
    assert_eq!(report["pass"], true);
    let checks = report["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        for key in ["name", "expected", "computed", "residual", "pass"] {
            assert!(c.get(key).is_some(), "check record missing {key}");
        }
    }
}

#[test]
fn reports_are_deterministic_modulo_wall_time() {
    let args = [
        "verify",
        "--suite",
        "norms",
        "--rank",
        "2",
        "--max-m",
        "3",
        "--mc-samples",
        "50000",
        "--seed",
        "11",
    ];
    let a = minrep(&args);
    let b = minrep(&args);
    assert!(a.status.success() && b.status.success());
    let mut ja = stdout_json(&a);
    let mut jb = stdout_json(&b);
    ja["wall_time_ms"] = 0.into();
    jb["wall_time_ms"] = 0.into();
    assert_eq!(
        serde_json::to_vec(&ja).unwrap(),
        serde_json::to_vec(&jb).unwrap(),
        "byte-identical reports modulo wall time"
    );
}

#[test]
fn usage_errors_exit_2() {
    let out = minrep(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = minrep(&["verify", "--suite", "sl2", "--max-degree", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // clap's own parse errors also use exit code 2
    let out = minrep(&["verify", "--rank", "not-a-number"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failing_checks_exit_1_and_still_emit_the_report() {
    // starve the Monte-Carlo oracle so its 1% agreement check fails
    let out = minrep(&[
        "verify",
        "--suite",
        "norms",
        "--mc-samples",
        "2",
        "--seed",
        "3",
        "--max-m",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_eq!(report["pass"], false);
    assert!(report["checks"].as_array().unwrap().iter().any(|c| c["pass"] == false));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = std::env::temp_dir().join("minrep-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let path_str = path.to_str().unwrap();
    let out = minrep(&[
        "verify",
        "--suite",
        "fock-weight",
        "--rank",
        "1",
        "--out",
        path_str,
    ]);
    assert!(out.status.success());
    let content = std::fs::read_to_string(&path).unwrap();
    let report: serde_json::Value = serde_json::from_str(&content).unwrap();
    assert_eq!(report["suite"], "fock-weight");
    std::fs::remove_file(&path).ok();
}

#[test]
fn markdown_format_renders() {
    let out = minrep(&[
        "verify",
        "--suite",
        "sl2-golden",
        "--rank",
        "1",
        "--format",
        "markdown",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# suite `sl2-golden`"));
    assert!(text.contains("## findings"));
}

#[test]
fn table_prints_the_classification_rows() {
    let out = minrep(&["table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("so*(4r)"));
    assert!(text.contains("e7(-25)"));
    assert!(text.contains("sl(2,C)"));
    let out = minrep(&["table", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 6);
}
