use std::io::Write;
use std::process::{Command, Output};

fn ncqm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncqm")).args(args).output().expect("binary runs")
}

#[test]
fn sweep_preserves_input_order() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    let hbars = ["1", "2", "-1/3", "5", "7/2", "1/9"];
    let entries: Vec<_> = hbars.iter().map(|h| serde_json::json!({"hbar": h, "theta": "1/2", "b": 1})).collect();
    write!(file, "{}", serde_json::Value::Array(entries)).unwrap();

    let path = file.path().to_str().unwrap();
    let out = ncqm(&["sector", "classify", "--sweep", path]);
    assert_eq!(out.status.code(), Some(0));
    let reports: Vec<serde_json::Value> = serde_json::from_slice(&out.stdout).unwrap();
    let seen: Vec<_> = reports.iter().map(|r| r["inputs"]["hbar"].as_str().unwrap().to_string()).collect();
    assert_eq!(seen, hbars);
    assert!(reports.iter().all(|r| r["schema"] == "ncqm-report/1"));
    assert_eq!(reports[0]["inputs"]["b"], "1");
}

#[test]
fn missing_sweep_file_is_a_domain_error() {
    let out = ncqm(&["sector", "classify", "--sweep", "/nonexistent/sweep.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn text_mode_renders_narrative() {
    let out = ncqm(&["--format", "text", "verdict", "--hbar", "1", "--theta", "1/2", "--b", "1/3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Darboux map"));
    assert!(serde_json::from_str::<serde_json::Value>(&text).is_err());
}

#[test]
fn malformed_rational_exits_one() {
    let out = ncqm(&["sector", "classify", "--hbar", "1/0", "--theta", "0", "--b", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["error_kind"], "Parse error");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ncqm(&["bopp", "--nope", "1"]).status.code(), Some(2));
    assert_eq!(ncqm(&["group", "--g", "{}"]).status.code(), Some(2));
    assert_eq!(ncqm(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn bopp_default_subverb_reports_matrix() {
    let out = ncqm(&["bopp", "--hbar", "1", "--theta", "1/2", "--b", "1/3", "--r", "1/2", "--s", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "ok");
    assert!(!report["outputs"].as_object().unwrap().is_empty());
}
