use std::path::PathBuf;
use std::process::{Command, Output};

fn logsob(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logsob")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("logsob-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn constants_report_is_json() {
    let out = logsob(&["constants", "--p", "2", "--A", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["homogeneous_dim"], 3.0);
    assert!((v["ball_measure"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn reports_are_deterministic() {
    let args = ["deficit", "--p", "3", "--A", "1,0", "--norm", "l3"];
    let first = logsob(&args);
    let second = logsob(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let csv = scratch("sequence.csv");
    let out = logsob(&["tensorize", "--A", "0", "--l-max", "10000", "--out", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("l,value,target,rel_error\n"));
    assert_eq!(text.lines().count(), 5);
    let again = logsob(&["tensorize", "--A", "0", "--l-max", "10000"]);
    assert_eq!(again.stdout, text.as_bytes());
}

#[test]
fn config_file_with_flag_override() {
    let path = scratch("run.json");
    std::fs::write(&path, r#"{ "command": "constants", "p": 3.0, "A": [1.0, 1.0] }"#).unwrap();
    let out = logsob(&["constants", "--config", path.to_str().unwrap(), "--p", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["p"], 2.0);
    assert_eq!(v["homogeneous_dim"], 4.0);

    let mismatch = logsob(&["deficit", "--config", path.to_str().unwrap()]);
    assert_eq!(mismatch.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    for args in [&["constants", "--p", "0.5"][..], &["frobnicate"], &["tensorize", "--p", "3"], &["constants", "--norm", "sup"]] {
        assert_eq!(logsob(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn failed_verification_exits_one() {
    let out = logsob(&["verify-lemmas", "--scheme", "tensor-gauss", "--nodes", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["failures"].as_u64().unwrap() > 0);
}
