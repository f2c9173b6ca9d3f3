//! Exit-code and output-format contract of the binary.

use std::process::{Command, Output};

fn greedylab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_greedylab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_instance(name: &str, body: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("greedylab-test-{name}-{}.toml", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn greedy_default_instance_table() {
    let out = greedylab(&["greedy"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut lines = stdout.lines();
    assert_eq!(lines.next().unwrap(), "m,selected,residual,sigma,d,d_star");
    // m = 0: norm in residual and sigma, D columns empty
    let row0: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row0[0], "0");
    assert_eq!(row0[1], "");
    assert_eq!(row0[2], row0[3]);
    assert_eq!(row0[4], "");
    assert_eq!(row0[5], "");
    // residual column sqrt(5), 1, 0 for x = (3,2,1) in l2
    let row1: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert!((row1[2].parse::<f64>().unwrap() - 5f64.sqrt()).abs() < 1e-12);
    let row2: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row2[1], "1;2");
    assert!((row2[2].parse::<f64>().unwrap() - 1.0).abs() < 1e-12);
    let row3: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert!(row3[2].parse::<f64>().unwrap().abs() < 1e-12);
}

#[test]
fn greedy_missing_vector_exits_2() {
    let out = greedylab(&["greedy", "--vector", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("nope"), "diagnostic names the field: {stderr}");
    assert!(out.stdout.is_empty(), "stdout carries data only");
}

#[test]
fn parse_error_exits_2() {
    let path = write_instance(
        "unknown-field",
        "scope = 4\nbogus = 1\n[space]\nkind = \"lp\"\np = 2.0\n",
    );
    let out = greedylab(&["greedy", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("bogus"));
    std::fs::remove_file(path).ok();
}

#[test]
fn instance_file_roundtrip() {
    let path = write_instance(
        "roundtrip",
        r#"
scope = 6

[space]
kind = "summing_c0"

[[vectors]]
name = "alt"
entries = [[1, 1.0], [2, -1.0], [3, 1.0]]
"#,
    );
    let out = greedylab(&["greedy", "--in", path.to_str().unwrap(), "--vector", "alt"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 5); // header + m = 0..3
    std::fs::remove_file(path).ok();
}

#[test]
fn cap_violation_exits_3() {
    let path = write_instance(
        "cap",
        r#"
scope = 30

[space]
kind = "summing_c0"

[[vectors]]
name = "x"
entries = [[1, 1.0], [2, -1.0]]
"#,
    );
    // literal enumeration scope 30 exceeds the default cap of 24
    let out = greedylab(&["greedy", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    std::fs::remove_file(path).ok();
}

#[test]
fn curve_l1_spot_values() {
    let out = greedylab(&["curve", "--p", "1", "--n", "3", "--m-max", "7"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let closed: Vec<f64> = stdout
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(closed, vec![2.0, 1.0, 0.0, 1.0, 2.0, 3.0, 3.0]);
    for line in stdout.lines().skip(1) {
        let delta: f64 = line.split(',').nth(4).unwrap().parse().unwrap();
        assert!(delta <= 1e-9, "{line}");
    }
}

#[test]
fn curve_p2_spot_value() {
    let out = greedylab(&["curve", "--p", "2", "--n", "4", "--m-max", "8"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let row_m2 = stdout.lines().nth(2).unwrap();
    let closed: f64 = row_m2.split(',').nth(1).unwrap().parse().unwrap();
    assert!((closed - 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn constants_reports_unit_bounds_for_l2() {
    let out = greedylab(&["constants"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for estimate in report["estimates"].as_array().unwrap() {
        let bound = estimate["lower_bound"].as_f64().unwrap();
        assert!((bound - 1.0).abs() <= 1e-9, "{estimate}");
    }
    assert_eq!(report["exact_case"]["pass"], serde_json::Value::Bool(true));
}

#[test]
fn verify_out_file_and_tamper() {
    let out_path = std::env::temp_dir().join(format!("greedylab-verify-{}.json", std::process::id()));
    let out = greedylab(&["verify", "--seed", "11", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["pass"], serde_json::Value::Bool(true));
    assert_eq!(report["seed"], serde_json::Value::from(11));
    std::fs::remove_file(out_path).ok();

    let out = greedylab(&["verify", "--tamper-closed-form"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], serde_json::Value::Bool(false));
}
