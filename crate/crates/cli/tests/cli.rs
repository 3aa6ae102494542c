use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn metinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metinv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn metinv_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_metinv"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn decide_reports_generators() {
    let out = metinv(&["--json", "decide", "1,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["finitelyGenerated"], true);
    assert_eq!(v["generators"], serde_json::json!(["[x2,x1]", "x3", "x4"]));

    let v = json(&metinv(&["--json", "decide", "3"]));
    assert_eq!(v["finitelyGenerated"], false);
    assert!(v.get("generators").is_none());
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(metinv(&["decide"]).status.code(), Some(2));
    assert_eq!(metinv(&["decide", "1,,2"]).status.code(), Some(2));
    assert_eq!(metinv(&["hilbert", "2", "nonsense"]).status.code(), Some(2));
    assert_eq!(
        metinv(&["hilbert", "2", "polyring", "-N", "65"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        metinv(&["pi", "2,0", "x4 + x1^2", "x4"]).status.code(),
        Some(2)
    );
    assert_eq!(metinv(&["pi", "2", "x4", "x1"]).status.code(), Some(2));
}

#[test]
fn hilbert_series_as_json_arrays() {
    let v = json(&metinv(&[
        "--json",
        "hilbert",
        "2",
        "invariant-ring",
        "-N",
        "6",
    ]));
    assert_eq!(v, serde_json::json!([1, 0, 1, 0, 1, 0, 1]));
    let v = json(&metinv(&[
        "--json",
        "hilbert",
        "2",
        "invariant-module",
        "-N",
        "8",
    ]));
    assert_eq!(v, serde_json::json!([0, 0, 0, 0, 0, 0, 0, 0, 0]));
    let v = json(&metinv(&[
        "--json",
        "hilbert",
        "1,1",
        "invariant-module",
        "-N",
        "4",
    ]));
    assert_eq!(v, serde_json::json!([0, 0, 3, 0, 3]));
    let text = stdout(&metinv(&["hilbert", "3", "invariant-module", "-N", "8"]));
    assert_eq!(text.trim(), "1 * z^2\n1 * z^6");
}

#[test]
fn check_reports_delta_images() {
    let out = metinv_stdin(&["check", "2", "-"], "x2^2 - x1*x3");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "invariant");

    let out = metinv_stdin(&["--json", "check", "1", "-"], "x1");
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["invariant"], false);
    assert_eq!(v["delta2"], "x2");

    let out = metinv_stdin(&["check", "3", "-"], "[x4,x1] - 3*[x3,x2]");
    assert_eq!(out.status.code(), Some(0));

    let dir = std::env::temp_dir().join(format!("metinv-check-{}", std::process::id()));
    std::fs::write(&dir, "[x2,x1].x6 - [x3,x1].x5 + [x3,x2].x4").unwrap();
    let out = metinv(&["check", "2,2", dir.to_str().unwrap()]);
    std::fs::remove_file(&dir).unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn pi_expansion() {
    let v = json(&metinv(&["--json", "pi", "2,0", "x4", "x2^2-x1*x3"]));
    assert_eq!(v["expansion"], "2[x4,x2,x2] - 2[x4,x1,x3] + [x3,x1,x4]");
    assert_eq!(v["zero"], false);
    let v = json(&metinv(&["--json", "pi", "2,0", "x4", "x4"]));
    assert_eq!(v["zero"], true);
    assert_eq!(v["expansion"], "0");
    let out = metinv(&[
        "pi",
        "4",
        "x1x5 - 4x2x4 + 3x3^2",
        "-x1x3x5 - 2x2x3x4 + x3^3 + x1x4^2 + x2^2x5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("[x5,x1,x1,x3,x5]"));
}

#[test]
fn witness_degrees_increase() {
    let v = json(&metinv(&["--json", "witness", "2,1", "--count", "5"]));
    let degrees: Vec<u64> = v["invariants"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["degree"].as_u64().unwrap())
        .collect();
    assert_eq!(degrees.len(), 5);
    assert!(degrees.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(metinv(&["witness", "2"]).status.code(), Some(1));
}

#[test]
fn catalog_commands() {
    let out = metinv(&[
        "--json", "catalog", "verify", "--case", "vii", "--degree", "8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v[0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
    let v = json(&metinv(&["--json", "catalog", "list"]));
    assert_eq!(v.as_array().unwrap().len(), 7);
    assert_eq!(v[2]["spec"], "1,1");
    assert_eq!(
        metinv(&["catalog", "list", "--case", "ix"]).status.code(),
        Some(2)
    );
}

#[test]
fn normalize_is_idempotent_and_deterministic() {
    for expr in [
        "[x3,x1,x4] + [x4,x3,x1]",
        "x2*x1 + 3x1x2 - x3^2",
        "-[x2,x1].(x1 + x2)",
        "[x1,x1]",
    ] {
        let once = stdout(&metinv(&["normalize", expr]));
        let twice = stdout(&metinv(&["normalize", once.trim()]));
        assert_eq!(once, twice, "{expr}");
        assert_eq!(once, stdout(&metinv(&["normalize", expr])));
    }
    assert_eq!(stdout(&metinv(&["normalize", "[x1,x1]"])).trim(), "0");
}
