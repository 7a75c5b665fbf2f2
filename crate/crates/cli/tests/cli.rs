use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qci"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn ring_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qci-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn verdict<'a>(v: &'a Value, name: &str) -> &'a str {
    v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == name)
        .and_then(|e| e["verdict"].as_str())
        .unwrap_or_else(|| panic!("no verdict {name} in {v}"))
}

#[test]
fn analyze_ring_file() {
    let p = ring_file(
        "thm44.ring",
        "# four variables\nfield GF 32003\nvars w x y z\nideal\n  w^2, w*x - y^2, w*y - x*z, w*z\n  x^2 + y*z, x*y, z^2\nend\n",
    );
    let out = qci(&["analyze", p.to_str().unwrap(), "--ideal", "x"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let s = &v["tables"]["summary"];
    assert_eq!(s["verdict"], "True");
    assert_eq!((s["c"].as_u64(), s["h"].as_u64()), (Some(1), Some(1)));
    assert_eq!(s["witnesses"]["b"], "y");
    assert_eq!(v["timing_ms"], Value::Null);
}

#[test]
fn output_is_deterministic() {
    let a = qci(&["ezd-search", "--instance", "hypersurface", "--seed", "3"]);
    let b = qci(&["ezd-search", "--instance", "hypersurface", "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn missing_file_exits_two() {
    let out = qci(&["analyze", "missing.ring"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("file not found"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qci(&["analyze"]).status.code(), Some(2));
    assert_eq!(
        qci(&["betti", "--instance", "thm44", "-D", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qci(&["analyze", "--instance", "nope"]).status.code(),
        Some(2)
    );
    let bad = ring_file(
        "bad.ring",
        "field GF 32003\nvars x\nideal\n  x^2 + x\nend\n",
    );
    let out = qci(&["analyze", bad.to_str().unwrap(), "--ideal", "x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failing_property_exits_one() {
    let out = qci(&["analyze", "--instance", "gor5"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(verdict(&json(&out), "qci"), "False");
    let out = qci(&["ezd", "--instance", "xy-y2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_reports_bound() {
    let out = qci(&["verify", "poincare", "--instance", "thm44", "-D", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(verdict(&v, "poincare-comparison"), "pass");
    assert_eq!(v["bounds"]["homological"], 6);
    assert_eq!(v["verdicts"][0]["bound"], 6);
}

#[test]
fn verify_control_is_not_applicable() {
    let out = qci(&[
        "verify",
        "module-poincare",
        "--instance",
        "line-x2",
        "--module",
        "quotient",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(verdict(&v, "module-poincare-comparison"), "not-applicable");
    let check = &v["tables"]["checks"][0];
    assert_eq!(check["lhs"][0], 1);
    assert_eq!(check["lhs"][1], -1);
    assert_eq!(check["rhs"][1], 0);
}

#[test]
fn betti_and_series() {
    let v = json(&qci(&["betti", "--instance", "hypersurface", "-D", "5"]));
    assert_eq!(v["series"]["betti"], serde_json::json!([1, 1, 1, 1, 1, 1]));
    let v = json(&qci(&["betti", "--instance", "ci-x2y3", "-D", "4"]));
    assert_eq!(v["series"]["betti"], serde_json::json!([1, 2, 1, 0, 0]));
    assert_eq!(v["tables"]["terminated"], true);
    let v = json(&qci(&["series", "--instance", "thm44", "-D", "4"]));
    assert_eq!(v["series"]["hilbert_r"], serde_json::json!([1, 4, 3, 0, 0]));
    assert_eq!(
        v["series"]["poincare_r"],
        serde_json::json!([1, 4, 13, 40, 121])
    );
    let v = json(&qci(&[
        "deviations",
        "--instance",
        "hypersurface",
        "-D",
        "4",
    ]));
    assert_eq!(v["series"]["deviations"], serde_json::json!([1, 1, 0, 0]));
}

#[test]
fn tate_and_invariants() {
    let out = qci(&["tate", "--instance", "thm44", "-D", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(verdict(&v, "tate-resolution"), "True");
    assert_eq!(
        v["series"]["tate_ranks"],
        serde_json::json!([1, 1, 1, 1, 1])
    );
    let v = json(&qci(&["invariants", "--instance", "xy-y2"]));
    let r = &v["tables"]["ring"];
    assert_eq!(
        (r["dim"].as_i64(), r["depth"].as_i64(), r["cid"].as_i64()),
        (Some(1), Some(0), Some(1))
    );
}

#[test]
fn text_format() {
    let out = qci(&[
        "betti",
        "--instance",
        "ci-x2y3",
        "--format",
        "text",
        "--timing",
    ]);
    let s = String::from_utf8_lossy(&out.stdout);
    assert!(s.contains("total:"), "{s}");
    assert!(s.contains("time:"), "{s}");
}
