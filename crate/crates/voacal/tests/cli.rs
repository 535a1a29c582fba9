use std::process::{Command, Output};

use serde_json::Value;

fn voacal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_voacal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn coeffs_table() {
    let o = voacal(&["coeffs", "--N", "2", "--count", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "a_1 = -1/2\na_2 = 1/4\na_3 = -3/16\n");
}

#[test]
fn apply_examples() {
    for (args, expect) in [
        (["apply", "phi", "--N", "2", "a[-1]|0>"], "2*x * a[-1]|0>"),
        (["apply", "delta", "--N", "2", "|0>"], "|0>"),
        (["apply", "delta", "--N", "1", "a[-1]|0>"], "a[-1]|0>"),
    ] {
        let o = voacal(&args);
        assert!(o.status.success(), "{args:?}");
        assert_eq!(stdout(&o).trim_end(), expect, "{args:?}");
    }
}

#[test]
fn apply_rejects_bad_vectors() {
    let o = voacal(&["apply", "phi", "--N", "2", "a[-1/2]|0>"]);
    assert_eq!(o.status.code(), Some(2));
    let o = voacal(&["apply", "phi", "--N", "2", "a[-1]"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_coeffs_prints_table_and_residual() {
    let o = voacal(&["verify", "--suite", "coeffs", "--N", "2", "--count", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("a_1 = -1/2\na_2 = 1/4\n"), "{out}");
    assert!(out.contains("a_8 = "));
    assert!(out.contains("residual = 0\n"));
}

#[test]
fn verify_roundtrip_passes() {
    let o = voacal(&["verify", "--suite", "roundtrip", "--N", "2", "--weight-cap", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn corrupted_phi_fails_with_witness() {
    let o = voacal(&[
        "verify",
        "--suite",
        "tmain1",
        "--N",
        "2",
        "--weight-cap",
        "1",
        "--window",
        "-4:4",
        "--inject-fault",
        "phi-scale",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failed: Vec<&Value> = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == "fail" && r["informational"] == false)
        .collect();
    assert!(!failed.is_empty());
    let w = &failed[0]["witness"];
    assert!(w["at"].as_object().is_some_and(|m| !m.is_empty()));
    assert!(w["lhs"].is_string() && w["rhs"].is_string());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(voacal(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(voacal(&["verify", "--window", "3:1"]).status.code(), Some(2));
    assert_eq!(
        voacal(&["verify", "--suite", "tmain1", "--N", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(voacal(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn escaped_divergence_exits_three() {
    let o = voacal(&["verify", "--suite", "bdm", "--weight-cap", "1", "--naive-substitution"]);
    assert_eq!(o.status.code(), Some(3));
}

fn json_run(threads: &str) -> String {
    let o = Command::new(env!("CARGO_BIN_EXE_voacal"))
        .args(["verify", "--suite", "voa", "--format", "json", "--deterministic"])
        .env("VOACAL_THREADS", threads)
        .output()
        .unwrap();
    assert!(o.status.success());
    stdout(&o)
}

#[test]
fn json_is_deterministic_and_well_formed() {
    let a = json_run("1");
    assert_eq!(a, json_run("3"));
    let doc: Value = serde_json::from_str(&a).unwrap();
    let reports = doc["reports"].as_array().unwrap();
    for r in reports {
        for key in [
            "suite",
            "identity",
            "params",
            "status",
            "k",
            "witness",
            "ms",
            "informational",
        ] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
        assert_eq!(r["ms"], 0);
        assert!(["pass", "fail", "inconclusive"].contains(&r["status"].as_str().unwrap()));
    }
    let s = &doc["summary"];
    assert_eq!(s["total"].as_u64().unwrap() as usize, reports.len());
    let parts: u64 = ["pass", "fail", "informational", "inconclusive"]
        .iter()
        .map(|k| s[k].as_u64().unwrap())
        .sum();
    assert_eq!(parts, s["total"].as_u64().unwrap());
}

#[test]
fn demo_runs() {
    let o = voacal(&["demo"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Phi(x) a[-1]|0> = 2*x * a[-1]|0>"));
}
