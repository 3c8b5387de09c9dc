use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qplane(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qplane"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn verify_solution_one() {
    let out = qplane(&["verify", "--solution", "I", "--zeta", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let reports = v["reports"].as_array().unwrap();
    assert!(reports.iter().all(|r| r["pass"] == Value::Bool(true)));
    assert_eq!(reports.len(), 7);
    assert_eq!(v["matches"], Value::Bool(true));
}

#[test]
fn verify_solution_three_matches_pattern() {
    let out = qplane(&["verify", "--solution", "III"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let pass = |name: &str| {
        v["reports"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["condition"] == name)
            .unwrap()["pass"]
            .clone()
    };
    for c in ["SP", "Pg", "compat", "j-s"] {
        assert_eq!(pass(c), Value::Bool(true), "{c}");
    }
    for c in ["her-f", "braid"] {
        assert_eq!(pass(c), Value::Bool(false), "{c}");
    }
}

#[test]
fn verify_every_catalog_entry() {
    for name in ["I", "II", "III", "RHAT_PLUS", "RHAT_MINUS", "DEGENERATE"] {
        let out = qplane(&["verify", "--solution", name]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn garbage_flip_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "garbage.json", "not json");
    let g = write(dir.path(), "g.json", r#"{"metric": [["1","0"],["0","1"]]}"#);
    let out = qplane(&["verify", "--flip", &f, "--metric", &g]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_expression_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "s.json",
        r#"{"flip": [["q","0","0","0"],["0","0","q","0"],["0","q^(-1)","0","0"],["0","0","0","x"]]}"#,
    );
    let g = write(dir.path(), "g.json", r#"{"metric": [["1","0"],["0","1"]]}"#);
    let out = qplane(&["verify", "--flip", &f, "--metric", &g]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(3,3)"));
}

#[test]
fn user_files_failing_checks_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "s.json",
        r#"{"flip": [["q","0","0","0"],["0","0","q","0"],["0","q^(-1)","0","0"],["0","0","0","q^(-1)"]]}"#,
    );
    let good = write(dir.path(), "g.json", r#"{"metric": [["0","q^(1/2)"],["q^(-1/2)","0"]]}"#);
    let bad = write(dir.path(), "h.json", r#"{"metric": [["1","0"],["0","1"]]}"#);
    assert_eq!(qplane(&["verify", "--flip", &f, "--metric", &good]).status.code(), Some(0));
    assert_eq!(qplane(&["verify", "--flip", &f, "--metric", &bad]).status.code(), Some(1));
}

#[test]
fn solve_metric_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "s.json",
        r#"{"flip": [["q","0","0","0"],["0","0","q","0"],["0","q^(-1)","0","0"],["0","0","0","q^(-1)"]]}"#,
    );
    let out = qplane(&["solve-metric", "--flip", &f]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dimension"], 1);
    assert_eq!(v["basis"][0], serde_json::json!(["0", "1", "r^4", "0"]));
    assert_eq!(v["real_rays"].as_array().unwrap().len(), 1);
}

#[test]
fn curvature_flat_and_pole() {
    let out = qplane(&["curvature", "--solution", "I", "--zeta", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["flat"], Value::Bool(true));
    let out = qplane(&["curvature", "--solution", "II"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["limit_q1"]["finite"], Value::Bool(false));
}

#[test]
fn rep_check() {
    let out = qplane(&["rep-check", "--alpha", "0.25", "--beta", "0.5", "--k", "1,0"]);
    // αβ = 1/8 is fine; αβ = 1/4 would make q^4 = 1
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["residual"].as_f64().unwrap() < 1e-12);
    let out = qplane(&["rep-check", "--alpha", "0.5", "--beta", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qplane(&["rep-check", "--alpha", "0.1", "--beta", "0.5", "--k", "oops"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn jordan_check() {
    let out = qplane(&["jordan-check"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for part in ["commutator", "generators", "limits"] {
        assert!(v.get(part).is_some(), "{part}");
    }
}

#[test]
fn catalog_list_and_dump() {
    let out = qplane(&["catalog", "list"]);
    assert_eq!(json(&out).as_array().unwrap().len(), 6);
    let out = qplane(&["catalog", "dump", "III"]);
    let v = json(&out);
    assert_eq!(v["flip"].as_array().unwrap().len(), 4);
    assert_eq!(v["metric"], serde_json::json!([["1", "0"], ["0", "1"]]));
    let out = qplane(&["catalog", "dump", "IV"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_keys_sorted() {
    let out = qplane(&["verify", "--solution", "II"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
    assert!(pos("degenerate_metric") < pos("expected"));
    assert!(pos("expected") < pos("matches"));
    assert!(pos("matches") < pos("reports"));
}

#[test]
fn text_format() {
    let out = qplane(&["verify", "--solution", "I", "--zeta", "0", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("braid   pass"));
}
