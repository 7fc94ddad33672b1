use std::process::{Command, Output};

use serde_json::Value;

fn affcox(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affcox"))
        .args(args)
        .env_remove("AFFCOX_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = affcox(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn output_is_deterministic() {
    let runs = [
        vec![
            "enumerate",
            "--group",
            "h3",
            "--axis",
            "2fold",
            "--k",
            "-2..2",
            "--json",
        ],
        vec!["solve", "--target", "7-4tau", "--json"],
        vec![
            "array", "--group", "h2", "--seed", "pentagon", "--axis", "highest", "--length", "tau", "--out", "csv",
        ],
        vec!["op", "--axis", "3fold", "--emit", "orbit", "--json"],
    ];
    for args in runs {
        let a = affcox(&args);
        let b = affcox(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn enumerate_then_verify_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for axis in ["2fold", "3fold", "5fold"] {
        let path = dir.path().join(format!("{axis}.json"));
        let p = path.to_str().unwrap();
        let out = affcox(&[
            "enumerate",
            "--group",
            "h3",
            "--axis",
            axis,
            "--k",
            "-1..1",
            "--json",
            "-o",
            p,
            "--quiet",
        ]);
        assert!(out.status.success());
        assert!(out.stderr.is_empty());
        let v = affcox(&["verify", "--file", p, "--json"]);
        assert!(v.status.success(), "{axis}: {}", String::from_utf8_lossy(&v.stdout));
    }
}

#[test]
fn verify_rejects_a_nonzero_determinant() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let m = r#"[["2","-1/2","0"],["-1","2","-1"],["0","-1","2"]]"#;
    std::fs::write(&path, m).unwrap();
    let out = affcox(&["verify", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn relative_outputs_land_in_the_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_affcox"))
        .args(["roots", "--group", "h3", "--format", "csv", "-o", "roots.csv"])
        .env("AFFCOX_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let body = std::fs::read_to_string(dir.path().join("roots.csv")).unwrap();
    // header plus 30 roots
    assert_eq!(body.lines().count(), 31);
    assert!(String::from_utf8_lossy(&out.stderr).contains("wrote"));
}

#[test]
fn invalid_input_fails() {
    for args in [
        vec!["solve", "--target", "2-"],
        vec!["enumerate", "--group", "h3", "--axis", "7fold"],
        vec!["roots", "--group", "h5"],
        vec!["array", "--group", "h2", "--seed", "hexagon", "--length", "1"],
        vec!["verify", "--file", "/nonexistent/matrix.json"],
        vec!["enumerate", "--group", "h3", "--axis", "2fold", "--k", "3..x"],
    ] {
        let out = affcox(&args);
        assert!(!out.status.success(), "{args:?} succeeded");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let out = affcox(&["solve", "--target", "nope", "--json"]);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err.get("error").is_some());
}

#[test]
fn group_and_roots() {
    for (g, n) in [("h2", "10"), ("h3", "120")] {
        let out = affcox(&["group", "--group", g, "--count-only"]);
        assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), n);
    }
    let roots = json(&["roots", "--group", "h2", "--format", "json"]);
    assert_eq!(roots["count"], 10);
    assert_eq!(roots["roots"].as_array().map(Vec::len), Some(10));
}

#[test]
fn enumerate_reports_vanishing_determinants() {
    let v = json(&[
        "enumerate",
        "--group",
        "h3",
        "--axis",
        "5fold",
        "--k",
        "-2..1",
        "--gamma",
        "2",
        "--json",
    ]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for r in rows {
        assert_eq!(r["det"], serde_json::json!({"a": "0", "b": "0"}));
    }
}

#[test]
fn solve_reports_both_orbits_of_three_minus_tau() {
    let v = json(&["solve", "--target", "3-tau", "--bound", "12", "--json"]);
    assert_eq!(v["orbits"].as_array().map(Vec::len), Some(2));
}

#[test]
fn array_formats() {
    let v = json(&[
        "array", "--group", "h2", "--axis", "highest", "--length", "1", "--length", "tau", "--json",
    ]);
    let cards: Vec<_> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["cardinality"].clone())
        .collect();
    assert_eq!(cards, vec![20, 25]);
    let svg = affcox(&[
        "array", "--group", "h2", "--axis", "bisector", "--length", "tau", "--out", "svg",
    ]);
    let svg = String::from_utf8(svg.stdout).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<circle").count(), 25);
}

#[test]
fn op_emits_a_single_pure_translation() {
    let v = json(&["op", "--axis", "3fold", "--emit", "matrix", "--json"]);
    let twists = v["twists"].as_array().unwrap();
    assert_eq!(twists.len(), 6);
    let pure: Vec<_> = twists.iter().filter(|t| t["kind"] == "PureTranslation").collect();
    assert_eq!(pure.len(), 1);
    assert_eq!(pure[0]["operator"]["shift"], v["pure_translation"]["operator"]["shift"]);
}
