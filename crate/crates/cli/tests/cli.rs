use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn multidet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multidet")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--format=json");
    let out = multidet(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().expect("exit code"), v)
}

fn fixture(stem: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../fixtures/{stem}.json")).display().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("multidet-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn failed_checks(v: &Value) -> Vec<String> {
    v["items"].as_array().unwrap().iter().filter(|i| i["verdict"] == "fail").map(|i| i["check"].as_str().unwrap().to_string()).collect()
}

#[test]
fn validate_picard_on_valid_presentations() {
    let (code, v) = json(&["validate-picard", &fixture("rings")]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "valid");
}

#[test]
fn qhomology_table() {
    let (code, v) = json(&["qhomology", "--group", "Z/2", "--max-level", "3"]);
    assert_eq!(code, 0);
    let h: Vec<(String, String)> = v["items"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|i| i["check"].as_str().unwrap().starts_with('H'))
        .map(|i| (i["check"].as_str().unwrap().into(), i["detail"].as_str().unwrap().into()))
        .collect();
    let want = [("H0", "Z/2"), ("H1", "0"), ("H2", "Z/2"), ("H3", "Z/2")];
    assert_eq!(h, want.map(|(a, b)| (a.to_string(), b.to_string())));
}

#[test]
fn seeded_invalid_determinant_names_the_axiom() {
    let (code, v) = json(&["check-det", &fixture("seeded_invalid_det")]);
    assert_eq!(code, 1);
    assert!(failed_checks(&v).iter().all(|c| c == "octahedron"), "{v}");
    let (code, _) = json(&["check-det", "--fixture", "graded_lines"]);
    assert_eq!(code, 0);
}

#[test]
fn unknown_command_and_errors_exit_2() {
    assert_eq!(multidet(&["no-such-command"]).status.code(), Some(2));
    let (code, v) = json(&["check-det", "/nonexistent/workspace.json"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "error");
    let (code, v) = json(&["validate-picard", "--fixture", "rings", "--id", "missing"]);
    assert_eq!(code, 2);
    assert!(v["items"][0]["detail"].as_str().unwrap().contains("missing"));
}

#[test]
fn parse_errors_are_positioned() {
    let dir = scratch("parse");
    let path = dir.join("bad.json");
    std::fs::write(&path, "{\n  \"multidet_schema\": 1,\n  \"picard\": [ { \"id\": 3 } ]\n}\n").unwrap();
    let (code, v) = json(&["validate-picard", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    let detail = v["items"][0]["detail"].as_str().unwrap();
    assert!(detail.contains("bad.json:3:"), "{detail}");
}

#[test]
fn emit_workspace_round_trips() {
    let dir = scratch("emit");
    let once = dir.join("once.json");
    let out = multidet(&["emit-workspace", &fixture("graded_lines"), &fixture("rings"), "--output", once.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let twice = multidet(&["emit-workspace", once.to_str().unwrap()]);
    assert_eq!(std::fs::read(&once).unwrap(), twice.stdout);
}

#[test]
fn emitted_fixtures_match_the_bundled_ones() {
    let dir = scratch("fixtures");
    let (code, _) = json(&["emit-fixtures", "--dir", dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    for stem in ["graded_lines", "graded_lines_tensor", "two_squares", "rings", "cubes", "seeded_invalid_det"] {
        let a = std::fs::read(dir.join(format!("{stem}.json"))).unwrap();
        assert!(a == std::fs::read(fixture(stem)).unwrap(), "{stem}");
    }
}

#[test]
fn cubes_and_relations() {
    let (code, v) = json(&["check-cube", &fixture("cubes")]);
    assert_eq!(code, 1);
    assert_eq!(failed_checks(&v), vec!["broken-square/pentagon"]);
    let (code, _) = json(&["check-cube", &fixture("cubes"), "--id", "square"]);
    assert_eq!(code, 0);
    let (code, _) = json(&["check-cubical-relations", "--group", "Z/2", "--budget", "300"]);
    assert_eq!(code, 0);
}

#[test]
fn verdier_fixtures_and_octahedron() {
    let (code, v) = json(&["check-verdier", &fixture("two_squares"), "--presentation", "two-squares"]);
    assert_eq!(code, 0, "{v}");
    let dir = scratch("oct");
    let out = dir.join("with-grid.json");
    let (code, v) = json(&[
        "oct-to-2cube",
        "--fixture",
        "graded_lines",
        "--presentation",
        "graded-lines",
        "--octahedron",
        "A([0,1],[1,0],[0,1])",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{v}");
    let (code, _) = json(&["check-verdier", out.to_str().unwrap(), "--presentation", "graded-lines", "--diagram", "A([0,1],[1,0],[0,1])/2cube"]);
    assert_eq!(code, 0);
}

#[test]
fn functors_sums_and_compositions() {
    let t = fixture("graded_lines_tensor");
    assert_eq!(json(&["check-multiexact", &t]).0, 0);
    assert_eq!(json(&["check-verdier-admission", &t]).0, 0);
    assert_eq!(json(&["check-multiexact", "--fixture", "rings", "--id", "Z-sign-mult"]).0, 0);
    let (code, v) = json(&["compose-det", &t, "--det", "euler-target", "--functor", "tensor"]);
    assert_eq!(code, 0, "{v}");
    let dir = scratch("sum");
    let out = dir.join("sum.json");
    let (code, _) = json(&["sum-dets", &fixture("graded_lines"), "--left", "euler", "--right", "euler", "--output", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(json(&["check-cubical-det", out.to_str().unwrap(), "--id", "euler+euler"]).0, 0);
    assert_eq!(json(&["cross-check", &fixture("graded_lines"), "--random", "10"]).0, 0);
}

#[test]
fn rings_and_k0() {
    let (code, v) = json(&["validate-catring", &fixture("rings")]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = json(&["k0-ring", &fixture("graded_lines_tensor"), "--presentation", "graded-lines", "--tensor", "tensor"]);
    assert_eq!(code, 0);
    let group = v["items"].as_array().unwrap().iter().find(|i| i["check"] == "group").unwrap();
    assert_eq!(group["detail"], "Z");
}

#[test]
fn seeded_runs_are_reproducible() {
    let a = multidet(&["cross-check", "--fixture", "graded_lines", "--random", "5", "--seed", "7", "--format=json"]);
    let b = multidet(&["cross-check", "--fixture", "graded_lines", "--random", "5", "--seed", "7", "--format=json"]);
    assert_eq!(a.stdout, b.stdout);
    let s = multidet(&["selftest", "--only", "10", "--format=json"]);
    assert_eq!(s.status.code(), Some(0));
}
