use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn ppa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ppa")).args(args).env_remove("PPA_SEED").env_remove("PPA_FORMAT").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_matrices_family_passes() {
    let o = ppa(&["verify", "--family", "matrices", "--n", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn catalog_document_feeds_verify() {
    let dir = TempDir::new().unwrap();
    let o = ppa(&["catalog", "matrices", "--n", "2", "--seed", "5"]);
    assert_eq!(code(&o), 0);
    let spec = write(&dir, "m2.json", &stdout(&o));
    let o = ppa(&["--format", "structured", "verify", s(&spec)]);
    assert_eq!(code(&o), 0);
    let recs = records(&o);
    assert_eq!(recs[0]["schema"], 1);
    assert!(recs.iter().any(|r| r["record"] == "torus" && r["bound"] == "16"));
}

#[test]
fn gk_on_affine_echoes_lambda() {
    let o = ppa(&["--format", "structured", "gk", "--family", "affine", "--n", "3", "--draws", "2"]);
    assert_eq!(code(&o), 0);
    let gk: Vec<Value> = records(&o).into_iter().filter(|r| r["record"] == "gk").collect();
    assert_eq!(gk.len(), 2);
    for r in gk {
        assert_eq!(r["matches_expected"], true);
        assert!(r["log"].as_array().unwrap().is_empty());
    }
}

#[test]
fn iso_negative_verdict_is_a_successful_run() {
    let dir = TempDir::new().unwrap();
    let l = write(&dir, "l.json", r#"{"n":2,"entries":[["0","2"],["-2","0"]]}"#);
    let m = write(&dir, "m.json", r#"{"n":2,"entries":[["0","3"],["-3","0"]]}"#);
    let o = ppa(&["--format", "structured", "iso", s(&l), s(&m)]);
    assert_eq!(code(&o), 0);
    let r = records(&o).into_iter().find(|r| r["record"] == "iso").unwrap();
    assert_eq!(r["verdict"], "no");

    let m = write(&dir, "mm.json", r#"{"n":2,"entries":[["0","-2"],["2","0"]]}"#);
    let o = ppa(&["--format", "structured", "iso", s(&l), s(&m)]);
    let r = records(&o).into_iter().find(|r| r["record"] == "iso").unwrap();
    assert_eq!(r["verdict"], "yes");
    assert_eq!(r["bracket_check"], true);
    assert!(r["witness"].is_array());
}

#[test]
fn iso_falls_back_to_orbit_search_for_free_groups() {
    let dir = TempDir::new().unwrap();
    let body = r#"{"n":3,"entries":[["0","a","b"],["-a","0","c"],["-b","-c","0"]]}"#;
    let l = write(&dir, "l.json", body);
    let o = ppa(&["--format", "structured", "--budget", "1", "iso", s(&l), s(&l)]);
    assert_eq!(code(&o), 0);
    let r = records(&o).into_iter().find(|r| r["record"] == "iso").unwrap();
    assert_eq!(r["verdict"], "yes");
    assert_eq!(r["method"], "orbit-search");
}

#[test]
fn malformed_input_exits_two_with_location() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\"n\": 2,\n \"mode\": \"polynomial\", \"steps\": [{}, {\"alpha\": {\"3\": []}}]}");
    let o = ppa(&["verify", s(&bad)]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("steps[1].alpha.3"), "{err}");
    assert_eq!(code(&ppa(&["frobnicate"])), 2);
    assert_eq!(code(&ppa(&["verify", "/nonexistent/spec.json"])), 2);
}

#[test]
fn failed_check_exits_one_with_witness() {
    let dir = TempDir::new().unwrap();
    // {x3, x1} = x2 with {x2, x1} = x1 breaks the step conditions
    let body = r#"{"n":3,"mode":"polynomial","steps":[{},
        {"alpha":{"1":[{"exponents":[1,0,0],"coefficient":"1"}]}},
        {"delta":{"1":[{"exponents":[0,1,0],"coefficient":"1"}]}}]}"#;
    let spec = write(&dir, "bad.json", body);
    let o = ppa(&["--format", "structured", "verify", s(&spec)]);
    assert_eq!(code(&o), 1);
    let failing: Vec<Value> = records(&o).into_iter().filter(|r| r["passed"] == false).collect();
    assert!(!failing.is_empty());
    let f = &failing[0]["failures"][0];
    assert!(f.is_object(), "{f}");
}

#[test]
fn structured_output_is_reproducible() {
    let args = ["--format", "structured", "--seed", "42", "gk", "--family", "symmetric", "--n", "2", "--certify"];
    let a = ppa(&args);
    let b = ppa(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = ppa(&["--format", "structured", "--seed", "43", "catalog", "matrices", "--n", "2"]);
    let d = ppa(&["--format", "structured", "--seed", "42", "catalog", "matrices", "--n", "2"]);
    assert_ne!(c.stdout, d.stdout);
}

#[test]
fn environment_mirrors_flags() {
    let flag = ppa(&["--format", "structured", "--seed", "9", "catalog", "affine", "--n", "2"]);
    let env = Command::new(env!("CARGO_BIN_EXE_ppa"))
        .args(["catalog", "affine", "--n", "2"])
        .env("PPA_SEED", "9")
        .env("PPA_FORMAT", "structured")
        .output()
        .unwrap();
    assert_eq!(flag.stdout, env.stdout);
}

#[test]
fn catalog_params_file_is_checked() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.json", r#"{"family":"matrices","lambda":"1","p":[["0","0"],["0","0"]]}"#);
    let o = ppa(&["--format", "structured", "catalog", "matrices", "--n", "2", "--params", s(&p)]);
    assert_eq!(code(&o), 0);
    let r = records(&o).into_iter().find(|r| r["record"] == "algebra").unwrap();
    assert_eq!(r["expected_lambda"][2][0], "1");
    assert_eq!(code(&ppa(&["catalog", "matrices", "--n", "3", "--params", s(&p)])), 2);
    assert_eq!(code(&ppa(&["catalog", "symmetric", "--n", "2", "--params", s(&p)])), 2);
}

#[test]
fn theta_reports_the_two_by_two_deletion() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.json", r#"{"family":"matrices","lambda":"1","p":[["0","0"],["0","0"]]}"#);
    let doc = stdout(&ppa(&["catalog", "matrices", "--n", "2", "--params", s(&p)]));
    let spec = write(&dir, "m2.json", &doc);
    let f = write(&dir, "f.json", r#"[{"exponents":[1,0,0,1],"coefficient":"1"}]"#);
    let o = ppa(&["--format", "structured", "theta", s(&spec), "--step", "4", "--apply", s(&f)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let recs = records(&o);
    let x11 = recs.iter().find(|r| r["record"] == "theta" && r["generator"] == "X11").unwrap();
    assert_eq!(x11["image"], "X11 - X12*X21*X22^-1");
    let apply = recs.iter().find(|r| r["record"] == "apply").unwrap();
    assert_eq!(apply["image"], "X11*X22 - X12*X21");
    assert!(recs.iter().filter(|r| r["record"] == "identity").all(|r| r["passed"] == true));
}

#[test]
fn hstable_and_center() {
    let o = ppa(&["--format", "structured", "hstable", "--family", "affine", "--n", "4", "--draws", "1"]);
    assert_eq!(code(&o), 0);
    let r = records(&o).into_iter().find(|r| r["record"] == "hstable").unwrap();
    assert_eq!(r["count"], 16);

    let dir = TempDir::new().unwrap();
    let l = write(&dir, "l.json", r#"{"n":3,"entries":[["0","1","1"],["-1","0","1"],["-1","-1","0"]]}"#);
    let o = ppa(&["--format", "structured", "center", s(&l)]);
    let r = records(&o).into_iter().find(|r| r["record"] == "center").unwrap();
    assert_eq!(r["rank"], 1);
    assert_eq!(r["basis"][0], serde_json::json!([1, -1, 1]));
}
