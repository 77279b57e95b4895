use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn exe() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_atiyah-lab"));
    c.env_remove("ATIYAH_LAB_WORKERS");
    c
}

fn run(args: &[&str]) -> Output {
    exe().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn det_examples() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.json", r#"{"points": [[0,0,0],[1,0,0],[0.5,0.8660254037844386,0]]}"#);
    let out = run(&["det", "--in", &tri]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["n"], 3);
    assert!((v["abs_D"].as_f64().unwrap() - 1.125).abs() < 1e-12);
    for key in ["D_re", "D_im", "cond_hint"] {
        assert!(v[key].is_f64(), "{key}");
    }

    let two = write(dir.path(), "two.csv", "x,y,z\n0,0,0\n3,4,5\n");
    assert!((json(&run(&["det", "--in", &two]))["abs_D"].as_f64().unwrap() - 1.0).abs() < 1e-15);

    let dup = write(dir.path(), "dup.json", r#"{"points": [[0,0,0],[1,2,3],[1,2,3]]}"#);
    let out = run(&["det", "--in", &dup]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("coincide"));

    let bad = write(dir.path(), "bad.json", "{\"points\": [[0,0,0],\n[1,0,0],\n[1,0,]]}");
    let out = run(&["det", "--in", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3") && err.contains("column"), "{err}");

    assert_eq!(run(&["det", "--in", "/nonexistent/points.json"]).status.code(), Some(1));
}

#[test]
fn ngon_examples() {
    let v = json(&run(&["ngon", "--n", "4", "--direct"]));
    let closed = v["closed_form"].as_f64().unwrap();
    assert!((closed - 1.45710678).abs() < 1e-8);
    assert!((v["direct"]["abs_D"].as_f64().unwrap() - closed).abs() <= 1e-8);

    let v = json(&run(&["ngon", "--n", "100000"]));
    assert!((v["log_over_n2"].as_f64().unwrap() - 0.07970479).abs() < 1e-3);
    assert!(v["closed_form"].is_null());
    assert!(v["direct"].is_null() && v["bounds"].is_null());

    let v = json(&run(&["ngon", "--n", "10", "--bounds"]));
    let b = &v["bounds"];
    let p = b["product_ln"].as_f64().unwrap();
    assert!(b["lower_ln"].as_f64().unwrap() <= p && p <= b["upper_ln"].as_f64().unwrap());
    assert_eq!(b["contains"], true);

    assert!(json(&run(&["ngon", "--n", "30", "--direct"]))["direct"].is_null());
    assert_eq!(run(&["ngon", "--n", "2"]).status.code(), Some(1));
}

#[test]
fn four_examples() {
    let dir = tempfile::tempdir().unwrap();
    let square = write(dir.path(), "sq.csv", "x,y,z\n0,0,0\n1,0,0\n1,1,0\n0,1,0\n");
    let v = json(&run(&["four", "--in", &square]));
    assert_eq!(v["crelle"]["degenerate"], true);
    assert!(v["conj3"]["inequality"]["margin"].as_f64().unwrap() >= 0.0);
    assert!(v["inscribed"].is_object());
    assert_eq!(v["shape"], "convex");

    let h = (2.0f64 / 3.0).sqrt();
    let tet = write(
        dir.path(),
        "tet.json",
        &format!(r#"{{"points": [[0,0,0],[1,0,0],[0.5,{},0],[0.5,{},{h}]]}}"#, 3f64.sqrt() / 2.0, 3f64.sqrt() / 6.0),
    );
    let v = json(&run(&["four", "--in", &tet]));
    assert!(v["isosceles"]["margin"].as_f64().unwrap().abs() < 1e-12);
    assert!((v["conj4_margin"].as_f64().unwrap() - 1.5).abs() < 1e-12);

    let generic = write(dir.path(), "g.json", r#"{"points": [[0,0,0],[1,0.1,0],[0.2,0.9,0.1],[0.3,0.2,0.8]]}"#);
    let v = json(&run(&["four", "--in", &generic]));
    assert!(v["crelle_coplanar"].is_null() && v["inscribed"].is_null());
    assert!(v.get("crelle_coplanar").is_some());
    let rel = (v["en_real_part"].as_f64().unwrap() - v["det_real_part"].as_f64().unwrap()).abs()
        / v["det_real_part"].as_f64().unwrap();
    assert!(rel < 1e-10);

    let three = write(dir.path(), "three.json", r#"{"points": [[0,0,0],[1,0,0],[0,1,0]]}"#);
    assert_eq!(run(&["four", "--in", &three]).status.code(), Some(1));
}

#[test]
fn verify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let out = run(&["verify", "--suite", "conj4", "--trials", "2000", "--seed", "7", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let summary = json(&out);
    assert_eq!(summary["failures"], 0);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["min_margins"], summary["min_margins"]);
    let cx = dir.path().join("report.counterexamples.jsonl");
    assert_eq!(std::fs::read_to_string(&cx).unwrap(), "");

    let out = run(&[
        "verify", "--suite", "conj2", "--trials", "5", "--tolerance", "-1", "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(std::fs::read_to_string(&cx).unwrap().lines().count(), 5);

    let out = run(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("conj2-convex-quad"));

    let via_env = exe()
        .args(["verify", "--suite", "technical-f", "--trials", "500"])
        .env("ATIYAH_LAB_WORKERS", "3")
        .output()
        .unwrap();
    let serial = run(&["verify", "--suite", "technical-f", "--trials", "500", "--workers", "1"]);
    let mut a = json(&via_env);
    let mut b = json(&serial);
    a["wall_ms"] = Value::Null;
    b["wall_ms"] = Value::Null;
    assert_eq!(a, b);
}

#[test]
fn constants_examples() {
    let v = json(&run(&["constants"]));
    let b = v["B"].as_f64().unwrap();
    assert_eq!((b * 1e8).floor(), 42627839.0);
    assert!((v["integral"].as_f64().unwrap() - 0.5258998951).abs() < 5e-10);
    let l = v["L"].as_f64().unwrap();
    assert!((l - 0.0797048085375331).abs() < 1e-15);
    // the printed decimal expansion agrees to seven places
    assert!((l - 0.07970479).abs() < 5e-8);
    assert!((v["zeta3"].as_f64().unwrap() - 1.2020569031595943).abs() < 1e-15);
    assert!((v["catalan"].as_f64().unwrap() - 0.915965594177219).abs() < 1e-15);
    for key in ["main", "sec", "xsec"] {
        assert!(v["integral_check_errors"][key].as_f64().unwrap() < 1e-8);
    }
}
