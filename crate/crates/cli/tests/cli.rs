use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn kakeya(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kakeya"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn kakeya_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kakeya"))
        .args(args)
        .env(key, val)
        .output()
        .expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let k = dir.path().join("k.json");
    let o = kakeya(&[
        "construct",
        "--seed",
        "conic",
        "--q",
        "7",
        "--dim",
        "3",
        "--out",
        path_str(&k),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let o = kakeya(&["verify", path_str(&k), "--r", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let reports = stdout_json(&o);
    let checks: Vec<&str> = reports
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["check"].as_str().unwrap())
        .collect();
    assert_eq!(
        checks,
        ["incidence", "directions", "size", "bound_consistency(r=2)"]
    );
}

#[test]
fn output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let o = kakeya(&[
            "construct",
            "--seed",
            "ngon",
            "--N",
            "7",
            "--dim",
            "3",
            "--out",
            path_str(p),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(kakeya(&["verify", path_str(&a)]).status.code(), Some(0));
}

#[test]
fn bound_subcommand() {
    let o = kakeya(&["bound", "--N", "7", "--dim", "3", "--r", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["bound"], "84");
    let o = kakeya(&[
        "bound",
        "--N",
        "8",
        "--dim",
        "2",
        "--optimize",
        "--r-max",
        "8",
    ]);
    let v = stdout_json(&o);
    assert_eq!(v["best_r"], 1);
    assert_eq!(v["bound"], "36");
    assert_eq!(
        kakeya(&["bound", "--N", "7", "--dim", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        kakeya(&["bound", "--N", "7", "--dim", "3", "--r", "1", "--optimize"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn small_seed_exits_two_with_condition() {
    let o = kakeya(&["construct", "--seed", "conic", "--q", "5", "--dim", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.contains("N >= 2(n-1) = 6") && err.contains("N = 5"),
        "{err}"
    );
}

#[test]
fn invalid_inputs_exit_two() {
    for args in [
        vec!["construct", "--seed", "conic", "--dim", "3"],
        vec![
            "construct",
            "--seed",
            "conic",
            "--q",
            "7",
            "--N",
            "7",
            "--dim",
            "3",
        ],
        vec!["construct", "--seed", "oval", "--q", "7", "--dim", "3"],
        vec!["construct", "--seed", "conic", "--q", "9", "--dim", "3"],
        vec!["verify", "/nonexistent/k.json"],
        vec!["frobnicate"],
    ] {
        assert_eq!(kakeya(&args).status.code(), Some(2), "{args:?}");
    }
    let o = kakeya_env(
        &["construct", "--seed", "ngon", "--N", "7", "--dim", "3"],
        "KAKEYA_TOL",
        "-1",
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tampered_set_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let k = dir.path().join("k.json");
    kakeya(&[
        "construct",
        "--seed",
        "conic",
        "--q",
        "5",
        "--dim",
        "3",
        "--out",
        path_str(&k),
    ]);
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&k).unwrap()).unwrap();
    doc["points"].as_array_mut().unwrap().pop();
    std::fs::write(&k, serde_json::to_string(&doc).unwrap()).unwrap();
    let o = kakeya(&["verify", path_str(&k)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_json(&o)[0]["verdict"], "fail");
}

#[test]
fn emitted_seed_reports() {
    let dir = tempfile::tempdir().unwrap();
    let seed = dir.path().join("seed.json");
    let o = kakeya(&[
        "construct",
        "--seed",
        "ngon",
        "--N",
        "8",
        "--dim",
        "2",
        "--emit-seed",
        path_str(&seed),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = kakeya(&["seed-report", path_str(&seed)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["verdict"], "pass");
    let sel = format!("file:{}", path_str(&seed));
    let o = kakeya(&["construct", "--seed", &sel, "--dim", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn certify_plane_conic() {
    let dir = tempfile::tempdir().unwrap();
    let (k, c) = (dir.path().join("k.json"), dir.path().join("c.json"));
    kakeya(&[
        "construct",
        "--seed",
        "conic",
        "--q",
        "5",
        "--dim",
        "2",
        "--out",
        path_str(&k),
    ]);
    let o = kakeya(&["certify", path_str(&k), "--r", "1", "--out", path_str(&c)]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let cert: Value = serde_json::from_str(&std::fs::read_to_string(&c).unwrap()).unwrap();
    assert_eq!(cert["verdict"], "pass-vacuous");
    assert_eq!(cert["r"], 1);
    let real = dir.path().join("r.json");
    kakeya(&[
        "construct",
        "--seed",
        "ngon",
        "--N",
        "5",
        "--dim",
        "2",
        "--out",
        path_str(&real),
    ]);
    assert_eq!(
        kakeya(&["certify", path_str(&real), "--r", "1"])
            .status
            .code(),
        Some(2)
    );
}
