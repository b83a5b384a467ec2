use std::process::{Command, Output};

use serde_json::Value;

fn fgsr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fgsr")).args(args).env_remove("FGSR_SEED").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn pi_of_the_commutator() {
    let out = fgsr(&["--n", "2", "pi", "--word", "xyXY", "--k", "2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"xy\":1,\"xY\":1,\"Xy\":1,\"XY\":1}\n");
    let v = json(&fgsr(&["--n", "2", "pi", "--word", "xyXY", "--k", "1"]));
    assert_eq!(v, serde_json::json!({"x": 2, "y": 2}));
    let seg = json(&fgsr(&["--n", "2", "pi", "--word", "xyXY", "--k", "2", "--cyclic", "false"]));
    assert_eq!(seg.as_object().unwrap().len(), 3);
}

#[test]
fn fullset_of_y() {
    let v = json(&fgsr(&["--n", "3", "fullset", "--word", "y", "--moves", "R(x,y)"]));
    assert_eq!(v["size"], 8);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 8);
    assert!(entries.iter().all(|e| e["multiplicity"] == 1));
}

#[test]
fn rank_report() {
    let v = json(&fgsr(&["--n", "2", "rank", "--k", "3"]));
    assert_eq!(v["rank"], 12);
    let inv: Vec<u64> = v["invariants"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(inv, vec![1, 1, 1, 1, 1, 2]);
}

#[test]
fn matrix_and_distinguish() {
    let v = json(&fgsr(&["--n", "3", "matrix", "--moves", "R(x,y)", "--k", "1"]));
    assert_eq!(v["m_k"], 2);
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert_eq!(v["cols"].as_array().unwrap().len(), 15);
    let d = json(&fgsr(&["--n", "2", "distinguish", "--moves", "R(x,y)", "--moves2", ""]));
    assert_eq!(d, serde_json::json!({"level": 1, "witness": "x"}));
    let same = json(&fgsr(&["--n", "2", "distinguish", "--moves", "R(x,y)", "--moves2", "R(x,y)"]));
    assert_eq!(same["level"], Value::Null);
}

#[test]
fn verify_modes_pass() {
    for (mode, extra) in [
        ("counting", vec!["--moves", "R(x,y);L(y,x)"]),
        ("defining", vec!["--moves", "R(x,y);I(y)"]),
        ("tower", vec!["--moves", "L(x,y)"]),
        ("composition", vec!["--moves", "R(x,y)", "--moves2", "L(y,x)"]),
        ("kernel", vec![]),
    ] {
        let mut args = vec!["--n", "2", "--trials", "30", "verify", "--mode", mode, "--k", "2"];
        args.extend(extra);
        let v = json(&fgsr(&args));
        assert_eq!(v["passed"], true, "{mode}");
    }
}

#[test]
fn lift_from_file() {
    let dir = std::env::temp_dir().join(format!("fgsr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("v.json");
    // counts of the necklace xyXY at level 2
    std::fs::write(&path, r#"{"xy":1,"xY":1,"Xy":1,"XY":1}"#).unwrap();
    let z = json(&fgsr(&["--n", "2", "lift", "--vector", path.to_str().unwrap(), "--k", "2"]));
    let mut total = serde_json::Map::new();
    for (w, c) in z.as_object().unwrap() {
        let p = json(&fgsr(&["--n", "2", "pi", "--word", w, "--k", "2"]));
        for (u, x) in p.as_object().unwrap() {
            let prev = total.get(u).and_then(Value::as_i64).unwrap_or(0);
            total.insert(u.clone(), Value::from(prev + x.as_i64().unwrap() * c.as_i64().unwrap()));
        }
    }
    total.retain(|_, v| v.as_i64() != Some(0));
    assert_eq!(Value::Object(total), serde_json::json!({"xy":1,"xY":1,"Xy":1,"XY":1}));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(fgsr(&["--n", "2", "pi", "--word", "x?", "--k", "2"]).status.code(), Some(2));
    assert_eq!(fgsr(&["--n", "2", "pi", "--word", "xz", "--k", "2"]).status.code(), Some(2));
    assert_eq!(fgsr(&["--n", "2", "fullset", "--word", "x", "--moves", "R(x,x)"]).status.code(), Some(2));
    assert_eq!(fgsr(&["--n", "2", "pi", "--word", "xy", "--k", "9"]).status.code(), Some(3));
    assert_eq!(fgsr(&["--n", "2", "rank", "--k", "1"]).status.code(), Some(3));
    assert_eq!(fgsr(&["--n", "2", "verify", "--mode", "composition", "--moves", "R(x,y)"]).status.code(), Some(3));
    let not_kernel = std::env::temp_dir().join(format!("fgsr-cli-nk-{}.json", std::process::id()));
    std::fs::write(&not_kernel, r#"{"xy":1}"#).unwrap();
    let out = fgsr(&["--n", "2", "lift", "--vector", not_kernel.to_str().unwrap(), "--k", "2"]);
    assert_eq!(out.status.code(), Some(3));
    std::fs::remove_file(&not_kernel).unwrap();
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = [
        "--n",
        "3",
        "--seed",
        "17",
        "--trials",
        "40",
        "verify",
        "--mode",
        "counting",
        "--moves",
        "R(x,y);L(z,x)",
        "--k",
        "3",
    ];
    let a = fgsr(&args);
    let b = fgsr(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_fgsr"))
        .args(["--n", "3", "--trials", "40", "verify", "--mode", "counting", "--moves", "R(x,y);L(z,x)", "--k", "3"])
        .env("FGSR_SEED", "17")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
}
