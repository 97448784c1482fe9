use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_spencer-workbench"));
    c.env_remove("WORKBENCH_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", "--suite", "mirror"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--suite", "sl2"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--suite", "su3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--convention", "signed"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_report_shape() {
    let out = run(&["verify", "--suite", "sl2", "--convention", "graded"]);
    let r = json(&out);
    assert_eq!(r["suite"], "sl2");
    assert_eq!(r["convention"], "graded");
    let claims = r["claims"].as_array().unwrap();
    for c in claims {
        for key in [
            "id",
            "paper_location",
            "provenance",
            "status",
            "expected",
            "computed",
            "witness",
        ] {
            assert!(c.get(key).is_some(), "{key} missing in {c}");
        }
    }
    let s = &r["summary"];
    let total: u64 = ["confirmed", "refuted", "indeterminate", "skipped"]
        .iter()
        .map(|k| s[*k].as_u64().unwrap())
        .sum();
    assert_eq!(total as usize, claims.len());
}

#[test]
fn verify_writes_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["verify", "--suite", "mirror", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("confirmed     B-mirror-antisymmetry"), "{stdout}");
    let r: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(r["summary"]["refuted"], 0);
}

#[test]
fn seed_environment_overrides_flag() {
    let out = bin()
        .args(["verify", "--suite", "mirror", "--seed", "3"])
        .env("WORKBENCH_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 99);
    let out = bin()
        .args(["verify", "--suite", "mirror"])
        .env("WORKBENCH_SEED", "seven")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("WORKBENCH_SEED"));
}

#[test]
fn bless_writes_snapshot_file() {
    let dir = tempfile::tempdir().unwrap();
    let snaps = dir.path().join("snaps.json");
    let s = snaps.to_str().unwrap();
    let out = run(&["verify", "--suite", "cartan", "--snapshots", s, "--bless"]);
    assert_ne!(out.status.code(), Some(2));
    let stored: Value = serde_json::from_str(&std::fs::read_to_string(&snaps).unwrap()).unwrap();
    assert!(stored.get("C-mode-gap").is_some());
    let r = json(&run(&["verify", "--suite", "cartan", "--snapshots", s]));
    for c in r["claims"].as_array().unwrap() {
        assert_ne!(c["snapshot"], "mismatch");
        assert_ne!(c["snapshot"], "missing");
    }
}

#[test]
fn kernel_of_zero_operator() {
    let dir = tempfile::tempdir().unwrap();
    let zero = write(dir.path(), "zero.json", r#"{"coords": []}"#);
    let out = run(&[
        "kernel",
        "--algebra",
        "sl2",
        "--degree",
        "1",
        "--lambda",
        &zero,
        "--mode",
        "spencer",
        "--convention",
        "graded",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["dimension"], 3);
}

#[test]
fn kernel_cartan_modes() {
    let dir = tempfile::tempdir().unwrap();
    let lh = write(dir.path(), "lh.json", r#"{"coords": {"H": "1"}}"#);
    let lin = json(&run(&[
        "kernel",
        "--algebra",
        "sl2",
        "--degree",
        "1",
        "--lambda",
        &lh,
        "--mode",
        "linearized",
    ]));
    assert_eq!(lin["dimension"], 1);
    let rows = &lin["constraint_matrix"]["rows"];
    assert_eq!(rows.as_array().unwrap().len(), 2);
    let full = json(&run(&[
        "kernel",
        "--algebra",
        "sl2",
        "--degree",
        "1",
        "--lambda",
        &lh,
        "--mode",
        "full",
    ]));
    assert_eq!(full["dimension"], 0);

    let le = write(dir.path(), "le.json", r#"{"coords": ["0", "1", "0"]}"#);
    let lin = json(&run(&[
        "kernel",
        "--algebra",
        "sl2",
        "--degree",
        "1",
        "--lambda",
        &le,
        "--mode",
        "linearized",
    ]));
    assert_eq!(lin["dimension"], 0);

    // No declared roots: nothing constrains Sym^k(𝔥).
    let out = json(&run(&[
        "kernel",
        "--algebra",
        "su2c",
        "--degree",
        "2",
        "--lambda",
        &le,
        "--mode",
        "linearized",
    ]));
    assert_eq!(out["dimension"], 1);
    assert_eq!(out["constraint_matrix"]["rows"].as_array().unwrap().len(), 0);

    let mut spec = spencer_core::liealg::builtin::sl2_spec();
    spec.cartan.clear();
    spec.roots.clear();
    let spec = write(dir.path(), "bare.json", &serde_json::to_string(&spec).unwrap());
    let out = run(&[
        "kernel",
        "--spec",
        &spec,
        "--degree",
        "1",
        "--lambda",
        &le,
        "--mode",
        "linearized",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("root data"));
}

#[test]
fn operator_dump() {
    let dir = tempfile::tempdir().unwrap();
    let l = write(dir.path(), "l.json", r#"{"coords": [1, "1/2", "i"]}"#);
    let out = run(&[
        "operator",
        "--algebra",
        "su2c",
        "--lambda",
        &l,
        "--degree",
        "2",
        "--convention",
        "ungraded",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let m = json(&out);
    let matrix = m["matrix"].as_array().unwrap();
    assert_eq!(matrix.len(), 10);
    assert!(matrix.iter().all(|r| r.as_array().unwrap().len() == 6));
}

#[test]
fn spec_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let spec = serde_json::to_string(&spencer_core::liealg::builtin::sl2_spec()).unwrap();
    let spec = write(dir.path(), "sl2.json", &spec);
    let zero = write(dir.path(), "zero.json", r#"{"coords": []}"#);
    let out = run(&["kernel", "--spec", &spec, "--degree", "2", "--lambda", &zero]);
    assert_eq!(json(&out)["dimension"], 6);

    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"name": "x", "dim": 2, "basis": ["a"], "brackets": []}"#,
    );
    let out = run(&["kernel", "--spec", &bad, "--degree", "1", "--lambda", &zero]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("basis"),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn malformed_lambda_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    for (text, field) in [
        (r#"{"coords": {"X": "1"}}"#, "coords.X"),
        (r#"{"coords": ["1", "one"]}"#, "coords[1]"),
        (r#"{"values": []}"#, "coords"),
        (r#"{"coords": ["1", "2", "3", "4"]}"#, "coords"),
    ] {
        let l = write(dir.path(), "l.json", text);
        let out = run(&["operator", "--algebra", "sl2", "--lambda", &l, "--degree", "1"]);
        assert_eq!(out.status.code(), Some(2), "{text}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(field), "{text}: {err}");
    }
    let out = run(&[
        "operator",
        "--algebra",
        "sl2",
        "--lambda",
        "/nonexistent/l.json",
        "--degree",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_is_seeded() {
    let args = [
        "table",
        "--algebra",
        "su2c-rooted",
        "--degrees",
        "1..3",
        "--samples",
        "4",
        "--seed",
        "5",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let t = json(&a);
    let rows = t["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 12);
    for r in rows {
        for x in r["lambda"]["coords"].as_array().unwrap() {
            let v: i64 = x.as_str().unwrap().parse().unwrap();
            assert!((-3..=3).contains(&v));
        }
    }
    let other = run(&[
        "table",
        "--algebra",
        "su2c-rooted",
        "--degrees",
        "1..3",
        "--samples",
        "4",
        "--seed",
        "6",
    ]);
    assert_ne!(a.stdout, other.stdout);
    assert_eq!(
        run(&["table", "--algebra", "sl2", "--degrees", "3..1"]).status.code(),
        Some(2)
    );
}
