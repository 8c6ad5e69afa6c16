use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const GHZ: &str = r#"{"amplitudes": [[0.7071067811865476,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0.7071067811865476,0]], "label": "GHZ"}"#;
const W: &str = r#"{"amplitudes": [[0,0],[0.5773502691896258,0],[0.5773502691896258,0],[0,0],[0.5773502691896258,0],[0,0],[0,0],[0,0]]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qutwist")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn analyze_reports_the_ghz_anchors() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["analyze", &file(dir.path(), "g.json", GHZ)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["tau_abc"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["xi"].as_f64().unwrap() - 0.25).abs() < 1e-12);
}

#[test]
fn classify_names_the_class() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["classify", &file(dir.path(), "w.json", W)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["label"], "WClass");
    assert_eq!(v["witnesses"]["null_line"], true);
    let o = run(&["classify", &file(dir.path(), "g.json", GHZ), "--tol", "1e-6"]);
    assert!(stdout(&o).contains("GHZClass"));
}

#[test]
fn canonical_lists_forms() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["canonical", &file(dir.path(), "g.json", GHZ)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    let o = run(&["canonical", &file(dir.path(), "w.json", W)]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["multiplicity"], 2);
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["analyze", "/no/such/file.json"]).status.code(), Some(2));
    let short = file(dir.path(), "s.json", r#"{"amplitudes": [[1,0]]}"#);
    assert_eq!(run(&["classify", &short]).status.code(), Some(2));
    let null = file(dir.path(), "n.json", r#"{"amplitudes": [[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]}"#);
    assert_eq!(run(&["canonical", &null]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--ensemble", "nope", "--count", "3", "--seed", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["sweep", "--ensemble", "gaussian", "--count", "3", "--seed", "1", "--checks", "bogus"]).status.code(),
        Some(2)
    );
}

#[test]
fn sweep_csv_is_worker_independent() {
    let dir = tempfile::tempdir().unwrap();
    let mut csvs = Vec::new();
    for workers in ["1", "3"] {
        let out = dir.path().join(format!("{workers}.csv"));
        let o = run(&[
            "sweep", "--ensemble", "gaussian", "--count", "500", "--seed", "7", "--workers", workers,
            "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["count"], 500);
        csvs.push(fs::read_to_string(out).unwrap());
    }
    assert_eq!(csvs[0], csvs[1]);
    assert!(csvs[0].starts_with("index,N,tau_ABC"));
    assert_eq!(csvs[0].lines().count(), 501);
}

#[test]
fn violated_checks_exit_1() {
    // σ = 0 only holds on the GHZ orbit
    let o = run(&["sweep", "--ensemble", "gaussian", "--count", "50", "--seed", "2", "--checks", "sigma-zero"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["sweep", "--ensemble", "generalized-ghz", "--count", "50", "--seed", "2", "--checks", "sigma-zero"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 27);
    assert!(!text.contains("FAIL"));
}
