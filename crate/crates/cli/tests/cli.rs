use std::path::Path;
use std::process::{Command, Output};

fn randsub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_randsub")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("config.json");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

const K12: &str = r#"{"name": "k12", "family": {"kind": "complete", "n": 12},
    "regime": {"kind": "fixed", "p": 1.0}, "strategy": "dfs_longest_path",
    "trials": 4, "master_seed": 9}"#;

#[test]
fn run_writes_outputs_and_audits() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), K12);
    let out_dir = dir.path().join("out");
    let out = randsub(&["run", &config, "--out", out_dir.to_str().unwrap(), "--audit"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("dfs_longest_path"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("0 mismatches"));
    for f in ["report.json", "trials.csv", "summary.txt"] {
        assert!(out_dir.join(f).exists(), "{f}");
    }
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["summary"]["successes"], 4);
    assert_eq!(report["trials"][0]["length"], 11);
}

#[test]
fn run_json_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), K12);
    let a = randsub(&["run", &config, "--json"]);
    let b = randsub(&["run", &config, "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["vertex_count"], 12);
}

#[test]
fn bad_configs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = write_config(dir.path(), r#"{"family": {"kind": "moebius"}}"#);
    assert_eq!(randsub(&["run", &unknown]).status.code(), Some(2));
    let bad_p = write_config(
        dir.path(),
        r#"{"family": {"kind": "complete", "n": 5}, "regime": {"kind": "c_over_k", "c": 10.0},
            "strategy": "dfs_longest_path", "trials": 1, "master_seed": 1}"#,
    );
    assert_eq!(randsub(&["run", &bad_p]).status.code(), Some(2));
    assert_eq!(randsub(&["run", "/no/such/config.json"]).status.code(), Some(2));
}

#[test]
fn bounds_evaluate_formulas() {
    let v = json(&randsub(&["bounds", "dfs-cycle", "--omega", "400", "--k", "1000"]));
    assert!((v["bound"].as_f64().unwrap() - 250.0).abs() < 1e-9);
    let v = json(&randsub(&[
        "bounds",
        "linear-path",
        "--c",
        "100",
        "--k",
        "1000",
        "--bipartite",
    ]));
    assert!((v["bound"].as_f64().unwrap() - 1400.0).abs() < 1e-9);
    let v = json(&randsub(&["bounds", "combine", "--s", "2", "--t", "10", "--ell", "10"]));
    assert!((v["value"].as_f64().unwrap() - 13.0).abs() < 1e-9);
    let v = json(&randsub(&[
        "bounds",
        "counterexample",
        "--parts",
        "10",
        "--k",
        "3",
        "--p",
        "0.1",
    ]));
    let expected = (1.0 - 0.9f64.powi(9)).powi(10);
    assert!((v["probability"].as_f64().unwrap() - expected).abs() < 1e-12);
    let v = json(&randsub(&["bounds", "sprinkle", "--k", "199"]));
    assert!(v["rounds"].as_u64().unwrap() > 0);
    let bad = randsub(&["bounds", "combine", "--s", "3", "--t", "2", "--ell", "10"]);
    assert!(!bad.status.success());
}

#[test]
fn oracle_solves_small_instances() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("petersen.txt");
    let edges = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 0),
        (0, 5),
        (1, 6),
        (2, 7),
        (3, 8),
        (4, 9),
        (5, 7),
        (7, 9),
        (9, 6),
        (6, 8),
        (8, 5),
    ];
    let mut text = String::from("10 15\n");
    for (u, v) in edges {
        text.push_str(&format!("{u} {v}\n"));
    }
    std::fs::write(&path, text).unwrap();
    let v = json(&randsub(&["oracle", path.to_str().unwrap()]));
    assert_eq!(v["longest_path"]["optimum"], 9);
    // the Petersen graph is not Hamiltonian
    assert_eq!(v["longest_cycle"]["optimum"], 9);
    assert_eq!(v["connectivity"], 3);
}
