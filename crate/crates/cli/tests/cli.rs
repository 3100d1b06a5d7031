//! End-to-end command tests: exit codes, JSON round trips, determinism
//! across worker counts, and golden-fixture regeneration.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_morita"));
    // Isolate from any ambient cache.
    c.env_remove("MORITA_CACHE_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn morita")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn groups_listing_contains_the_quaternion_group() {
    let out = run(&["groups", "--order", "8", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let keys: Vec<&str> = v["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["key"].as_str().unwrap())
        .collect();
    assert_eq!(keys, vec!["8.C", "8.M", "8.E", "8.D", "8.Q"]);
}

#[test]
fn cohomology_of_q8_is_z8() {
    let out = run(&["cohomology", "--group", "8.Q", "--degree", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["invariant_factors"], serde_json::json!([8]));
}

#[test]
fn check_distinguishes_twists_with_exit_code_two() {
    let out = run(&["check", "--node-a", "4.C@1", "--node-b", "4.C@3"]);
    assert_eq!(out.status.code(), Some(2), "negative verdict must exit 2");
    let out = run(&["check", "--node-a", "4.C@0", "--node-b", "4.V@0,0,1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = run(&["check", "--node-a", "4.Z@0", "--node-b", "4.C@0"]);
    assert_eq!(out.status.code(), Some(1), "bad input must exit 1");
}

#[test]
fn dual_of_untwisted_z4_is_klein_four() {
    let out = run(&[
        "dual", "--group", "4.C", "--subgroup", "0,2", "--omega", "0", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pointed"], serde_json::json!(true));
    assert_eq!(v["dual_node"]["group"], serde_json::json!("4.V"));
    // Every output carries the basis echo for the coordinates used.
    assert!(v["basis"]["invariant_factors"].is_array());
}

#[test]
fn dual_of_twisted_q8_is_not_pointed() {
    let out = run(&[
        "dual", "--group", "8.Q", "--subgroup", "0,1,2,3", "--omega", "1", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pointed"], serde_json::json!(false));
}

#[test]
fn classify_four_reports_seven_classes_and_round_trips() {
    let out = run(&["classify", "--dimension", "4", "--format", "json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema"], serde_json::json!("morita-db/1"));
    assert_eq!(v["classes"].as_array().unwrap().len(), 7);
    // parse(render(db)) = db.
    let db = morita_core::morita::MoritaDatabase::from_json(&v).unwrap();
    assert_eq!(
        serde_json::to_string(&db.to_json()).unwrap(),
        serde_json::to_string(&v).unwrap()
    );
}

#[test]
fn classify_output_is_identical_across_worker_counts() {
    let a = stdout(&run(&["classify", "--dimension", "4", "--jobs", "1", "--format", "json"]));
    let b = stdout(&run(&["classify", "--dimension", "4", "--jobs", "3", "--format", "json"]));
    assert_eq!(a, b);
}

#[test]
fn cache_directory_is_used_when_set() {
    let dir = std::env::temp_dir().join(format!("morita-cache-test-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let run_cached = || {
        let mut c = Command::new(env!("CARGO_BIN_EXE_morita"));
        c.env("MORITA_CACHE_DIR", &dir)
            .args(["classify", "--dimension", "4", "--format", "json"]);
        c.output().expect("spawn")
    };
    let first = run_cached();
    assert!(first.status.success());
    let files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert_eq!(files.len(), 1, "one cached database file");
    let second = run_cached();
    assert_eq!(stdout(&first), stdout(&second));
    let _ = std::fs::remove_dir_all(&dir);
}

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .join("docs/fixtures")
}

#[test]
fn golden_fixtures_regenerate_identically() {
    let cases: Vec<(&str, Vec<&str>)> = vec![
        (
            "classify-4.json",
            vec!["classify", "--dimension", "4", "--format", "json"],
        ),
        (
            "cohomology-8Q-3.json",
            vec!["cohomology", "--group", "8.Q", "--degree", "3", "--format", "json"],
        ),
        (
            "lhs-8Q-z4.json",
            vec!["lhs", "--group", "8.Q", "--subgroup", "0,1,2,3", "--format", "json"],
        ),
        (
            "dual-4C-center.json",
            vec!["dual", "--group", "4.C", "--subgroup", "0,2", "--omega", "0", "--format", "json"],
        ),
    ];
    for (name, args) in cases {
        let expect = std::fs::read_to_string(fixture_dir().join(name))
            .unwrap_or_else(|e| panic!("fixture {name}: {e}"));
        let got = stdout(&run(&args));
        assert_eq!(got, expect, "fixture {name} drifted");
    }
}
