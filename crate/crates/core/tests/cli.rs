use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn spinhol(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinhol"))
        .args(args)
        .current_dir(dir)
        .env("SPINHOL_CACHE_DIR", dir.join("cache"))
        .output()
        .expect("binary runs")
}

fn records(path: &Path) -> Vec<Value> {
    std::fs::read_to_string(path).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn empty_config_gives_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c.json"), r#"{"scenarios": []}"#).unwrap();
    let out = spinhol(dir.path(), &["--config", "c.json", "--out", "r.jsonl"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(dir.path().join("r.jsonl")).unwrap(), "");
}

#[test]
fn failed_expectation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = spinhol(dir.path(), &["classify", "--form", "unipotent-pair", "--expect", "so(8,8)", "--out", "r.jsonl"]);
    assert_eq!(out.status.code(), Some(1));
    let r = records(&dir.path().join("r.jsonl"));
    assert_eq!(r[0]["pass"], false);
    assert_eq!(r[0]["result"]["descriptor"]["label"], "so(8,1)");
}

#[test]
fn classify_volume_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = spinhol(dir.path(), &["classify", "--form", "volume:8", "--expect", "so(8,1)", "--out", "r.jsonl"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("1/1 passed"), "{stdout}");
}

#[test]
fn usage_and_config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = spinhol(dir.path(), &["rep-check", "--n", "9", "--out", "r.jsonl"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("unsupported n"));

    std::fs::write(dir.path().join("bad.json"), r#"{"scenarios": [{"id": "x", "kind": "rep-check", "n": -1}]}"#).unwrap();
    let out = spinhol(dir.path(), &["--config", "bad.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("scenarios[0]"));

    let out = spinhol(dir.path(), &["suite", "--criteria", "13"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(spinhol(dir.path(), &["no-such-command"]).status.code(), Some(2));
}

#[test]
fn config_batch_keeps_input_order() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{
        "seed": 7,
        "scenarios": [
            {"id": "rep8", "kind": "rep-check", "n": 8},
            {"id": "ladder", "kind": "verify", "theorem": "fixed-spinor-ladder", "spec": {"2": 1, "-2": 1, "1": 2, "-1": 2}, "zero_dim": 2},
            {"id": "vol6", "kind": "classify", "form": {"volume": {"n": 6}}, "expect": "so(7)"},
            {"id": "kernel", "kind": "suite", "criteria": [2]}
        ]
    }"#;
    std::fs::write(dir.path().join("c.json"), config).unwrap();
    let out = spinhol(dir.path(), &["--config", "c.json", "--jobs", "2", "--out", "r.jsonl"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = records(&dir.path().join("r.jsonl"));
    let ids: Vec<&str> = r.iter().map(|x| x["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["rep8", "ladder", "vol6", "kernel/volume-forms"]);
    assert_eq!(r[1]["result"]["descriptor"]["label"], "so(8,6)");
    assert!(dir.path().join("cache").read_dir().unwrap().next().is_some());
}

#[test]
fn suite_registry_covers_every_criterion() {
    let ids: Vec<u32> = spinhol::suite::CRITERIA.iter().map(|c| c.id).collect();
    assert_eq!(ids, (1..=12).collect::<Vec<_>>());
    let slugs: std::collections::BTreeSet<&str> = spinhol::suite::CRITERIA.iter().map(|c| c.slug).collect();
    assert_eq!(slugs.len(), 12);
}
