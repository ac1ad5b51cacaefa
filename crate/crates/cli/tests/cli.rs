use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn spectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn lambda(report: &Value, alpha: &[u64]) -> String {
    report["spectrum"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["alpha"] == serde_json::json!(alpha))
        .map(|e| e["lambda"].as_str().unwrap().to_string())
        .unwrap()
}

#[test]
fn spectrum_at_five() {
    let out = spectra(&["spectrum", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema"], "1");
    assert_eq!(r["passed"], true);
    assert_eq!(lambda(&r, &[5]), "44");
    assert_eq!(lambda(&r, &[4, 1]), "-11");
    assert_eq!(lambda(&r, &[1, 1, 1, 1, 1]), "4");
    assert_eq!(lambda(&r, &[2, 1, 1, 1]), "-1");
    let s = &r["summary"];
    assert_eq!(s["lambda_min"], "-11");
    assert_eq!(s["lambda_m"], "-4");
    assert_eq!(s["nu"], "11");
    assert_eq!(r["trace_identity"]["residual"], "0");
}

#[test]
fn spectrum_flags_the_tie_at_four() {
    let out = spectra(&["spectrum", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["summary"]["tie_flag"], true);
    assert_eq!(r["nu_check"]["strict_dominance"], false);
}

#[test]
fn spectrum_of_trivial_group_is_degenerate() {
    let out = spectra(&["spectrum", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["degenerate"], true);
    assert_eq!(r["summary"]["d"], "0");
}

#[test]
fn search_finds_the_cosets_at_four() {
    let out = spectra(&["search", "--kind", "max-intersecting", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["status"], "complete");
    assert_eq!(r["optimum"], "6");
    assert_eq!(r["witness_count"], 16);
    for w in r["witnesses"].as_array().unwrap() {
        let members = w["a"].as_array().unwrap();
        let centred = (0..4).any(|i| {
            let j = &members[0][i];
            members.iter().all(|p| &p[i] == j)
        });
        assert!(centred);
    }
}

#[test]
fn cross_product_at_three_beats_the_coset_bound() {
    let out = spectra(&["search", "--kind", "max-cross-product", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["optimum"], "9");
    let even = serde_json::json!([[1, 2, 3], [2, 3, 1], [3, 1, 2]]);
    let odd = serde_json::json!([[1, 3, 2], [2, 1, 3], [3, 2, 1]]);
    let pairs: Vec<(&Value, &Value)> = r["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| (&w["a"], &w["b"]))
        .collect();
    assert!(pairs.contains(&(&even, &odd)) || pairs.contains(&(&odd, &even)));
}

#[test]
fn zero_budget_reports_incomplete() {
    let out = spectra(&["search", "--kind", "max-intersecting", "--n", "7", "--budget", "0"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["status"], "incomplete");
}

#[test]
fn empty_task_list_is_a_no_op() {
    let out = spectra(&["verify", "--tasks", ""]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["passed"], true);
    assert_eq!(r["tasks"], serde_json::json!([]));
}

#[test]
fn unknown_kind_is_a_usage_error() {
    let out = spectra(&["search", "--kind", "max-clique", "--n", "4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_is_deterministic_and_writes_out() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let out = spectra(&[
            "--out",
            path.to_str().unwrap(),
            "verify",
            "--n-min",
            "3",
            "--n-max",
            "5",
            "--seed",
            "7",
            "--tasks",
            "perm-core,spectral,group-algebra",
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        std::fs::read(path).unwrap()
    };
    let first = run("a.json");
    assert_eq!(first, run("b.json"));
    let r: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(r["passed"], true);
    assert_eq!(r["failed_checks"], serde_json::json!([]));
}

fn tamper(path: &Path) {
    let mut cache: Value = serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
    let table = cache["tables"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|t| t["n"] == 4)
        .unwrap();
    let row = table["rows"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|r| r["alpha"] == serde_json::json!([3, 1]))
        .unwrap();
    row["values"]["2,2"] = Value::String("5".into());
    std::fs::write(path, serde_json::to_vec(&cache).unwrap()).unwrap();
}

#[test]
fn cache_is_written_then_validated() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("chars.json");
    let c = cache.to_str().unwrap();
    let fresh = spectra(&["--cache", c, "spectrum", "--n", "5"]);
    assert_eq!(fresh.status.code(), Some(0));
    assert!(cache.exists());
    let reused = spectra(&["--cache", c, "spectrum", "--n", "5"]);
    assert_eq!(reused.status.code(), Some(0));
    assert_eq!(json(&reused)["passed"], true);

    tamper(&cache);
    let out = spectra(&["--cache", c, "spectrum", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert_eq!(r["passed"], false);
    assert_eq!(r["failed_checks"][0]["name"], "cache.character-table");
}
