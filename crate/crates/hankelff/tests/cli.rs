use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn hankelff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankelff")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn variance_rows() {
    let out = hankelff(&["variance", "--p", "2", "--n", "4", "--h", "0..4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "hankelff/v1");
    assert_eq!(v["command"], "variance");
    let h1 = v["rows"].as_array().unwrap().iter().find(|r| r["h"] == 1).unwrap();
    assert_eq!(h1["brute"], "1/1");
    assert_eq!(h1["formula"], "1/1");
    assert_eq!(h1["match"], true);
}

#[test]
fn small_degrees_are_informational() {
    let v = json(&hankelff(&["variance", "--p", "3", "--n", "2..4"]));
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["n"] == 4));
    assert_eq!(v["informational"].as_array().unwrap().len(), 3 + 4);
}

#[test]
fn census_ranks() {
    let out = hankelff(&["census", "--p", "2", "--e", "1", "--n", "2", "--h", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let ranks: Vec<(u64, String)> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["kind"] == "rank")
        .map(|r| (r["r"].as_u64().unwrap(), r["brute"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(ranks, vec![(0, "1".into()), (1, "3".into()), (2, "4".into())]);
}

#[test]
fn euclid_sample_reports_last_levels_separately() {
    let out = hankelff(&["euclid", "--p", "2", "--n", "4", "--sample", "100", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["rows"][0]["match"], true);
    assert_eq!(v["rows"][0]["sequences"], 100);
    assert_eq!(v["informational"][0]["check"], "euclid-last-level");
    assert!(v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn csv_matches_json() {
    let args = ["census", "--p", "3", "--n", "3", "--h", "1"];
    let v = json(&hankelff(&args));
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let out = hankelff(&csv_args);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    let rows = v["rows"].as_array().unwrap();
    let records: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(records.len(), rows.len());
    for (rec, row) in records.iter().zip(rows) {
        for (h, cell) in headers.iter().zip(rec.iter()) {
            let expect = match &row[h] {
                Value::Null => String::new(),
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            assert_eq!(cell, expect, "column {h}");
        }
    }
}

#[test]
fn bad_flags_exit_2() {
    assert_eq!(hankelff(&["census", "--p", "4"]).status.code(), Some(2));
    assert_eq!(hankelff(&["census", "--n", "5..2"]).status.code(), Some(2));
    assert_eq!(hankelff(&["kernel", "--jobs", "0"]).status.code(), Some(2));
    assert_eq!(hankelff(&["variance", "--p", "2", "--e", "2"]).status.code(), Some(2));
    assert_eq!(hankelff(&["bogus"]).status.code(), Some(2));
}

#[test]
fn budget_exceeded_exits_2() {
    let out = hankelff(&["census", "--p", "3", "--n", "9", "--h", "0", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn cache_round_trip_and_recompute() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["census", "--p", "2", "--n", "5", "--h", "1", "--cache-dir", d];
    let first = hankelff(&args);
    assert_eq!(first.status.code(), Some(0));
    let path = dir.path().join("census-p2-e1-mnone-n5-h1.json");
    let cached: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(cached["schema"], "hankelff-census/v1");
    assert_eq!(cached["field"]["p"], 2);
    assert!(cached["records"].as_array().unwrap().iter().all(|r| r["match"] == true));

    let second = hankelff(&args);
    assert_eq!(second.stdout, first.stdout);

    fs::write(&path, "{\"schema\": \"hankelff-census/v0\"}").unwrap();
    let third = hankelff(&args);
    assert_eq!(third.status.code(), Some(0));
    assert_eq!(third.stdout, first.stdout);
    assert!(String::from_utf8_lossy(&third.stderr).contains("stale cache"));
    let rewritten: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rewritten, cached);
}

#[test]
fn missing_cache_dir_names_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("absent");
    let out = hankelff(&["census", "--p", "2", "--n", "3", "--h", "0", "--cache-dir", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains(missing.to_str().unwrap()));
}

#[test]
fn extension_fields_run_the_hankel_suites() {
    let out = hankelff(&["all", "--p", "2", "--e", "2", "--n", "2..3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let suites: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r["suite"].as_str().unwrap()).collect();
    assert_eq!(suites, ["census", "kernel", "converse", "extension", "euclid"]);
    assert_eq!(v["informational"].as_array().unwrap().iter().filter(|i| i["note"].is_string()).count(), 2);
}

#[test]
fn explicit_modulus() {
    let out = hankelff(&["census", "--p", "3", "--e", "2", "--modulus", "1,0,1", "--n", "2", "--h", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["params"]["modulus"], serde_json::json!([1, 0, 1]));
    // x^2 + 1 over F_2 is reducible
    assert_eq!(hankelff(&["census", "--p", "2", "--e", "2", "--modulus", "1,0,1"]).status.code(), Some(2));
}
