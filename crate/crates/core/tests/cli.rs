use std::process::{Command, Output};

use serde_json::Value;

fn dfsgf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dfsgf")).args(args).output().expect("binary runs")
}

fn dfsgf_with_workers(workers: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dfsgf"))
        .env("DFSGF_WORKERS", workers)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_reports_every_size() {
    let out = dfsgf(&["--format", "json", "verify", "--n-max", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["all_true"], true);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r["knuth"] == true && r["extended"] == true));
}

#[test]
fn knuth_only_omits_extended_column() {
    let v = json(&dfsgf(&["--format", "json", "verify", "--n-max", "3", "--knuth-only"]));
    assert_eq!(v["mode"], "knuth");
    assert!(v["rows"][0].get("extended").is_none());
}

#[test]
fn cross_check_passes() {
    let out = dfsgf(&["cross-check", "--n-max", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn distribution_json_is_exact_and_stable() {
    let args = ["--format", "json", "distribution", "--n", "3", "--p", "1/2", "--kmax", "3"];
    let a = dfsgf(&args);
    let b = dfsgf(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["coeffs"][0]["prob"], "1647/2000");
    assert_eq!(v["tail"], "27761/3200000");
    assert_eq!(v["means"]["F"], v["means"]["B"]);
    assert_eq!(v["means"]["T"], v["means"]["C"]);
    assert_eq!(v["normalized"], true);
}

#[test]
fn distribution_tsv_ends_with_tail() {
    let out = dfsgf(&["--format", "tsv", "distribution", "--n", "2", "--p", "1/4", "--kmax", "4", "--role", "B"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k\tprob");
    assert_eq!(lines.len(), 7);
    assert!(lines[6].starts_with("tail\t"));
}

#[test]
fn simulation_is_reproducible_across_worker_counts() {
    let args = ["--format", "json", "simulate", "--n", "4", "--p", "1/3", "--trials", "20000", "--seed", "11"];
    let one = dfsgf_with_workers("1", &args);
    let two = dfsgf_with_workers("2", &args);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
    let v = json(&one);
    let total: u64 = v["summary"]["histogram"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["count"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 20000);
    assert_eq!(v["pass"], true);
}

#[test]
fn single_trial_dumps_the_digraph() {
    let v = json(&dfsgf(&["--format", "json", "simulate", "--n", "3", "--p", "1/2", "--trials", "1", "--seed", "7"]));
    let trial = &v["single_trial"];
    assert_eq!(trial["arcs"].as_array().unwrap().len(), 3);
    let arcs: u64 = trial["arcs"].as_array().unwrap().iter().map(|a| a.as_array().unwrap().len() as u64).sum();
    let tally: u64 = ["L", "F", "B", "C", "T"].iter().map(|k| trial["tally"][k].as_u64().unwrap()).sum();
    assert_eq!(arcs, tally);
}

#[test]
fn extended_projection_simulates() {
    let out = dfsgf(&["simulate", "--n", "3", "--p", "2/5", "--trials", "20000", "--projection", "extended"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn oracle_matches_series() {
    let v = json(&dfsgf(&["--format", "json", "oracle", "--n", "2", "--max-arcs", "3"]));
    assert_eq!(v["tree_instances"], 23);
    assert_eq!(v["forest_instances"], 49);
    assert!(v["tree"]["first_mismatch"].is_null());
    assert!(v["forest"]["first_mismatch"].is_null());
}

#[test]
fn bad_parameters_exit_with_usage_status() {
    for args in [
        &["distribution", "--n", "3", "--p", "2"][..],
        &["distribution", "--n", "0", "--p", "1/2"][..],
        &["distribution", "--n", "3", "--p", "half"][..],
        &["simulate", "--n", "3", "--p", "1/2", "--projection", "Q"][..],
    ] {
        let out = dfsgf(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}
