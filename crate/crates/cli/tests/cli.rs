use std::path::Path;
use std::process::{Command, Output};

use bargain_core::io::write_choices;
use bargain_core::mixture::synth::simulate_choices;
use bargain_core::mixture::{BinaryGame, ChoiceModel};
use bargain_core::{PayoffCurve, PreferenceParams};
use serde_json::Value;

fn bargain(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bargain")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = bargain(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn solve_reports_symmetric_region() {
    let v = json(&["solve", "--alpha", "0.5", "--kappa", "0.6"]);
    assert_eq!(v["region"], "R2");
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["optimal"]["x1"], v["optimal"]["x2"]);
    let v = json(&["solve", "--alpha", "3", "--kappa", "0.01"]);
    assert_eq!(v["region"], "R3");
}

#[test]
fn metrics_reproduce_reported_criteria() {
    let v = json(&["metrics", "--lnl", "-1865.90", "--k", "3", "--n", "96", "--en", "13.50"]);
    assert!((v["icl"].as_f64().unwrap() - 3809.21).abs() <= 0.02);
    assert!(v["nec"].is_null());
    let v = json(&["metrics", "--lnl", "-1902.76", "--k", "2", "--n", "96", "--en", "4.00", "--lnl-one", "-2063.28"]);
    assert!((v["nec"].as_f64().unwrap() - 0.02).abs() <= 0.005);
}

#[test]
fn region_map_matches_golden_file() {
    let out = bargain(&["--format", "csv", "region-map"]);
    assert!(out.status.success());
    let golden = std::fs::read(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/region_map.csv")).unwrap();
    assert_eq!(out.stdout, golden);
    let text = String::from_utf8(golden).unwrap();
    // Without spite nobody rejects.
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        if f[0].parse::<f64>().unwrap() <= 0.0 {
            assert_eq!((f[2], f[4]), ("R1", "0"), "{line}");
        }
    }
}

#[test]
fn exit_codes_distinguish_usage_input_and_numeric_errors() {
    let out = bargain(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(bargain(&["solve", "--alpha", "0.5", "--kappa", "1.5"]).status.code(), Some(2));
    assert_eq!(bargain(&["solve", "--alpha", "0.5", "--kappa", "0.5", "--bogus"]).status.code(), Some(2));
    // Equal log-likelihoods leave NEC undefined.
    let out = bargain(&["metrics", "--lnl", "-10", "--k", "2", "--n", "5", "--en", "1", "--lnl-one", "-10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn config_and_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "run.toml", "endowment = 10.0\n[curve]\nkind = \"shifted_log\"\n[nash]\nstep = 0.05\n");
    let out_dir = dir.path().join("out");
    let out = bargain(&["--config", &cfg, "--out", out_dir.to_str().unwrap(), "nash", "--kappa", "0.5", "--alpha", "0"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out_dir.join("nash.json")).unwrap()).unwrap();
    assert!((v["tau"].as_f64().unwrap() - 3.0).abs() < 1e-9);
    assert_eq!(v["asymmetric_stub"]["direction"], "below");
    let bad = write(dir.path(), "bad.toml", "endowment = -1.0\n");
    assert_eq!(bargain(&["--config", &bad, "region-map"]).status.code(), Some(2));
}

#[test]
fn predict_reads_estimates_and_filters() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "est.csv", "id,alpha,beta,kappa\na,0.13,0.22,0.26\nb,-0.02,-0.08,0.22\nc,0.1,0.1,1.2\n");
    let v = json(&["predict", "--estimates", &path]);
    assert_eq!(v["filter"]["dropped"], 1);
    assert_eq!(v["subjects"].as_array().unwrap().len(), 2);
    assert!((v["subjects"][0]["dg_transfer"].as_f64().unwrap() - 22.16).abs() < 0.01);
    assert_eq!(v["subjects"][1]["ug_threshold"], 0.0);
    let out = bargain(&["predict", "--estimates", &path, "--format", "csv", "--no-kappa"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("id,alpha,beta,kappa,dg_transfer,ug_threshold\n"));
    let missing = dir.path().join("nope.csv");
    assert_eq!(bargain(&["predict", "--estimates", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn estimate_is_deterministic_under_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let types = [PreferenceParams::new(0.0, 0.0, 0.0, 0.1).unwrap(), PreferenceParams::new(1.5, 0.0, 0.2, 0.1).unwrap()];
    let s = simulate_choices(
        &types,
        &[0.5, 0.5],
        40,
        &BinaryGame::mini_ultimatum_set(),
        PayoffCurve::ShiftedLog,
        ChoiceModel::ConstantError,
        3,
    )
    .unwrap();
    let path = dir.path().join("choices.csv");
    write_choices(&path, &s.records).unwrap();
    let args = ["--seed", "5", "estimate", "--choices", path.to_str().unwrap(), "--k", "2"];
    let first = bargain(&args);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(first.stdout, bargain(&args).stdout);
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["fit"]["k"], 2);
    assert!(v["nec"].is_number());
    let csv = bargain(&["--seed", "5", "--format", "csv", "estimate", "--choices", path.to_str().unwrap(), "--k", "2"]);
    assert!(String::from_utf8(csv.stdout).unwrap().starts_with("row,type_1,type_1_se,type_2,type_2_se\n"));
}

#[test]
fn oracle_check_and_statics() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "run.toml", "[oracle]\ndraws = 5\nstep = 0.1\n");
    let v = json(&["--config", &cfg, "oracle-check"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["draws"].as_array().unwrap().len(), 5);
    assert_eq!(v, json(&["--config", &cfg, "oracle-check"]));
    let v = json(&["statics", "--alpha", "0.5"]);
    assert_eq!(v["points"].as_array().unwrap().len(), 96);
    let k = v["switches"][0]["kappa"].as_f64().unwrap();
    assert!((k - 0.46).abs() <= 0.02, "{k}");
    let v = json(&["dg", "--alpha", "0.28", "--beta", "-0.30", "--kappa", "0.19"]);
    assert_eq!(v["dg_transfer"], 0.0);
}
