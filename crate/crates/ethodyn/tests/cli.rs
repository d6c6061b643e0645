//! End-to-end tests of the `ethodyn` binary: output values, artifact
//! emission, replay determinism, and the exit-code contract
//! (0 success, 2 usage, 3 config, 4 I/O).

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ethodyn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn line_value(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no `{key}=` line in:\n{text}"))
        .to_string()
}

#[test]
fn entropy_prints_the_anchor_value() {
    let out = run(&["entropy", "--probs", "0.9,0.1"]);
    assert!(out.status.success());
    let value: f64 = stdout(&out).trim().parse().unwrap();
    assert!((value - 0.3251).abs() <= 1e-4, "got {value}");
}

#[test]
fn gamma_crit_prints_the_boundary() {
    let out = run(&["gamma-crit", "--lambda-max", "1.2", "--n", "7e9"]);
    assert!(out.status.success());
    let value: f64 = stdout(&out).trim().parse().unwrap();
    assert!((value - 13.6015).abs() <= 1e-3, "got {value}");

    let json = run(&["gamma-crit", "--lambda-max", "1.2", "--n", "7e9", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(stdout(&json).trim()).unwrap();
    assert!((doc["gamma_crit"].as_f64().unwrap() - value).abs() < 1e-12);
}

#[test]
fn ttest_prints_summary_lines() {
    let out = run(&["ttest", "--a", "1,2,3,4", "--b", "2,3,4,5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let t: f64 = line_value(&text, "t_stat").parse().unwrap();
    let df: usize = line_value(&text, "df").parse().unwrap();
    let p: f64 = line_value(&text, "p_two_sided").parse().unwrap();
    assert!((t + 1.095_445_115).abs() < 1e-6, "t = {t}");
    assert_eq!(df, 6);
    assert!((0.0..=1.0).contains(&p));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["no-such-subcommand"]).status.code(), Some(2));
    assert_eq!(run(&["entropy"]).status.code(), Some(2));
    assert_eq!(run(&["gamma-crit", "--lambda-max", "abc", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn config_errors_exit_3_with_field_message() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");

    fs::write(&path, r#"{"gammma": 20.4}"#).unwrap();
    let out = run(&["simulate", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gammma"));

    fs::write(&path, r#"{"dt": -1.0}"#).unwrap();
    let out = run(&["simulate", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dt"));

    // Domain errors from values (not files) also map to 3.
    let out = run(&["entropy", "--probs", "0.9,0.3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn missing_config_file_exits_4() {
    let out = run(&["simulate", "--config", "/definitely/not/here.json"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn figure2_emits_artifacts_and_replays_identically() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    fs::write(&config, r#"{"steps": 200, "trials": 4, "master_seed": 9}"#).unwrap();
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");

    let first = run(&[
        "figure2",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out_a.to_str().unwrap(),
    ]);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    for name in [
        "figure2_baseline.csv",
        "figure2_regularized.csv",
        "figure2.svg",
        "inputs.json",
    ] {
        assert!(out_a.join(name).exists(), "missing {name}");
    }

    let second = run(&[
        "figure2",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out_b.to_str().unwrap(),
    ]);
    assert!(second.status.success());
    for name in ["figure2_baseline.csv", "figure2_regularized.csv", "inputs.json"] {
        let a = fs::read(out_a.join(name)).unwrap();
        let b = fs::read(out_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }

    // The seed override lands in the recorded inputs.
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_a.join("inputs.json")).unwrap()).unwrap();
    assert_eq!(doc["baseline"]["master_seed"], serde_json::json!(9));
    assert_eq!(doc["regularized"]["master_seed"], serde_json::json!(9));
}

#[test]
fn seed_flag_overrides_config_seed() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    fs::write(&config, r#"{"steps": 100, "trials": 2, "master_seed": 9}"#).unwrap();
    let out = dir.path().join("run");
    let result = run(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--seed",
        "123",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("inputs.json")).unwrap()).unwrap();
    assert_eq!(doc["config"]["master_seed"], serde_json::json!(123));
}

#[test]
fn simulate_trial_flag_emits_trace() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    fs::write(&config, r#"{"steps": 50, "trials": 3}"#).unwrap();
    let out = dir.path().join("run");
    let result = run(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--trial",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    let trace = fs::read_to_string(out.join("simulate_trial_1.csv")).unwrap();
    assert!(trace.starts_with("step,time,s\n"));
    assert_eq!(trace.lines().count(), 52);
}

#[test]
fn micro_json_summary_is_valid_json() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    fs::write(&config, r#"{"steps": 200}"#).unwrap();
    let out = dir.path().join("run");
    let result = run(&[
        "micro",
        "--config",
        config.to_str().unwrap(),
        "--second-law-seeds",
        "5",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    let doc: serde_json::Value = serde_json::from_str(stdout(&result).trim()).unwrap();
    assert_eq!(doc["name"], serde_json::json!("micro"));
    assert!(doc["outputs"]["fraction_increased"].is_number());
    assert!(doc["written"].as_array().unwrap().len() >= 2);
    assert!(out.join("micro_trace.csv").exists());
}

#[test]
fn phase_defaults_emit_grid_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("phase");
    let result = run(&["phase", "--out", out.to_str().unwrap()]);
    assert!(result.status.success());
    let grid = fs::read_to_string(out.join("figure3_grid.csv")).unwrap();
    assert!(grid.starts_with("gamma,N,label\n"));
    assert_eq!(grid.lines().count(), 101);
    assert!(fs::read_to_string(out.join("figure3.svg"))
        .unwrap()
        .starts_with("<svg"));
}

fn tree_is_clean(path: &Path) -> bool {
    !path.exists() || fs::read_dir(path).map(|mut d| d.next().is_none()).unwrap_or(true)
}

#[test]
fn scalar_subcommands_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scalars");
    for args in [
        vec!["entropy", "--probs", "0.5,0.5"],
        vec!["gamma-crit", "--lambda-max", "1.0", "--n", "100"],
        vec!["ttest", "--a", "1,2,3", "--b", "4,5,6"],
    ] {
        let mut full = args.clone();
        full.extend(["--out", out.to_str().unwrap()]);
        assert!(run(&full).status.success());
    }
    assert!(tree_is_clean(&out), "scalar subcommands must not emit files");
}
