use std::process::{Command, Output};

use containlab::cli::manifest::{manifest_path, read_report, RunManifest};

fn containlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_containlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_exit_codes_match_the_verdict() {
    let fails = containlab(&["check", "--config", "dual-hesse", "--m", "3", "--r", "2"]);
    assert_eq!(fails.status.code(), Some(10));
    assert!(stdout(&fails).contains("witness of degree 9"));
    assert_eq!(containlab(&["check", "--config", "dual-hesse", "--m", "4", "--r", "2"]).status.code(), Some(0));
    assert_eq!(containlab(&["check", "--config", "punctured:3", "--m", "3", "--r", "2"]).status.code(), Some(10));
    assert_eq!(containlab(&["check", "--config", "punctured:9", "--m", "3", "--r", "2"]).status.code(), Some(2));
    let starved = containlab(&["--max-pairs", "1", "check", "--config", "fermat:4", "--m", "3", "--r", "2"]);
    assert_eq!(starved.status.code(), Some(20));
}

#[test]
fn budget_flags_fall_back_to_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_containlab"))
        .args(["check", "--config", "fermat:4", "--m", "3", "--r", "2"])
        .env("CONTAINLAB_MAX_PAIRS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(20));
}

#[test]
fn json_verdict_has_exactly_the_report_fields_and_round_trips() {
    let o = containlab(&["--json", "check", "--config", "dual-hesse", "--m", "3", "--r", "2"]);
    let text = stdout(&o);
    let value: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    let mut keys: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort();
    let mut expected = vec![
        "config", "field", "N", "m", "r", "j", "holds", "witness_degree", "witness", "guarantees", "elapsed_ms", "status",
    ];
    expected.sort();
    assert_eq!(keys, expected);
    let parsed = read_report(&text).unwrap();
    assert_eq!(parsed.len(), 1);
    assert_eq!(serde_json::to_value(&parsed[0]).unwrap(), value);
}

#[test]
fn config_show_counts() {
    let dh = stdout(&containlab(&["config", "show", "dual-hesse"]));
    assert!(dh.contains("points: 12") && dh.contains("lines: 9"), "{dh}");
    let k = stdout(&containlab(&["config", "show", "klein-f7"]));
    assert!(k.contains("points: 49") && k.contains("21 on 4 lines") && k.contains("28 on 3 lines"), "{k}");
    let s = stdout(&containlab(&["--json", "config", "show", "star:3:2"]));
    let v: serde_json::Value = serde_json::from_str(s.trim()).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 3);
    assert_eq!(containlab(&["config", "show", "nope"]).status.code(), Some(2));
    let list = stdout(&containlab(&["config", "list"]));
    assert!(list.lines().count() >= 8);
}

#[test]
fn exported_points_import_back() {
    let text = stdout(&containlab(&["config", "show", "fermat:3:Fp(7)", "--export"]));
    let b = containlab::configurations::parse_spec("fermat:3:Fp(7)").unwrap();
    let back = containlab::configurations::FatPointConfiguration::import("x", b.config.ring(), &text).unwrap();
    assert!(back.same_points(&b.config));
}

#[test]
fn invariants_report() {
    let o = containlab(&["--json", "invariants", "--config", "dual-hesse", "--symbolic", "3", "--what", "alpha"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["alpha"], 9);
    let o = containlab(&["--json", "invariants", "--config", "general:1:2:1", "--what", "reg"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["regularity"], 1);
    let o = containlab(&["invariants", "--config", "dual-hesse", "--what", "alpha,hf,reg"]);
    let text = stdout(&o);
    assert!(text.contains("HF(R/I, 0..) = [1, 3, 6, 10, 12, 12]") && text.contains("reg(I) = 5"), "{text}");
    assert_eq!(containlab(&["invariants", "--config", "dual-hesse", "--what", "beta"]).status.code(), Some(2));
}

#[test]
fn search_writes_manifest_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("dh.jsonl");
    let o = containlab(&["search", "--config", "dual-hesse", "--m-max", "4", "--r-max", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rho >= 3/2"), "{}", stdout(&o));
    let report = read_report(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let manifest = RunManifest::load(&manifest_path(&out)).unwrap();
    assert_eq!(manifest.config_spec, "dual-hesse");
    assert_eq!(manifest.results.len(), report.len());
    let replay = containlab(&["replay", manifest_path(&out).to_str().unwrap()]);
    assert_eq!(replay.status.code(), Some(0));
    assert!(stdout(&replay).contains("0 differ"));
}

#[test]
fn search_windows() {
    let star = stdout(&containlab(&["search", "--config", "star:5:2", "--m-max", "4", "--r-max", "2"]));
    assert!(star.contains("I^(3) in I^2     holds") && star.contains("violations: 0"), "{star}");
    let one = stdout(&containlab(&["search", "--config", "general:1:2:7", "--m-max", "3", "--r-max", "3"]));
    assert!(one.contains("violations: 0"), "{one}");
    assert_eq!(containlab(&["search", "--config", "star:5:2", "--m-max", "0", "--r-max", "2"]).status.code(), Some(2));
}

#[test]
fn reproduce_single_cases() {
    for case in ["dual-hesse", "fermat-4"] {
        let o = containlab(&["reproduce", "--case", case]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).contains("PASS"));
    }
    assert_eq!(containlab(&["reproduce", "--case", "nothing"]).status.code(), Some(2));
    assert_eq!(containlab(&["reproduce"]).status.code(), Some(2));
}

#[test]
fn reproduce_all_is_deterministic() {
    let strip = |o: &Output| -> Vec<(String, bool)> {
        stdout(o)
            .lines()
            .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
            .map(|v| (v["case"].as_str().unwrap().to_string(), v["passed"].as_bool().unwrap()))
            .collect()
    };
    let first = containlab(&["--json", "reproduce", "--all"]);
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    let a = strip(&first);
    assert!(a.len() >= 6 && a.iter().all(|(_, p)| *p));
    let mut sorted = a.clone();
    sorted.sort();
    assert_eq!(a, sorted);
    let second = containlab(&["--json", "--threads", "2", "reproduce", "--all"]);
    assert_eq!(strip(&second), a);
}
