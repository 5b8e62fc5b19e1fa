//! End-to-end tests of the `cfo` binary: table output against the embedded
//! reference row, registry listing, CSV/JSON export shape, trace files, and
//! exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn cfo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

/// Collapse runs of whitespace so column alignment does not matter.
fn squash(line: &str) -> String {
    line.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[test]
fn f1_sweep_reproduces_the_reference_best_row() {
    let out = cfo(&["sweep", "--function", "F1", "--run-id", "fixed"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<String> = text.lines().map(squash).collect();
    let best_row = "6 0.500 1000 30 60 2.0 1.0 2.00 2.00 45 2760 0.85000V 0.00000000 UNIFORM P-AXIS";
    // The winning run appears in the table body and again as the summary row.
    assert_eq!(lines.iter().filter(|l| *l == best_row).count(), 2, "table:\n{text}");
    // The footer total equals the sum of the per-run evaluation column.
    let mut seen = std::collections::HashSet::new();
    let total: u64 = lines
        .iter()
        .filter_map(|l| {
            let f: Vec<&str> = l.split(' ').collect();
            (f.len() == 15 && seen.insert(f[0].to_string()))
                .then(|| f[10].parse::<u64>().unwrap())
        })
        .sum();
    assert!(lines.iter().any(|l| *l == format!("Total Function Evaluations: {total}")));
    assert!(text.contains("FUNCTION: F1"));
    assert!(text.contains("Run ID: fixed"));
}

#[test]
fn list_functions_covers_the_whole_registry() {
    let out = cfo(&["list-functions"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 24); // header + 23 functions
    let f14 = text.lines().find(|l| l.trim_start().starts_with("F14")).unwrap();
    let fields: Vec<&str> = f14.split_whitespace().collect();
    assert_eq!(fields[1], "2");
    assert_eq!(fields[2], "-65.536");
    assert_eq!(fields[3], "65.536");

    let out = cfo(&["list-functions", "--format", "json"]);
    let entries: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(entries.as_array().unwrap().len(), 23);
}

#[test]
fn csv_and_json_exports_have_the_sweep_shape() {
    let dir = tempfile::tempdir().unwrap();
    let out_flag = dir.path().to_str().unwrap();

    let out = cfo(&[
        "sweep", "--function", "F17", "--format", "csv", "--run-id", "fixed", "--out", out_flag,
    ]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert_eq!(csv, std::fs::read_to_string(dir.path().join("F17_runs.csv")).unwrap());
    let data_rows = csv.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(data_rows, 1 + 77); // header + low-dimensional grid

    let out = cfo(&[
        "sweep", "--function", "F17", "--format", "json", "--run-id", "fixed", "--out", out_flag,
    ]);
    assert!(out.status.success());
    let json = stdout(&out);
    assert_eq!(json, std::fs::read_to_string(dir.path().join("F17_runs.json")).unwrap());
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["schema_version"], 1);
    assert_eq!(value["manifest"]["run_id"], "fixed");
    assert_eq!(value["result"]["records"].as_array().unwrap().len(), 77);
}

#[test]
fn repeated_exports_are_byte_identical() {
    let args = ["sweep", "--function", "F16", "--format", "csv", "--run-id", "fixed"];
    let a = cfo(&args);
    let b = cfo(&args);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn run_with_trace_writes_series_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = cfo(&[
        "run", "--function", "F16", "--gamma", "0.3", "--probes-per-axis", "4", "--nt", "60",
        "--trace", "--run-id", "fixed", "--out", dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    for name in [
        "F16_runs.txt",
        "F16_best_fitness.txt",
        "F16_global_best_fitness.txt",
        "F16_davg.txt",
        "F16_best_probe.txt",
    ] {
        let path = dir.path().join(name);
        assert!(path.exists(), "missing {name}");
        assert!(std::fs::metadata(&path).unwrap().len() > 0, "empty {name}");
    }
    // Series lines are "step value" pairs starting at step 0.
    let series = std::fs::read_to_string(dir.path().join("F16_best_fitness.txt")).unwrap();
    let first = series.lines().next().unwrap();
    assert_eq!(first.split_whitespace().next(), Some("0"));
}

#[test]
fn verify_passes_for_a_reproducible_function() {
    let out = cfo(&["verify", "--function", "F17"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("PASS F17 [tolerance]"));
}

#[test]
fn exit_codes_distinguish_usage_and_runtime_errors() {
    assert_eq!(cfo(&["--help"]).status.code(), Some(0));
    assert_eq!(cfo(&["sweep"]).status.code(), Some(1)); // missing --function
    assert_eq!(cfo(&["sweep", "--function", "F99"]).status.code(), Some(1));
    // Structurally valid but unrunnable parameters fail at runtime.
    let out = cfo(&["run", "--function", "F16", "--probes-per-axis", "0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn help_is_self_describing() {
    let help = stdout(&cfo(&["--help"]));
    for sub in ["list-functions", "run", "sweep", "verify"] {
        assert!(help.contains(sub), "help missing {sub}");
    }
    let _ = Path::new(env!("CARGO_BIN_EXE_cfo"));
}
