use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn qadder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qadder"))
        .args(args)
        .env_remove("SOURCE_DATE_EPOCH")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn circuits() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../circuits")
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("commands").join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

/// Data rows of a CSV emitted with a `#` manifest header.
fn csv_rows(text: &str) -> Vec<csv::StringRecord> {
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    csv::Reader::from_reader(body.as_bytes()).records().map(Result::unwrap).collect()
}

#[test]
fn table_one_ideal_matches_basis_adder() {
    let out = qadder(&["table", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("# command: table\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 6);
    for row in &rows[..5] {
        assert_eq!(&row[3], "1.0000");
    }
    assert_eq!(&rows[5][3], "0.9268");
}

#[test]
fn simulate_roundtrip_restores_input() {
    let circuit = circuits().join("basis_roundtrip.qc");
    let out = qadder(&["simulate", circuit.to_str().unwrap(), "--input", "0,0", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let outcomes = v["simulation"]["outcomes"].as_array().unwrap();
    let p000 = outcomes.iter().find(|o| o["outcome"] == "000").unwrap()["probability"].as_f64().unwrap();
    assert!((p000 - 1.0).abs() < 1e-12);
}

#[test]
fn shots_are_seeded() {
    let circuit = circuits().join("basis_adder.qc");
    let run = |seed: &str| {
        stdout(&qadder(&[
            "simulate",
            circuit.to_str().unwrap(),
            "--input",
            "0.4,1.1",
            "--shots",
            "500",
            "--seed",
            seed,
        ]))
    };
    assert_eq!(run("7"), run("7"));
    let counts: u64 = csv_rows(&run("7")).iter().map(|r| r[2].parse::<u64>().unwrap()).sum();
    assert_eq!(counts, 500);
}

#[test]
fn transpile_reports_both_conventions() {
    let circuit = circuits().join("basis_adder.qc");
    let out = qadder(&["transpile", circuit.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# cnots: paper=12 transpiled=13"), "{text}");
    let body: String = text.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n");
    let lowered = qadder_core::text::parse(&body).unwrap();
    assert!(qadder_core::transpile::is_lowered(&lowered));
}

#[test]
fn encode_gate_separates_diagonal_from_swap() {
    let ok = qadder(&["encode-gate", "CS", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["encoding"]["solvable"], true);
    let no = qadder(&["encode-gate", "SWAP", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&no.stdout).unwrap();
    assert_eq!(v["encoding"]["solvable"], false);
    assert!(v["encoding"]["residual"].as_f64().unwrap() > 0.1);
}

#[test]
fn ga_writes_reproducible_files_within_budget() {
    let dir = scratch("ga");
    let config = dir.join("small.cfg");
    std::fs::write(&config, "population = 16\ngenerations = 4\ncnot_budget = 0\ngate_limit = 8\n").unwrap();
    let prefix = dir.join("run");
    let args = [
        "ga",
        "--config",
        config.to_str().unwrap(),
        "--format",
        "json",
        "--out",
        prefix.to_str().unwrap(),
    ];
    assert!(qadder(&args).status.success());
    let first = std::fs::read_to_string(prefix.with_extension("qc")).unwrap();
    assert!(qadder(&args).status.success());
    assert_eq!(first, std::fs::read_to_string(prefix.with_extension("qc")).unwrap());
    let adder = qadder_core::text::parse(&first).unwrap();
    assert_eq!(adder.n_qubits(), 3);
    assert!(adder.len() <= 8);
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("run.summary.json")).unwrap()).unwrap();
    assert_eq!(summary["summary"]["cnots"], 0);
    let history = std::fs::read_to_string(dir.join("run.history.csv")).unwrap();
    // initial population plus one row per generation
    assert_eq!(csv_rows(&history).len(), 5);
}

#[test]
fn exit_codes_follow_error_kind() {
    let dir = scratch("errors");
    let bad = dir.join("bad.qc");
    std::fs::write(&bad, "QUBITS 2\nFOO 1\n").unwrap();
    let out = qadder(&["simulate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.qc:2:1"));

    assert_eq!(qadder(&["simulate", dir.join("missing.qc").to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(qadder(&["table", "9"]).status.code(), Some(2));
    assert_eq!(qadder(&["table", "4"]).status.code(), Some(2));
    assert_eq!(qadder(&["--bogus"]).status.code(), Some(2));
    assert_eq!(qadder(&["--version"]).status.code(), Some(0));
}
