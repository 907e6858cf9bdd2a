use std::path::Path;
use std::process::{Command, Output};

use seqaccel_bench::config::{BandPolicy, Format, RunConfig};
use seqaccel_bench::export::{read_csv, render, to_json, to_markdown};
use seqaccel_bench::{run, RowStatus};

fn seqaccel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqaccel"))
        .args(args)
        .env_remove("SEQACCEL_GUARD")
        .output()
        .unwrap()
}

const TABLE_ONE: &[&str] = &[
    "run",
    "--problem",
    "alt-ln2",
    "--transform",
    "partial-sums",
    "--transform",
    "seps",
    "--transform",
    "epsilon",
    "--transform",
    "theta",
    "--transform",
    "iterated-theta",
    "--n-min",
    "7",
    "--n-max",
    "14",
];

#[test]
fn repeated_runs_are_byte_identical() {
    let a = seqaccel(TABLE_ONE);
    let b = seqaccel(TABLE_ONE);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("problem,transform,budget,k,n,value,abs_error,status\n"));
    assert_eq!(text.lines().count(), 1 + 5 * 8);
}

#[test]
fn file_output_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table.csv");
    let mut args = TABLE_ONE.to_vec();
    args.extend(["--out", out.to_str().unwrap()]);
    assert!(seqaccel(&args).status.success());
    assert_eq!(std::fs::read(&out).unwrap(), seqaccel(TABLE_ONE).stdout);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bench.toml");
    std::fs::write(
        &cfg,
        "problems = [\"euler-divergent:z=3\"]\ntransforms = [\"seps\"]\nn-min = 14\nn-max = 21\n",
    )
    .unwrap();
    let from_file = seqaccel(&["run", "--config", cfg.to_str().unwrap()]);
    assert!(from_file.status.success());
    let text = String::from_utf8(from_file.stdout).unwrap();
    assert_eq!(text.lines().count(), 9);
    let over = seqaccel(&["run", "--config", cfg.to_str().unwrap(), "--n-max", "15"]);
    assert_eq!(String::from_utf8(over.stdout).unwrap().lines().count(), 3);
}

#[test]
fn exit_codes() {
    let fail = seqaccel(&["run", "--problem", "alt-ln3", "--transform", "seps"]);
    assert_eq!(fail.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&fail.stderr).contains("alt-ln2"));
    assert_eq!(seqaccel(&["run", "--problem", "alt-ln2"]).status.code(), Some(2));
    assert_eq!(seqaccel(&["run", "--bogus"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.csv");
    std::fs::write(
        &good,
        "table,problem,transform,budget,printed_error,erratum\n1,alt-ln2,seps,14,3.936e-13,\n3,euler-gamma,seps,7,1.521e-8,\n",
    )
    .unwrap();
    assert_eq!(seqaccel(&["check", "--fixture", good.to_str().unwrap()]).status.code(), Some(0));

    let bad = dir.path().join("bad.csv");
    std::fs::write(
        &bad,
        "table,problem,transform,budget,printed_error,erratum\n1,alt-ln2,seps,14,3.936e-8,\n",
    )
    .unwrap();
    let out = seqaccel(&["check", "--fixture", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn bundled_fixture_check() {
    let out = seqaccel(&["check"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("280 rows"));
}

#[test]
fn list_names() {
    let out = seqaccel(&["list"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["alt-ln2", "euler-divergent", "geometric", "seps", "levin-v", "osada"] {
        assert!(text.contains(name), "{name}");
    }
}

fn table_one_config() -> RunConfig {
    RunConfig::new(
        vec!["alt-ln2".into()],
        ["partial-sums", "seps", "epsilon", "theta", "iterated-theta"]
            .map(String::from)
            .to_vec(),
        7,
        14,
    )
}

#[test]
fn csv_round_trip() {
    let report = run(&table_one_config()).unwrap();
    let text = render(&report, Format::Csv, &BandPolicy::default()).unwrap();
    let back = read_csv(text.as_bytes()).unwrap();
    assert_eq!(back.rows, report.rows);
}

#[test]
fn json_has_round_trip_digits() {
    let report = run(&table_one_config()).unwrap();
    let text = to_json(&report).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let rows = parsed.as_array().unwrap();
    assert_eq!(rows.len(), report.rows.len());
    for (j, r) in rows.iter().zip(&report.rows) {
        assert_eq!(j["problem"], r.problem.as_str());
        assert_eq!(j["budget"], r.budget);
        assert_eq!(j["value"].as_f64(), r.value);
    }
    let v = text.split("\"value\": ").nth(1).unwrap();
    let mantissa: String = v.split('e').next().unwrap().chars().filter(char::is_ascii_digit).collect();
    assert_eq!(mantissa.len(), 17);
}

#[test]
fn markdown_mirrors_error_table() {
    let report = run(&table_one_config()).unwrap();
    let md = to_markdown(&report, &BandPolicy::default());
    let header = md.lines().find(|l| l.starts_with("| n |")).unwrap();
    assert_eq!(header.matches('|').count() - 2, 5);
    assert!(md.contains("| 14 |"));
    assert!(md.contains("decade"));
}

#[test]
fn unstable_rows_render_as_text() {
    let config = RunConfig::new(vec!["geometric:z=0.5".into()], vec!["epsilon".into()], 2, 6);
    let report = run(&config).unwrap();
    assert!(report.rows.iter().all(|r| r.status != RowStatus::Unstable || r.value.is_none()));
    let csv = render(&report, Format::Csv, &BandPolicy::default()).unwrap();
    for line in csv.lines().skip(1) {
        if line.ends_with(",unstable") {
            assert!(line.contains(",unstable,unstable,unstable"), "{line}");
        }
    }
}

#[test]
fn unwritable_output_is_an_error() {
    let mut args = TABLE_ONE.to_vec();
    args.extend(["--out", "/nonexistent-dir/x.csv"]);
    let out = seqaccel(&args);
    assert_eq!(out.status.code(), Some(2));
    assert!(!Path::new("/nonexistent-dir/x.csv").exists());
}
