use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn sft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sft")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn fixtures() -> (TempDir, PathBuf, PathBuf, PathBuf, PathBuf) {
    let dir = TempDir::new().unwrap();
    let fib = write(&dir, "fib.mat", "1 1\n1 0\n");
    let two = write(&dir, "two.mat", "# full 2-shift\n2\n");
    let three = write(&dir, "three.mat", "3\n");
    let ones = write(&dir, "ones.mat", "1 1\n1 1\n");
    (dir, fib, two, three, ones)
}

#[test]
fn invariant_reports() {
    let (_d, fib, two, ..) = fixtures();
    let o = sft(&["invariants", s(&fib)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1 - t - t^2"));

    let o = sft(&["--format", "json", "invariants", s(&two)]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["bowen_franks"], "trivial");
    assert_eq!(v["zeta"], "1 - 2*t");
    assert_eq!(v["semimodule"], "⟨x | 2tx = x⟩");
}

#[test]
fn json_reports_are_reproducible() {
    let (_d, fib, ..) = fixtures();
    let args = ["--format", "json", "invariants", s(&fib), "--monoid", "z3", "--modulus", "5"];
    assert_eq!(sft(&args).stdout, sft(&args).stdout);
}

#[test]
fn empty_file_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "empty.mat", "");
    let o = sft(&["invariants", s(&empty)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
}

#[test]
fn bad_entry_reports_line_and_column() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.mat", "1 2\n3 x\n");
    let o = sft(&["bf", s(&bad)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 3"));
}

#[test]
fn compare_exit_codes() {
    let (d, _fib, two, three, ones) = fixtures();
    let cert = d.path().join("cert.json");
    let o = sft(&["compare", s(&two), s(&ones), "--relation", "sse", "--certificate", s(&cert)]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 1);
    assert_eq!(v["steps"][0]["type"], "factor");

    let o = sft(&["compare", s(&two), s(&three)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("separated by zeta"));

    let o = sft(&["--format", "json", "compare", s(&two), s(&two)]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["certificate"]["steps"].as_array().unwrap().is_empty());
}

#[test]
fn exhausted_budget_is_unknown() {
    let (_d, _fib, two, _three, ones) = fixtures();
    let o = sft(&["--max-steps", "0", "compare", s(&two), s(&ones)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("unknown"));
}

#[test]
fn verify_round_trip_and_tampering() {
    let (d, _fib, two, three, ones) = fixtures();
    let cert = d.path().join("cert.json");
    assert_eq!(sft(&["sse-search", s(&two), s(&ones), "--certificate", s(&cert)]).status.code(), Some(0));
    let o = sft(&["verify", s(&cert), "--source", s(&two), "--target", s(&ones)]);
    assert_eq!(o.status.code(), Some(0));

    assert_eq!(sft(&["verify", s(&cert), "--target", s(&three)]).status.code(), Some(1));

    let text = fs::read_to_string(&cert).unwrap().replacen("\"1 1\"", "\"1 2\"", 1);
    let bad = write(&d, "bad.json", &text);
    let o = sft(&["--format", "json", "verify", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["failed_step"], 0);
}

#[test]
fn flow_search_finds_expansions() {
    let (d, _fib, two, three, _ones) = fixtures();
    let expanded = write(&d, "exp.mat", "0 1\n2 0\n");
    let o = sft(&["--format", "json", "flow-search", s(&two), s(&expanded)]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["certificate"]["kind"], "flow");
    assert_eq!(sft(&["flow-search", s(&two), s(&three)]).status.code(), Some(2));
}

#[test]
fn diagrams() {
    let dir = TempDir::new().unwrap();
    let unit = write(&dir, "unit.d", "(c mu (t eta id))");
    assert_eq!(stdout(&sft(&["eval-diagram", s(&unit)])), "1\n");

    let yank = write(&dir, "yank.d", "(tr sigma)");
    assert!(stdout(&sft(&["eval-diagram", s(&yank)])).contains("model value: id"));

    let worked = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/worked.diagram");
    assert_eq!(stdout(&sft(&["eval-diagram", s(&worked)])), "0 1 0 0 t\n0 0 0 0 0\n0 0 0 0 1\n0 t^2+t 1 0 0\n");

    let bad = write(&dir, "bad.d", "(c mu mu)");
    let o = sft(&["eval-diagram", s(&bad)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("path"));
}

#[test]
fn fixed_counts() {
    let dir = TempDir::new().unwrap();
    let two = write(&dir, "two.mat", "2\n");
    let one = write(&dir, "one.mat", "1\n");
    let count = |args: &[&str]| {
        let v: Value = serde_json::from_slice(&sft(args).stdout).unwrap();
        v["solutions"].as_str().unwrap().to_string()
    };
    assert_eq!(count(&["--format", "json", "fixed-count", s(&two)]), "1");
    assert_eq!(count(&["--format", "json", "fixed-count", s(&one)]), "2");

    let trivial = write(&dir, "trivial.json", r#"{"elements": ["0"], "table": [[0]], "unit": 0}"#);
    let fib = write(&dir, "fib.mat", "1 1\n1 0\n");
    assert_eq!(count(&["--format", "json", "fixed-count", s(&fib), "--monoid", s(&trivial)]), "1");
}

#[test]
fn zeta_and_bowen_franks() {
    let (_d, fib, _two, three, _ones) = fixtures();
    let o = stdout(&sft(&["zeta", s(&fib), "--order", "6"]));
    assert!(o.contains("1 - t - t^2"));
    assert!(o.contains("1 1 2 3 5 8 13"));
    assert_eq!(stdout(&sft(&["bf", s(&three)])), "Z/2\n");
}

#[test]
fn ring_flag_is_enforced() {
    let dir = TempDir::new().unwrap();
    let poly = write(&dir, "poly.mat", "t 1\n0 1\n");
    assert_eq!(sft(&["bf", s(&poly)]).status.code(), Some(3));
    assert_eq!(sft(&["--ring", "zplus_t", "bf", s(&poly)]).status.code(), Some(3));
    let fp = write(&dir, "fp.d", "(c mu delta)");
    assert_eq!(stdout(&sft(&["--ring", "fp:2", "eval-diagram", s(&fp)])), "0\n");
}
