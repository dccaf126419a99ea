use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_entrodist"));
    c.env_remove("ENTRODIST_BUDGET").env_remove("RUST_LOG");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

const SIMPLEX: &str = "q=2^1 rows=3 cols=7\n1 0 1 0 1 0 1\n0 1 1 0 0 1 1\n0 0 0 1 1 1 1\n";
const ROW4: &str =
    "q=2 rows=4 cols=7\n1 0 1 0 1 0 1\n0 1 1 0 0 1 1\n0 0 0 1 1 1 0\n0 0 1 0 0 1 0\n";

fn surface(v: &Value) -> &str {
    v["surface"].as_str().expect("surface string")
}

#[test]
fn analyze_simplex() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "s.txt", SIMPLEX);
    let v = json(&["analyze", f.to_str().unwrap()]);
    assert_eq!(v["tool"], "entrodist");
    assert_eq!(v["command"], "analyze");
    let r = &v["results"];
    assert_eq!((r["n"].as_u64(), r["k"].as_u64()), (Some(7), Some(3)));
    assert_eq!(surface(&r["entropy_distance"]), "35");
    assert!((r["entropy_distance"]["approx"].as_f64().unwrap() - 35f64.log2()).abs() < 1e-9);
    assert_eq!(r["hamming_distance"], 4);
    assert_eq!(r["weight_distribution"]["counts"][4], "7");
    assert_eq!(surface(&r["dual_entropy_distance"]), "1");
}

#[test]
fn analyze_table_row_four() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "r4.txt", ROW4);
    let v = json(&["analyze", f.to_str().unwrap()]);
    assert_eq!(surface(&v["results"]["entropy_distance"]), "21");
}

#[test]
fn malformed_header_names_token() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "bad.txt", "q=2 rowz=1 cols=3\n1 1 1\n");
    let out = run(&["analyze", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("rowz") && err.contains(":1:"), "{err}");
}

#[test]
fn bad_entry_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "bad.txt", "q=3 rows=1 cols=3\n1 2 3\n");
    let out = run(&["analyze", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains(":2:"));
}

#[test]
fn code_size_bounds() {
    let v = json(&["bounds", "2", "7", "--h-surface", "21"]);
    let entries = v["results"]["entries"].as_array().unwrap();
    let get = |name: &str| {
        let e = entries.iter().find(|e| e["name"] == name).unwrap();
        e["value"]["value"]["exact"].as_str().unwrap().to_string()
    };
    assert_eq!(get("gilbert"), "8");
    assert_eq!(get("hamming"), "64");
    assert_eq!(get("singleton"), "32");
    assert_eq!(get("weight_two_exact"), "16");
}

#[test]
fn encoder_bounds() {
    let v = json(&["bounds", "--encoder", "2", "3", "7"]);
    let r = &v["results"];
    assert_eq!(surface(&r["lower"]["value"]), "21");
    assert_eq!(surface(&r["upper"]["value"]), "35");
    assert_eq!(r["h0"]["below"], "21");
    assert_eq!(r["h0"]["through"], "147");
    assert_eq!(r["h0"]["threshold"], "124");
}

#[test]
fn best_code_bounds() {
    let v = json(&["bounds", "2", "7", "--k", "4"]);
    assert_eq!(surface(&v["results"]["lower"]["value"]), "7");
    assert_eq!(surface(&v["results"]["upper"]["value"]), "21");
}

#[test]
fn bounds_usage_errors() {
    assert_eq!(run(&["bounds", "2", "7"]).status.code(), Some(1));
    assert_eq!(
        run(&["bounds", "2", "7", "--h-surface", "21", "--k", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["bounds", "--encoder", "2", "3"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn table1_rows() {
    let v = json(&["table1"]);
    let rows = v["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(v["results"]["agrees"], true);
    let s = |i: usize, key: &str| rows[i][key]["surface"].as_str().unwrap().to_string();
    assert_eq!((s(0, "lower"), s(0, "upper")), ("35".into(), "35".into()));
    assert_eq!(
        (s(1, "lower"), s(1, "upper"), s(1, "example_ed")),
        ("21".into(), "35".into(), "35".into())
    );
    assert_eq!(s(4, "example_ed"), "7");
}

#[test]
fn table1_text_is_stable() {
    let a = run(&["table1"]);
    let b = run(&["table1"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stderr.is_empty());
    assert!(String::from_utf8(a.stdout)
        .unwrap()
        .contains("all rows agree"));
}

#[test]
fn field_info() {
    let v = json(&["field", "4", "--tables"]);
    assert_eq!(v["results"]["mul"][2][2], 3);
    assert_eq!(v["results"]["add"][1][3], 2);
    assert_eq!(run(&["field", "6"]).status.code(), Some(2));
    assert_eq!(
        run(&["field", "8", "--poly", "1 0 0 1"]).status.code(),
        Some(2)
    );
    assert!(run(&["field", "8", "--poly", "1 1 0 1"]).status.success());
}

#[test]
fn dq_exhaustive_weight_two() {
    let v = json(&["dq-exhaustive", "2", "6", "--h-surface", "15"]);
    assert_eq!(v["results"]["size"], "16");
    assert_eq!(v["results"]["k"], 4);
}

#[test]
fn budget_exit_code() {
    let out = run(&[
        "dq-exhaustive",
        "2",
        "8",
        "--h-surface",
        "28",
        "--budget",
        "100",
        "--no-prune",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "s.txt", SIMPLEX);
    let out = bin()
        .args(["analyze", f.to_str().unwrap()])
        .env("ENTRODIST_BUDGET", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = bin()
        .args(["analyze", f.to_str().unwrap(), "--budget", "2^10"])
        .env("ENTRODIST_BUDGET", "4")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn encoder_analyze_simplex() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "s.txt", SIMPLEX);
    let v = json(&["encoder", "analyze", f.to_str().unwrap()]);
    let d = &v["results"]["distance"];
    assert_eq!(surface(&d["value"]), "35");
    assert_eq!(d["witness_input"], serde_json::json!([1, 1, 1]));
}

#[test]
fn encoder_search_modes() {
    let v = json(&["encoder", "search", "2", "1", "3"]);
    assert_eq!(surface(&v["results"]["search"]["distance"]["value"]), "3");
    let out = run(&[
        "--format",
        "json",
        "encoder",
        "search",
        "2",
        "2",
        "4",
        "--mode",
        "random",
        "--samples",
        "20",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stderr).unwrap().contains("seed 0"));
    let a = json(&[
        "encoder",
        "search",
        "2",
        "2",
        "4",
        "--mode",
        "random",
        "--samples",
        "20",
        "--seed",
        "7",
    ]);
    let b = json(&[
        "encoder",
        "search",
        "2",
        "2",
        "4",
        "--mode",
        "random",
        "--samples",
        "20",
        "--seed",
        "7",
    ]);
    assert_eq!(a, b);
}

#[test]
fn pack_commands() {
    let v = json(&["pack", "ensemble-avg", "2", "6", "2"]);
    assert_eq!(v["results"]["matches"], true);
    assert_eq!(v["results"]["sums"][1], "18");

    let w = json(&["pack", "white", "2", "10", "3", "--seed", "1"]);
    let g = w["results"]["generator"].as_array().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let mut body = "q=2 rows=3 cols=10\n".to_string();
    for row in g {
        let r: Vec<String> = row
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        body += &(r.join(" ") + "\n");
    }
    let code = write(&dir, "white.txt", &body);
    let e = json(&[
        "pack",
        "experiment",
        "--code",
        code.to_str().unwrap(),
        "--radius",
        "1",
    ]);
    let r = &e["results"];
    assert_eq!(
        (r["s_size"].as_u64(), r["hypothesis"].as_bool()),
        (Some(11), Some(true))
    );
    assert!(r["condition1"] == true && r["condition2"] == true && r["condition3"] == true);

    let set = write(
        &dir,
        "set.txt",
        "0 0 0 0 0 0 0 0 0 0\n1 0 0 0 0 0 0 0 0 0\n0 1 1 0 0 0 0 0 0 0\n",
    );
    let e = json(&[
        "pack",
        "experiment",
        "--code",
        code.to_str().unwrap(),
        "--set",
        set.to_str().unwrap(),
        "--seed",
        "3",
        "--trials",
        "10",
    ]);
    assert_eq!(e["results"]["trials"], 10);
    assert_eq!(e["results"]["best"]["condition1"], true);
}

#[test]
fn corollary_demo() {
    let out = run(&[
        "pack",
        "corollary1",
        "2",
        "14",
        "3",
        "--epsilon",
        "3.807354922057604",
        "--seed",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let v = json(&[
        "pack",
        "corollary1",
        "2",
        "14",
        "3",
        "--epsilon",
        "0.5",
        "--seed",
        "1",
    ]);
    let r = &v["results"];
    assert_eq!(r["radius"], 1);
    assert!(r["ratio"].is_string());
    assert!(r["threshold"].is_f64());
}
