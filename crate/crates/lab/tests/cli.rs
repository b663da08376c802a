//! End-to-end runs of the `stoc` binary: exit codes, error messages and
//! reproducible reports.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn stoc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stoc"))
        .args(args)
        .output()
        .expect("stoc runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generated_graph_validates_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("c5.json");
    let o = stoc(&["--out", s(&out), "graph", "gen", "cycle", "--n", "5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let first = std::fs::read_to_string(&out).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(parsed["n"], 5);
    assert_eq!(parsed["edges"].as_array().unwrap().len(), 5);
    assert!(stoc(&["graph", "validate", s(&out)]).status.success());

    let graph = stoc_lab::formats::load_graph(&out).unwrap();
    let again = stoc_lab::formats::to_line(&stoc_lab::formats::GraphFile::from_graph(&graph));
    assert_eq!(first, again);
}

#[test]
fn parity_code_verifies_on_triangle() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "k3.json",
        r#"{"directed":false,"n":3,"edges":[[0,1],[1,2],[0,2]]}"#,
    );
    let c = write(&dir, "parity.json", r#"{"q":3,"n":3,"parity":[[1,1,1]]}"#);
    let o = stoc(&["code", "verify", "--code", s(&c), "--graph", s(&g)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = stoc(&["code", "rate", "--code", s(&c)]);
    assert!(stdout(&o).contains("2/3"), "{}", stdout(&o));
}

#[test]
fn failing_code_exits_one_with_a_witness() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "p3.json",
        r#"{"directed":false,"n":3,"edges":[[0,1],[1,2]]}"#,
    );
    let c = write(
        &dir,
        "bad.json",
        r#"{"q":2,"n":3,"words":[[0,0,0],[1,0,0]]}"#,
    );
    let o = stoc(&["code", "verify", "--code", s(&c), "--graph", s(&g)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness"), "{}", stdout(&o));
}

#[test]
fn truncated_json_reports_line_and_column() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "cut.json",
        "{\"directed\":false,\n\"n\":3,\"edges\":[[0,1]",
    );
    let o = stoc(&["graph", "validate", s(&g)]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("cut.json") && err.contains("line 2"), "{err}");
}

#[test]
fn schema_error_names_the_field() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "g.json",
        r#"{"directed":false,"n":3,"edges":[[0,"x"]]}"#,
    );
    let o = stoc(&["graph", "validate", s(&g)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/edges/0/1"), "{}", stderr(&o));
}

#[test]
fn duplicated_matrix_breaks_condition_2() {
    let dir = TempDir::new().unwrap();
    let m = "[[1,3,5],[2,4,6]]";
    let fam = write(
        &dir,
        "dup.json",
        &format!(r#"{{"k":2,"s":3,"matrices":[{m},{m}]}}"#),
    );
    let o = stoc(&["design", "verify", s(&fam)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("condition 2"), "{}", stderr(&o));
}

#[test]
fn example_family_passes_design_verify() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("fam.json");
    let o = stoc(&["--out", s(&out), "design", "gen", "example2x3", "--family"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stoc(&["design", "verify", s(&out)]).status.success());
}

#[test]
fn unknown_preset_is_a_usage_error() {
    let o = stoc(&["experiment", "run", "no-such-preset"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for format in ["json", "csv"] {
        let args = [
            "--format",
            format,
            "--seed",
            "7",
            "experiment",
            "run",
            "kirkman",
            "torus-4",
            "lp-c5",
        ];
        let a = stoc(&args);
        let b = stoc(&args);
        assert!(a.status.success(), "{}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{format}");
    }
}

#[test]
fn csv_report_has_the_documented_columns() {
    let o = stoc(&["--format", "csv", "experiment", "run", "torus-3"]);
    let text = stdout(&o);
    assert_eq!(
        text.lines().next().unwrap(),
        "preset,item,expected,got,provenance,verdict"
    );
}

#[test]
fn interleave_triangle_mismatch_exits_one() {
    let o = stoc(&[
        "--format",
        "json",
        "experiment",
        "run",
        "interleave-triangle",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["schema"], "stoc-report/1");
    let items = report["presets"][0]["items"].as_array().unwrap();
    let failed: Vec<&str> = items
        .iter()
        .filter(|i| i["verdict"] == "fail")
        .map(|i| i["item"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["array bottom row"]);
}

#[test]
fn cap_override_needs_allow_slow() {
    let o = stoc(&["--cap-override", "4", "experiment", "list"]);
    assert_eq!(o.status.code(), Some(2));
}
