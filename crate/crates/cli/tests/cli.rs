use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_eulerlat"))
}

fn running_example() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/running_example.digraph")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(&[args, &["--format", "json"]].concat());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    v
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stderr_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(!out.status.success(), "expected failure for {args:?}");
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn martin_on_running_example() {
    let path = running_example();
    let v = json(&["martin", path.to_str().unwrap()]);
    assert_eq!(v["f"], serde_json::json!([6, 11, 6, 1]));
    assert_eq!(v["s"], serde_json::json!([0, 2, 3, 1]));
    assert_eq!(v["s_at_2"], 24);
    assert_eq!(v["out_degree_factorial_product"], 24);
}

#[test]
fn cancellation_identity_and_dump() {
    let path = running_example();
    let p = path.to_str().unwrap();
    let c = json(&["cancellation", p]);
    assert_eq!(c["alternating_sum"], 0);
    assert_eq!(c["holds"], true);
    let i = json(&["identity", p]);
    assert_eq!(i["holds"], true);
    assert_eq!(i["terms"].as_array().unwrap().len(), 2);
    let d = json(&["lattice-dump", p]);
    let elems = d["elements"].as_array().unwrap();
    assert_eq!(elems.len(), 16);
    assert_eq!(elems[0]["F"], -6);
    assert_eq!(d["top_F"], d["mobius_inversion"]);
    let circ = json(&["circuits", p]);
    assert_eq!(circ["count"], 6);
    assert_eq!(circ["best_count"], 6);
    assert_eq!(circ["circuits"][0].as_array().unwrap().len(), 8);
}

#[test]
fn graph_commands() {
    let dir = TempDir::new().unwrap();
    let k3 = write(&dir, "k3", "multigraph 3\na 1 2\nb 2 3\nc 1 3\n");
    let k4e = write(&dir, "k4e", "multigraph 4\na 1 2\nb 2 3\nc 3 4\nd 1 4\ne 1 3\n");
    let v = json(&["nbc", &k3, "--order", "c,b,a", "--sink", "2"]);
    assert_eq!(v["bases"].as_array().unwrap().len(), 2);
    assert_eq!(v["unique_sink_orientations"], 2);
    let b = json(&["bijection-check", &k4e, "--seed", "3"]);
    assert_eq!(b["passed"], true);
    assert_eq!(b["orders"].as_array().unwrap().len(), 4);
    let c = json(&["chromatic", &k3]);
    assert_eq!(c["chromatic"], serde_json::json!([0, 2, -3, 1]));
    assert_eq!(c["orientation_counts"]["acyclic_total"], 6);
    let p = json(&["pyramids", &k3, "--piece", "1"]);
    assert_eq!(p["count"], 2);
    assert_eq!(p["counts_per_apex"], serde_json::json!([2, 2, 2]));
    let heap = &p["pyramids"][0];
    assert_eq!(heap["elements"].as_array().unwrap().len(), 3);
    assert_eq!(heap["covers"].as_array().unwrap().len(), 2);
    for method in ["hs", "elementary", "det"] {
        let v = json(&["charpoly", &k4e, "--method", method]);
        assert_eq!(v["polynomial"], serde_json::json!([0, -4, -5, 0, 1]), "{method}");
    }
}

#[test]
fn weights() {
    let dir = TempDir::new().unwrap();
    let doubled = write(&dir, "d", "multigraph 2\na 1 2\nb 1 2\n");
    let quad = write(&dir, "q", "multigraph 2\na 1 2\nb 1 2\nc 1 2\nd 1 2\n");
    let tri = write(&dir, "t", "multigraph 3\na 1 2\nb 2 3\nc 3 1\n");
    assert_eq!(json(&["weight", &doubled, "-n", "2"])["weight"], "1");
    assert_eq!(json(&["weight", &tri])["weight"], "2");
    let q = json(&["weight", &quad, "-n", "5"]);
    assert_eq!(q["weight"], "0");
    assert_eq!(q["associated_coefficient"]["circuits"], "1/2");
    assert_eq!(q["associated_coefficient"]["rootings"], "1/2");
}

#[test]
fn errors_exit_nonzero_with_reason() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "empty", "");
    let looped = write(&dir, "loop", "digraph 2\ne 1 1\n");
    let odd = write(&dir, "odd", "multigraph 2\na 1 2\n");
    let k3 = write(&dir, "k3", "multigraph 3\na 1 2\nb 2 3\nc 1 3\n");
    let path_graph = write(&dir, "p", "digraph 3\na 1 2\nb 2 3\n");
    assert!(stderr_of(&["martin", "/nonexistent/file"]).contains("cannot read"));
    assert!(stderr_of(&["martin", &empty]).contains("error"));
    assert!(stderr_of(&["circuits", &looped]).contains("loop"));
    assert!(stderr_of(&["weight", &odd]).contains("odd degree"));
    assert!(stderr_of(&["pyramids", &k3, "--piece", "7"]).contains("--piece"));
    assert!(stderr_of(&["nbc", &k3, "--order", "a,b"]).contains("--order"));
    assert!(stderr_of(&["nbc", &k3, "--order", "a,b,x"]).contains("unknown edge"));
    assert!(stderr_of(&["martin", &k3]).contains("needs a digraph"));
    assert!(stderr_of(&["cancellation", &path_graph]).contains("not Eulerian"));
    assert!(stderr_of(&["martin", running_example().to_str().unwrap(), "--max-edges", "3"]).contains("--max-edges"));
}

#[test]
fn same_seed_same_bytes() {
    let dir = TempDir::new().unwrap();
    let k4e = write(&dir, "k4e", "multigraph 4\na 1 2\nb 2 3\nc 3 4\nd 1 4\ne 1 3\n");
    let args = ["bijection-check", &k4e, "--seed", "11", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let small = ["verify", "--max-edges", "5", "--max-vertices", "4", "--seed", "9", "--format", "json"];
    let a = run(&small);
    assert!(a.status.success());
    assert_eq!(a.stdout, run(&small).stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 9);
    assert_eq!(v["passed"], true);
}

#[test]
fn injected_fault_fails_cancellation() {
    let out = run(&["verify", "--max-edges", "5", "--max-vertices", "3", "--inject-fault", "--format", "json"]);
    assert!(!out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    let cancel = checks.iter().find(|c| c["name"] == "cancellation").unwrap();
    assert_eq!(cancel["passed"], false);
    assert_eq!(v["fault_injected"], true);
}
