use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_comfort");

const C6: &str = "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n";
const P6: &str = "6 5\n0 1\n1 2\n2 3\n3 4\n4 5\n";
const STAR: &str = "5 4\n0 1\n0 2\n0 3\n0 4\n";

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn hicom_on_c6_returns_a_three_vertex_team() {
    let dir = TempDir::new().unwrap();
    let c6 = write(&dir, "c6.txt", C6);
    let out = run(&["hicom", "--l", "3/2", path_str(&c6)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["team"], serde_json::json!([0, 1, 5]));
    assert_eq!((v["k"].as_u64(), v["d1"].as_u64()), (Some(2), Some(2)));
    assert_eq!(v["verdict"], "l-HC");
    assert_eq!(v["bounds"].as_array().unwrap().len(), 2);
    assert_eq!(v["trace"][0]["phase"], "start");
}

#[test]
fn oracle_reports_none_with_exit_two() {
    let dir = TempDir::new().unwrap();
    let c6 = write(&dir, "c6.txt", C6);
    let out = run(&["oracle", "min", "--kind", "comfortable", path_str(&c6)]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["status"], "NONE");
    assert_eq!(v["enumerated"], 62);
}

#[test]
fn generated_cycle_pipes_into_analyze() {
    let gen = run(&["gen", "cycle", "6"]);
    assert_eq!(gen.status.code(), Some(0));
    let out = run_stdin(&["analyze", "-"], std::str::from_utf8(&gen.stdout).unwrap());
    let v = json(&out);
    assert_eq!(v["profile"]["class_label"], "self-centered");
    assert_eq!(v["profile"]["diameter"], 3);
}

#[test]
fn analyze_path_single_vertex_and_components() {
    let v = json(&run_stdin(&["analyze", "-"], P6));
    assert_eq!(
        (
            v["profile"]["radius"].as_u64(),
            v["profile"]["diameter"].as_u64()
        ),
        (Some(3), Some(5))
    );
    assert_eq!(v["profile"]["class_label"], "tri-eccentric");
    let v = json(&run_stdin(&["analyze", "-"], "1 0\n"));
    assert_eq!(v["profile"]["radius"], v["profile"]["diameter"]);
    let v = json(&run_stdin(&["analyze", "-"], "5 3\n0 1\n1 2\n3 4\n"));
    assert_eq!(v["connected"], false);
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    assert_eq!(v["components"][1]["vertices"], serde_json::json!([3, 4]));
}

#[test]
fn verify_reproduces_the_hicom_report() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "p9.txt",
        "9 8\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n7 8\n",
    );
    let team = dir.path().join("team.txt");
    let h = run(&[
        "hicom",
        "--l",
        "3/2",
        "--team-out",
        path_str(&team),
        path_str(&g),
    ]);
    assert_eq!(h.status.code(), Some(0));
    let v = run(&["verify", "--l", "3/2", path_str(&g), path_str(&team)]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(json(&h)["report"], json(&v));
}

#[test]
fn one_based_labels_survive() {
    let text = "6 6 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n";
    let v = json(&run_stdin(&["hicom", "-"], text));
    assert_eq!(v["team"], serde_json::json!([1, 2, 6]));
    assert_eq!(v["start"], 1);
    let v = json(&run_stdin(&["hicom", "--start", "4", "-"], text));
    assert_eq!(v["team"], serde_json::json!([3, 4, 5]));
}

#[test]
fn exit_codes_and_error_envelope() {
    let dir = TempDir::new().unwrap();
    let c6 = write(&dir, "c6.txt", C6);
    let star = write(&dir, "star.txt", STAR);
    let bad = write(&dir, "bad.txt", "3 1\n0 9\n");

    let out = run(&["hicom", path_str(&star)]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "infeasible");

    let out = run(&["analyze", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "parse");
    assert!(err["error"]["message"]
        .as_str()
        .unwrap()
        .starts_with("line 2"));

    assert_eq!(
        run(&["hicom", "--l", "1.05", path_str(&c6)]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["hicom", "--l", "0.5", path_str(&c6)]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["hicom", "--l", "3", path_str(&c6)]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["analyze", "/no/such/file"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn dot_output_is_stable() {
    let out = run_stdin(&["hicom", "--format", "dot", "-"], C6);
    let expected = "graph G {\n  0 [team=true, style=filled, fillcolor=\"#f4a261\"];\n  1 [team=true, style=filled, fillcolor=\"#f4a261\"];\n  2;\n  3;\n  4;\n  5 [team=true, style=filled, fillcolor=\"#f4a261\"];\n  0 -- 1;\n  0 -- 5;\n  1 -- 2;\n  2 -- 3;\n  3 -- 4;\n  4 -- 5;\n}\n";
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected);
}

#[test]
fn hicom_max_reports_a_superset() {
    let v = json(&run_stdin(
        &["hicom", "--max", "-"],
        "7 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n",
    ));
    assert_eq!(v["team"], serde_json::json!([1, 2, 3, 4, 5]));
    assert_eq!(v["max_team"], serde_json::json!([1, 2, 3, 4, 5]));
}

#[test]
fn disconnected_hicom_runs_per_component() {
    let text =
        "14 14\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 0\n7 8\n8 9\n9 10\n10 11\n11 12\n12 13\n13 7\n";
    let out = run_stdin(&["hicom", "-"], text);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    let team: Vec<u64> = comps[1]["result"]["team"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert!(team.iter().all(|&t| t >= 7));
}

#[test]
fn oracle_cap_comes_from_flag_or_environment() {
    let p16 = run(&["gen", "path", "16"]).stdout;
    let p16 = String::from_utf8(p16).unwrap();
    let out = run_stdin(&["oracle", "cds", "-"], &p16);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "cap_exceeded");
    let mut child = Command::new(BIN)
        .args(["oracle", "cds", "-"])
        .env("COMFORT_ORACLE_CAP", "16")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(p16.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(json(&out)["optimum"], 14);
    assert_eq!(
        json(&run_stdin(&["oracle", "cds", "--cap", "16", "-"], &p16))["optimum"],
        14
    );
}

#[test]
fn substitution_table_and_corpus_commands() {
    let v = json(&run(&["substitute"]));
    assert_eq!(v["rows"][0]["d1"], 334);
    assert_eq!(v["rows"][0]["versus_d1"], "<");
    let v = json(&run(&["oracle", "ratio", "--corpus", "cycles:7-9"]));
    assert_eq!(v["records"].as_array().unwrap().len(), 3);
    let v = json(&run(&[
        "oracle",
        "bounds",
        "--l",
        "2",
        "--corpus",
        "trees:4-6",
    ]));
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["holds"] == true));
}

#[test]
fn gen_gnp_is_reproducible() {
    let a = run(&["gen", "gnp", "20", "0.2", "--seed", "7"]);
    let b = run(&["gen", "gnp", "20", "0.2", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).starts_with("# gnp-20-0.2 seed=7"));
    assert_eq!(run(&["gen", "cycle", "2"]).status.code(), Some(1));
}
