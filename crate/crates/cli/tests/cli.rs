use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn graph_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn gspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gspec")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn identity_on_single_edge() {
    let g = graph_file("u v\n");
    let out = gspec(&["identity", "-g", g.path().to_str().unwrap(), "-t", "x1(x2x3)", "-u", "(x1x2)x3"]);
    let v = json(&out);
    assert_eq!(v["verdict"], "NOT SATISFIED");
    assert_eq!(v["left"]["homs"], 0);
    assert_eq!(v["right"]["homs"], 1);
}

#[test]
fn spectrum_of_two_cycle() {
    let g = graph_file("0 1\n1 0\n");
    let path = g.path().to_str().unwrap();
    let v = json(&gspec(&["spectrum", "-g", path, "-n", "6"]));
    let counts: Vec<u64> = v.as_array().unwrap().iter().map(|e| e["s_n"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![1, 1, 2, 4, 8, 16]);
    assert_eq!(v[3]["classes"].as_array().unwrap().len(), 4);

    let csv = stdout(&gspec(&["spectrum", "-g", path, "-n", "6", "--csv"]));
    let column: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(column, vec!["1", "1", "2", "4", "8", "16"]);
}

#[test]
fn methods_agree() {
    let g = graph_file("u v\nv v\nv w\nw v\nw w\n");
    let path = g.path().to_str().unwrap();
    let counts = |method: &str| {
        let v = json(&gspec(&["spectrum", "-g", path, "-n", "5", "--method", method]));
        v.as_array().unwrap().iter().map(|e| e["s_n"].as_u64().unwrap()).collect::<Vec<_>>()
    };
    assert_eq!(counts("hom"), vec![1, 1, 2, 4, 8]);
    assert_eq!(counts("table"), counts("hom"));
    assert_eq!(counts("auto"), counts("hom"));
}

#[test]
fn enumerate_terms() {
    let out = gspec(&["enumerate", "-n", "3", "--as", "term"]);
    assert_eq!(stdout(&out), "(x1x2)x3\nx1(x2x3)\n");
    let out = gspec(&["enumerate", "-n", "4", "--as", "dyck"]);
    assert_eq!(stdout(&out).lines().count(), 5);
    let out = gspec(&["enumerate", "-n", "4"]);
    assert_eq!(stdout(&out).lines().next(), Some("0,1,1,1"));
}

#[test]
fn fine_classes() {
    let g = graph_file("0 1\n1 0\n");
    let v = json(&gspec(&["fine", "-g", g.path().to_str().unwrap(), "-n", "4"]));
    assert_eq!(v["s_n"], 4);
    assert_eq!(v["classes"][2]["members"], serde_json::json!(["0,1,2,1", "0,1,2,3"]));
}

#[test]
fn classify_and_witness() {
    let c3 = graph_file("a b\nb c\nc a\n");
    let v = json(&gspec(&["classify", "-g", c3.path().to_str().unwrap()]));
    assert_eq!(v["associative"], false);
    assert_eq!(v["antiassociativity"]["antiassociative"], false);
    assert_eq!(v["antiassociativity"]["witness"]["verified"], true);
    assert_eq!(v["undirected"], Value::Null);

    let v = json(&gspec(&["witness", "-g", c3.path().to_str().unwrap()]));
    assert_eq!(v["size"], 9);

    let anti = graph_file("u u\nu v\nv v\n");
    let out = gspec(&["witness", "-g", anti.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("antiassociative"));

    let edge = graph_file("u v\nv u\n");
    let v = json(&gspec(&["classify", "-g", edge.path().to_str().unwrap()]));
    assert_eq!(v["undirected"]["kind"], "powers-of-two");
}

#[test]
fn tables() {
    let v = json(&gspec(&["table", "--which", "t1", "-n", "5"]));
    assert_eq!(v[1]["h"], 3);
    assert_eq!(v[1]["values"], serde_json::json!([1, 1, 2, 5, 13]));
    assert!(v.as_array().unwrap().iter().all(|r| r["recurrence_agrees"] == true));

    let v = json(&gspec(&["table", "--which", "t2"]));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r["checked"] == true));
}

#[test]
fn formulas() {
    let v = json(&gspec(&["formulas", "--family", "cycle:3", "-n", "5"]));
    let values: Vec<u64> = v["values"].as_array().unwrap().iter().map(|e| e["value"].as_u64().unwrap()).collect();
    assert_eq!(values, vec![1, 1, 2, 5, 13]);
    let csv = stdout(&gspec(&["formulas", "--family", "path:2", "-n", "5", "--csv"]));
    assert_eq!(csv.lines().last(), Some("5,9"));
    let csv = stdout(&gspec(&["formulas", "--family", "height:3", "-n", "6", "--csv"]));
    assert_eq!(csv.lines().last(), Some("6,34"));
    // values past 64 bits stay exact, as strings
    let v = json(&gspec(&["formulas", "--family", "two-vertex:uu,uv,vv", "-n", "40"]));
    assert_eq!(v["values"][30]["value"], 3814986502092304u64);
    assert_eq!(v["values"][39]["value"], "680425371729975800390");
}

#[test]
fn exit_codes() {
    let bad_graph = graph_file("a b c\n");
    let out = gspec(&["spectrum", "-g", bad_graph.path().to_str().unwrap(), "-n", "3"]);
    assert_eq!(out.status.code(), Some(3));

    let g = graph_file("u v\n");
    let path = g.path().to_str().unwrap();
    let out = gspec(&["identity", "-g", path, "-t", "(x1x3)x2", "-u", "x1(x2x3)"]);
    assert_eq!(out.status.code(), Some(3));

    let out = gspec(&["spectrum", "-g", path, "-n", "8", "--max-trees", "100"]);
    assert_eq!(out.status.code(), Some(4));
    let out = gspec(&["spectrum", "-g", path, "-n", "3", "--method", "table", "--max-evals", "10"]);
    assert_eq!(out.status.code(), Some(4));

    assert_eq!(gspec(&["spectrum"]).status.code(), Some(2));
    assert_eq!(gspec(&["formulas", "--family", "nope:1", "-n", "3"]).status.code(), Some(2));
    assert_eq!(gspec(&["spectrum", "-g", "/nonexistent/graph", "-n", "3"]).status.code(), Some(1));
}

#[test]
fn deterministic_output() {
    let g = graph_file("a b\nb b\nb a\nc a\n");
    let path = g.path().to_str().unwrap();
    let first = stdout(&gspec(&["fine", "-g", path, "-n", "6"]));
    let second = stdout(&gspec(&["fine", "-g", path, "-n", "6"]));
    assert_eq!(first, second);
}
