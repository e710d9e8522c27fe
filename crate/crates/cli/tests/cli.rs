use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn zkstokes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zkstokes")).args(args).output().expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = zkstokes(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn read(p: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(Path::new(p)).unwrap()).unwrap()
}

#[test]
fn gen_join_and_alt() {
    let dir = TempDir::new().unwrap();
    let k33 = path(&dir, "k33.json");
    ok_json(&["gen", "join", "--k", "3", "--m", "2", "--out", &k33]);
    let doc = read(&k33);
    assert_eq!(doc["format"], 1);
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(doc["facets"].as_array().unwrap().len(), 9);
    assert_eq!(doc["action"]["k"], 3);

    let alt = ok_json(&["gen", "alt", "--k", "2", "--m", "3", "--d", "1"]);
    assert_eq!(alt["facets"].as_array().unwrap().len(), 6);

    let h = ok_json(&["homology", "--in", &k33]);
    assert_eq!(h["values"]["groups"][1]["rank"], 4);
}

#[test]
fn sphere_round_trip_and_corruption() {
    let dir = TempDir::new().unwrap();
    let sphere = path(&dir, "sphere.json");
    ok_json(&["gen", "ezk-sphere", "--k", "3", "--d", "2", "--out", &sphere]);
    let rep = ok_json(&["verify", "sphere", "--in", &sphere]);
    assert_eq!(rep["verdict"], "pass");

    let mut doc = read(&sphere);
    let coeff = &mut doc["chains"][1]["terms"][0]["coeff"];
    *coeff = Value::from(coeff.as_i64().unwrap() + 1);
    let bad = path(&dir, "bad.json");
    std::fs::write(&bad, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = zkstokes(&["verify", "sphere", "--in", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep["values"]["first_failure"], 1);

    let sub = path(&dir, "sub.json");
    let kgon = path(&dir, "kgon.json");
    ok_json(&["gen", "kgon", "--k", "3", "--m", "1", "--out", &kgon]);
    ok_json(&["gen", "subdivide", "--in", &kgon, "--out", &sub]);
    assert_eq!(ok_json(&["verify", "sphere", "--in", &sub])["verdict"], "pass");
}

#[test]
fn chainmap_and_pseudomanifold() {
    let rep = ok_json(&["verify", "chainmap", "--k", "4", "--max-degree", "4"]);
    assert_eq!(rep["values"]["checked"], 4 + 16 + 64 + 256);

    let dir = TempDir::new().unwrap();
    let oct = path(&dir, "oct.json");
    ok_json(&["gen", "join", "--k", "2", "--m", "3", "--out", &oct]);
    let pm = ok_json(&["verify", "pm", "--in", &oct]);
    assert_eq!(pm["values"]["closed"], true);
    assert_eq!(pm["values"]["orientable"], true);
}

#[test]
fn stokes_on_generated_files() {
    let dir = TempDir::new().unwrap();
    let alt = path(&dir, "alt.json");
    let chain = path(&dir, "chain.json");
    let labelling = path(&dir, "l.json");
    ok_json(&["gen", "alt", "--k", "3", "--m", "3", "--d", "1", "--out", &alt]);
    // the single-facet chain with coefficient 2
    let doc = read(&alt);
    let facet = doc["facets"][4].clone();
    let c = serde_json::json!({"format": 1, "degree": 2, "terms": [{"simplex": facet, "coeff": 2}]});
    std::fs::write(&chain, c.to_string()).unwrap();
    ok_json(&["gen", "labelling", "--in", &alt, "--colors", "3", "--seed", "11", "--out", &labelling]);
    assert_eq!(ok_json(&["verify", "admissible", "--in", &alt, "--labelling", &labelling])["verdict"], "pass");
    let rep = ok_json(&["theorem", "stokes", "--in", &alt, "--chain", &chain, "--labelling", &labelling]);
    assert_eq!(rep["values"]["equal"], true);
}

#[test]
fn tucker_invariance_retract_dold() {
    let rep = ok_json(&["theorem", "tucker", "--k", "3", "--d", "1", "--seeds", "10"]);
    let runs = rep["values"]["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 10);
    assert!(runs.iter().all(|r| r["ok"] == true && r["alpha"][0] == 1));

    assert_eq!(ok_json(&["theorem", "invariance", "--k", "2", "--d", "2"])["verdict"], "pass");
    assert_eq!(ok_json(&["theorem", "retract", "--k", "2", "--d", "1", "--m", "3"])["values"]["matches"], true);
    let dold = ok_json(&["theorem", "dold", "--k", "2", "--m", "3"]);
    assert_eq!(dold["values"]["maps"], 64);
    assert_eq!(dold["values"]["rejected"], 64);
}

#[test]
fn equivariant_labellings_pass_their_check() {
    let dir = TempDir::new().unwrap();
    let x = path(&dir, "x.json");
    let l = path(&dir, "l.json");
    ok_json(&["gen", "join", "--k", "3", "--m", "3", "--out", &x]);
    ok_json(&["gen", "labelling", "--in", &x, "--colors", "4", "--equivariant", "--seed", "5", "--out", &l]);
    assert_eq!(ok_json(&["verify", "equivariant", "--in", &x, "--labelling", &l])["verdict"], "pass");
}

#[test]
fn reports_are_deterministic() {
    let args = ["theorem", "tucker", "--k", "2", "--d", "2", "--seeds", "5", "--seed", "9"];
    assert_eq!(zkstokes(&args).stdout, zkstokes(&args).stdout);
}

#[test]
fn usage_and_format_errors_exit_2() {
    assert_eq!(zkstokes(&["gen", "join", "--k", "3"]).status.code(), Some(2));
    assert_eq!(zkstokes(&["gen", "join", "--k", "3", "--m", "2", "--ring", "Q"]).status.code(), Some(2));
    assert_eq!(zkstokes(&["verify", "sphere", "--in", "/nonexistent/x.json"]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let junk = path(&dir, "junk.json");
    std::fs::write(&junk, "{\"format\": 1, \"vertices\": 3}").unwrap();
    assert_eq!(zkstokes(&["homology", "--in", &junk]).status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let out = zkstokes(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep["values"].as_array().unwrap().len(), 8);
}

#[test]
fn sphere_documents_work_where_complexes_are_expected() {
    let dir = TempDir::new().unwrap();
    let s = path(&dir, "s.json");
    let l = path(&dir, "l.json");
    ok_json(&["gen", "ezk-sphere", "--k", "3", "--d", "1", "--out", &s]);
    ok_json(&["gen", "labelling", "--in", &s, "--colors", "2", "--equivariant", "--out", &l]);
    assert_eq!(ok_json(&["verify", "equivariant", "--in", &s, "--labelling", &l])["verdict"], "pass");
}
