use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schubert-tangent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn bounds_from_spec_file_with_flag_override() {
    let spec = scratch(
        "d4.json",
        r#"{"series": "D", "rank": 4, "mu": [3, 3, 3, 0], "lambda": ["3", 3, 3, 0]}"#,
    );
    let out = bin(&["bounds", "--spec", spec.to_str().unwrap(), "--lambda", "1,1,1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["instance"]["lambda"], serde_json::json!(["1", "1", "1", "0"]));
    let table = v["results"]["table"].as_array().unwrap();
    assert_eq!(table.len(), 24);
    assert!(table.iter().all(|e| e["k"] == e["l"]));
}

#[test]
fn cartan_reports_the_d4_gap_with_exit_1() {
    let out = bin(&[
        "cartan", "--series", "D", "--rank", "4", "--mu", "3,3,3,0", "--lambda", "1,1,1,0", "--h", "0,0,1,-1",
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    let w = &v["witnesses"][0];
    assert_eq!(w["l_h"], 3);
    assert_eq!(w["min_support_k"], 2);
}

#[test]
fn tsv_rows_are_tab_separated() {
    let out = bin(&[
        "--format", "tsv", "bounds", "--series", "B", "--rank", "2", "--mu", "1,0", "--lambda", "1,0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split('\t').collect();
    assert!(header.contains(&"k") && header.contains(&"l"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.split('\t').count() == header.len()));
}

#[test]
fn modp_file_sums_each_group() {
    let spec = scratch(
        "modp.json",
        r#"{"series": "C", "rank": 2, "residue_degree": 2, "groups": [["1/2,1/2", ["1/2", "1/2"]], [["1/2", "1/2"]]]}"#,
    );
    let out = bin(&["modp", "--spec", spec.to_str().unwrap()]);
    let v = json(&out);
    assert_eq!(out.status.code(), Some(0), "{v}");
    assert_eq!(v["results"]["abelian_type"], true);
    assert_eq!(v["results"]["factors"][0]["mu"], serde_json::json!(["1", "1"]));
    assert_eq!(v["results"]["factors"][1]["mu"], serde_json::json!(["1/2", "1/2"]));

    let spec = scratch(
        "modp_mixed.json",
        r#"{"series": "C", "rank": 2, "residue_degree": 2, "groups": [["1/2,1/2"], [[1, 0]]]}"#,
    );
    let out = bin(&["modp", "--spec", spec.to_str().unwrap()]);
    let v = json(&out);
    assert_eq!(out.status.code(), Some(1), "{v}");
    assert_eq!(v["results"]["abelian_type"], false);
    assert_eq!(
        v["results"]["factors"][1]["classification"]["verdict"],
        "not_abelian_type"
    );
}

#[test]
fn input_errors_exit_2_with_field() {
    let out = bin(&[
        "bounds", "--series", "D", "--rank", "4", "--mu", "1,0,0", "--lambda", "0,0,0,0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "input");
    assert!(!out.stderr.is_empty());

    let spec = scratch("bad.json", r#"{"series": "A", "rank": 1, "mu": [1, 0], "colour": 3}"#);
    let out = bin(&["classify", "--spec", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_sweeps_every_lambda() {
    let out = bin(&["verify", "--series", "A", "--rank", "2", "--mu", "2,1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let text = v.to_string();
    for lambda in [r#"["2","1","0"]"#, r#"["1","1","1"]"#] {
        assert!(text.contains(lambda), "missing {lambda}");
    }
}

#[test]
fn classify_flags_a_wrong_selector() {
    let out = bin(&[
        "classify", "--series", "D", "--rank", "4", "--mu", "2,0,0,0", "--search", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert!(
        v["witnesses"].to_string().contains(r#"["1","1","1","-1"]"#),
        "{}",
        v["witnesses"]
    );
}
