use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn toric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let out = toric(&a);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn fixture(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("toric-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

const SQUARE: &str = r#"{"vertices":["1","2","3","4"],"maximal_faces":[["1","2"],["2","3"],["3","4"],["1","4"]]}"#;

#[test]
fn betti_of_a_square_file() {
    let p = fixture("square.json", SQUARE);
    let j = json(&["betti", "--input", p.to_str().unwrap()]);
    assert_eq!(j["poincare"], serde_json::json!([1, 0, 0, 2, 0, 0, 1]));
    let text = String::from_utf8(toric(&["betti", "--input", p.to_str().unwrap()]).stdout).unwrap();
    assert!(text.contains("1 + 2t^3 + t^6"));
}

#[test]
fn betti_of_families() {
    let q3 = json(&["betti", "--family", "q", "--n", "3"]);
    let top = q3["table"].as_array().unwrap().last().unwrap();
    assert_eq!(top["J"].as_array().unwrap().len(), 8);
    let square = json(&["betti", "--family", "pmas", "--n", "2"]);
    assert_eq!(square["poincare"], serde_json::json!([1, 0, 0, 2, 0, 0, 1]));
}

#[test]
fn massey_reports() {
    let q = json(&["massey", "--family", "q", "--n", "3", "--strategy", "exhaustive-gf2"]);
    let last = q["products"].as_array().unwrap().last().unwrap();
    assert_eq!(last["report"]["k"], 3);
    assert_eq!(last["report"]["strict"], "exhaustive");
    assert_eq!(last["report"]["nontrivial"], true);
    assert_eq!(last["report"]["value_count"], 1);
    assert!(last["ungraded_indeterminacy"].is_object());
    assert_eq!(q["l_em_lower_bound"], 2);

    let p = json(&["massey", "--family", "pmas", "--n", "4", "--k", "2..4"]);
    let full: Vec<&Value> = p["products"].as_array().unwrap().iter().filter(|e| e["report"]["k"] == 4).collect();
    assert_eq!(full.len(), 1);
    assert_eq!(full[0]["report"]["nontrivial"], true);
    for e in p["products"].as_array().unwrap() {
        assert_eq!(e["report"]["defined"], true);
        assert!(e["report"]["strict"] == "vanishing" || e["report"]["strict"] == "exhaustive");
    }

    let a = json(&["massey", "--family", "as", "--n", "3", "--k", "3"]);
    assert_eq!(a["products"][0]["report"]["nontrivial"], true);
}

#[test]
fn ring_checks() {
    let v = json(&["ring", "verify", "--id", "pmas-boundary", "--n", "4"]);
    assert_eq!(v["pass"], true);
    let d = json(&["ring", "verify", "--id", "dehn-sommerville", "--family", "q", "--n", "5"]);
    assert_eq!(d["pass"], true);
    let c = json(&["ring", "closure", "--family", "pmas", "--dim", "5"]);
    assert_eq!(c["observed_complexity"], 4);
    let s = json(&["series", "verify", "--order", "6"]);
    assert!(s.as_array().unwrap().iter().all(|r| r["equal"] == true));
    assert_eq!(s.as_array().unwrap().len(), 10);
}

#[test]
fn nesto_contraction() {
    let j = json(&["nesto", "--family", "pmas", "--n", "4", "--contract", "1,3", "--emit"]);
    assert_eq!(j["building_set"]["ground"], 3);
    assert!(j["complex"]["vertices"].is_array());
    let p = fixture("path.json", r#"{"ground": 3, "sets": [[1],[2],[3],[1,2],[2,3],[1,2,3]]}"#);
    let a = json(&["nesto", "--input", p.to_str().unwrap()]);
    assert_eq!(a["f0"], 5);
}

#[test]
fn exit_codes() {
    assert_eq!(toric(&["betti", "--family", "q", "--n", "6"]).status.code(), Some(2));
    assert_eq!(toric(&["ring", "verify", "--id", "no-such-id"]).status.code(), Some(3));
    assert_eq!(toric(&["betti", "--family", "nope", "--n", "2"]).status.code(), Some(3));
    assert_eq!(toric(&["frobnicate"]).status.code(), Some(3));
    // a proper full subcomplex of a simplex boundary is a simplex
    assert_eq!(toric(&["ring", "gdfp", "--family", "simplex", "--n", "3"]).status.code(), Some(1));
    assert_eq!(toric(&["ring", "gdfp", "--family", "cube", "--n", "4"]).status.code(), Some(0));
    let p = fixture("broken.json", "{not json");
    assert_eq!(toric(&["complex", "--input", p.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(toric(&["massey", "--family", "q", "--n", "3", "--limit", "5"]).status.code(), Some(2));
    assert_eq!(toric(&["massey", "--family", "q", "--n", "3", "--field", "q", "--strategy", "exhaustive-gf2"]).status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    for args in [&["betti", "--family", "pe", "--n", "3"][..], &["massey", "--family", "st", "--n", "3"], &["ring", "closure", "--family", "cy", "--dim", "4"]] {
        let mut a = vec!["--json"];
        a.extend_from_slice(args);
        assert_eq!(toric(&a).stdout, toric(&a).stdout, "{args:?}");
    }
}
