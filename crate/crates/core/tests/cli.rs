//! The `qdeck` binary on the bundled fixtures.

mod common;

use std::process::Command;
use std::time::Instant;

use common::fixture;
use serde_json::Value;

fn qdeck(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qdeck")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn path(rel: &str) -> String {
    fixture(rel).to_str().unwrap().to_string()
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("json report")
}

#[test]
fn weights_on_triangle() {
    let (code, out, _) = qdeck(&["weights", &path("triangle.txt")]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["weights"], serde_json::json!(["1", "0", "3", "4"]));
    assert_eq!(v["type"], "type I");
}

#[test]
fn weights_on_cube_hypergraph_uses_dense_oracle() {
    let (code, out, _) = qdeck(&["weights", &path("cube_hypergraph.txt")]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["engine"], "dense");
    assert_eq!(v["even_weight_sum"], "160");
    assert_eq!(v["type"], "not a graph state");
}

#[test]
fn deck_check_verdicts_and_exit_codes() {
    let cases = [
        ("bell_deck.json", 2, "illegitimate"),
        ("ring5_deck3.json", 0, "not-refuted"),
        ("ring5_tampered_deck3.json", 2, "illegitimate"),
        ("ten_qubit_ghz6_reduced.json", 2, "illegitimate"),
        ("ame7_weights.json", 0, "not-refuted"),
        ("open24_weights.json", 0, "not-refuted"),
    ];
    for (file, code, verdict) in cases {
        let (got, out, err) = qdeck(&["deck", "check", &path(file), "--pure", "--graph-state"]);
        assert_eq!(got, code, "{file}: {err}");
        assert_eq!(json(&out)["verdict"], verdict, "{file}");
    }
    let (code, out, _) = qdeck(&["deck", "check", &path("ame7_weights.json")]);
    assert_eq!((code, json(&out)["verdict"].clone()), (0, Value::from("not-refuted")));
}

#[test]
fn extract_then_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let deck = dir.path().join("deck.json");
    let (code, _, err) = qdeck(&["deck", "extract", &path("ring5.txt"), "--m", "3", "--seed", "4", "--out", deck.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = qdeck(&["deck", "check", deck.to_str().unwrap(), "--pure", "--graph-state"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["lp"]["witness"], serde_json::json!(["15", "6"]));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        vec!["deck", "extract", "ring5.txt", "--m", "2", "--seed", "9"],
        vec!["deck", "check", "ring5_tampered_deck3.json", "--pure"],
        vec!["weights", "cube_hypergraph.txt", "--format", "table"],
    ] {
        let args: Vec<String> = args.iter().map(|a| if a.contains('.') { path(a) } else { a.to_string() }).collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(qdeck(&args), qdeck(&args));
    }
}

#[test]
fn reconstruct_ring_card() {
    let (code, out, err) = qdeck(&["reconstruct", &path("ring5_card4.json"), "--n", "5"]);
    assert_eq!(code, 0, "{err}");
    let v = json(&out);
    assert_eq!(v["verified"], true);
    assert_eq!(v["neighborhood"].as_array().unwrap().len(), 2);
    let (code, _, err) = qdeck(&["reconstruct", &path("ring5_card4.json"), "--n", "6"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
}

#[test]
fn kelly_probes() {
    let (code, out, _) = qdeck(&["kelly", &path("kelly/p4"), "--probe", &path("kelly/probe_k2.txt")]);
    assert_eq!((code, json(&out)["value"].clone()), (0, Value::from("3")));
    let (code, out, _) = qdeck(&["kelly", &path("kelly/p4_tampered"), "--probe", &path("kelly/probe_k2.txt")]);
    assert_eq!((code, json(&out)["value"].clone()), (2, Value::from("7/2")));
}

#[test]
fn oracle_verify_agrees() {
    let (code, out, _) = qdeck(&["oracle", "verify", &path("ring5.txt")]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["weights_agree"], true);
    assert_eq!(v["marginals_agree"], true);
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n": 3, "m": 2, "cards": [{"form": "dense", "re": [[1]]}]}"#).unwrap();
    let (code, _, err) = qdeck(&["deck", "check", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("/cards/0"), "{err}");
    assert_eq!(qdeck(&["weights", "/no/such/file"]).0, 1);
    assert_eq!(qdeck(&["frobnicate"]).0, 1);
    assert_eq!(qdeck(&["deck", "extract", &path("ring5.txt")]).0, 1);
}

#[test]
fn all_fixtures_run_within_budget() {
    let start = Instant::now();
    for file in ["triangle.txt", "ring5.txt", "cube_hypergraph.txt"] {
        assert_eq!(qdeck(&["weights", &path(file)]).0, 0);
    }
    for file in ["bell_deck.json", "ring5_deck3.json", "ring5_tampered_deck3.json", "ten_qubit_ghz6_reduced.json", "ame7_weights.json", "open24_weights.json"] {
        assert_ne!(qdeck(&["deck", "check", &path(file), "--pure"]).0, 1);
    }
    assert_eq!(qdeck(&["reconstruct", &path("ring5_card4.json"), "--n", "5"]).0, 0);
    assert!(start.elapsed().as_secs() < 60);
}
