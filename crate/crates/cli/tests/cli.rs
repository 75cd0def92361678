use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn cohere(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohere")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn doc(name: &str) -> String {
    data(name).display().to_string()
}

#[test]
fn example_one_is_incoherent() {
    for mode in ["auto", "lp", "closed-form"] {
        let out = cohere(&["check", &doc("example1.json"), "--mode", mode, "--verify-lp", "--json"]);
        assert_eq!(out.status.code(), Some(1), "{mode}");
        let report = json(&out);
        assert_eq!(report["coherent"], false);
        assert_eq!(report["closed_form_used"], mode != "lp");
        assert_eq!(report["witness"]["value_at_assessment"].as_str().map(|s| s.starts_with('-')), Some(true));
    }
}

#[test]
fn product_assessment_is_coherent() {
    let out = cohere(&["check", &doc("product.json"), "--mode", "lp", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["coherent"], true);
    assert!(report["witness"].is_null());
    assert_eq!(report["recursion_trace"].as_array().unwrap().len(), 1);
    assert!(!report["certificate"][0]["weights"].as_array().unwrap().is_empty());

    let out = cohere(&["check", &doc("product.json"), "--verify-lp", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["lp_agrees"], true);
}

#[test]
fn malformed_rational_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(data("two.json")).unwrap().replace("\"0.1\"", "\"1.2.3\"");
    let path = dir.path().join("bad.json");
    std::fs::write(&path, text).unwrap();
    let out = cohere(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1.2.3"));

    assert_eq!(cohere(&["check", "/nonexistent/doc.json"]).status.code(), Some(2));
    assert_eq!(cohere(&["lambda", "--x", "2", "--y", "0.5", "--z", "0.1"]).status.code(), Some(2));
    assert_eq!(cohere(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn closed_form_mode_needs_a_known_family() {
    let out = cohere(&["check", &doc("single.json"), "--mode", "closed-form"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cohere(&["check", &doc("single.json")]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn extend_same_consequent() {
    for mode in ["auto", "lp", "closed-form"] {
        let out = cohere(&["extend", &doc("same_consequent.json"), "--target", "0,1", "--mode", mode, "--json"]);
        assert_eq!(out.status.code(), Some(0), "{mode}");
        let report = json(&out);
        assert_eq!(report["lower"], "63/400");
        assert_eq!(report["upper"], "7/20");
        assert_eq!(report["exact"], true);
    }
}

#[test]
fn extend_rejects_incoherent_base_and_assessed_target() {
    let out = cohere(&["extend", &doc("example1.json"), "--target", "0,1,2"]);
    assert_eq!(out.status.code(), Some(2), "target already assessed");

    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(data("example1.json")).unwrap();
    let mut value: Value = serde_json::from_str(&text).unwrap();
    value["terms"].as_array_mut().unwrap().pop();
    let path = dir.path().join("prefix.json");
    std::fs::write(&path, value.to_string()).unwrap();
    let out = cohere(&["extend", path.to_str().unwrap(), "--target", "0,1,2", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["base_coherent"], false);
}

#[test]
fn lambda_kinds() {
    let kind = |x: &str, y: &str, z: &str| {
        let out = cohere(&["lambda", "--x", x, "--y", y, "--z", z, "--json"]);
        (json(&out)["kind"].as_str().unwrap().to_owned(), out.status.code())
    };
    assert_eq!(kind("0.35", "0.45", "0.1575"), ("PRODUCT".into(), Some(0)));
    assert_eq!(kind("0.35", "0.45", "0.35"), ("MIN".into(), Some(0)));
    assert_eq!(kind("0.5", "0.6", "0.1"), ("LUKASIEWICZ".into(), Some(0)));
    assert_eq!(kind("0", "0.7", "0"), ("UNDERDETERMINED".into(), Some(0)));
    assert_eq!(kind("0.5", "0.5", "0.6"), ("NOT_REPRESENTABLE".into(), Some(1)));
    let out = cohere(&["lambda", "--x", "0.35", "--y", "0.45", "--z", "0.25", "--json"]);
    let report = json(&out);
    assert_eq!(report["kind"], "GENERIC");
    let lambda = report["lambda"].as_f64().unwrap();
    assert!((lambda - 0.024_884_717_524_728_02).abs() < 1e-9);
    assert!(report["residual"].as_f64().unwrap() <= 1e-12);
}

fn table(name: &str, extra: &[&str]) -> Value {
    let path = doc(name);
    let mut args = vec!["table", path.as_str(), "--json"];
    args.extend_from_slice(extra);
    let out = cohere(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    json(&out)
}

#[test]
fn table_case_counts() {
    let one = table("single.json", &[]);
    assert_eq!(one["rows"].as_array().unwrap().len(), 3);
    assert_eq!(one["cases"], 3);

    let two = table("two.json", &[]);
    assert_eq!(two["cases"], 5);
    let rows = two["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    let last = rows.last().unwrap();
    assert_eq!(last["constituent"], "!H & !K");
    assert_eq!(last["case"], "x{1,2}");
    assert_eq!(last["value"], "1/10");

    let three = table("product.json", &[]);
    assert_eq!(three["cases"], 9);
    assert_eq!(three["rows"].as_array().unwrap().len(), 27);

    let sub = table("product.json", &["--term", "0,2"]);
    assert_eq!(sub["term"], "C{1,3}");
    assert_eq!(sub["cases"], 5);
}

#[test]
fn text_output() {
    let out = cohere(&["extend", &doc("same_consequent.json"), "--target", "0,1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[63/400, 7/20]"), "{text}");
    let out = cohere(&["check", &doc("disjoint.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("coherent (linear programming)"));
}
