use std::path::Path;

use omega_cofrob::cli::{run, EXIT_FAILED, EXIT_INPUT, EXIT_OK, EXIT_TRUNCATED};

fn call(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("omega-cofrob").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const BASIS: &str = r#"[{"name": "u", "degree": 1}, {"name": "x", "degree": 0}, {"name": "y", "degree": -1}]"#;

fn operator(components: &str) -> String {
    format!(r#"{{"basis": {BASIS}, "degree": -1, "reduced": true, "components": [{components}]}}"#)
}

#[test]
fn square_zero_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = write(dir.path(), "d.json", &operator(r#"{"g": 0, "in": ["x"], "out": ["y"], "coeff": "1"}"#));
    assert_eq!(call(&["square-zero", &d]).0, EXIT_OK);

    let failing = operator(
        r#"{"g": 0, "in": ["u"], "out": ["x", "x"], "coeff": "1"}, {"g": 0, "in": ["x"], "out": ["y"], "coeff": "1"}"#,
    );
    let h = write(dir.path(), "h.json", &failing);
    let (code, text) = call(&["square-zero", &h]);
    assert_eq!(code, EXIT_FAILED);
    assert!(text.contains("ħ^1"), "{text}");

    let bad = write(dir.path(), "bad.json", "{\"basis\": ");
    assert_eq!(call(&["square-zero", &bad]).0, EXIT_INPUT);
    assert_eq!(call(&["square-zero", "/nonexistent/h.json"]).0, EXIT_INPUT);
}

#[test]
fn star_reports_oracle_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", &operator(r#"{"g": 0, "in": ["x"], "out": ["y"], "coeff": "1"}"#));
    let b = write(dir.path(), "b.json", &operator(r#"{"g": 0, "in": ["u"], "out": ["x"], "coeff": "1/2"}"#));
    let (code, text) = call(&["star", &a, &b]);
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("oracle_agreement: true"), "{text}");

    let other = r#"{"basis": [{"name": "z", "degree": 0}], "degree": 0, "reduced": false, "components": []}"#;
    let c = write(dir.path(), "c.json", other);
    assert_eq!(call(&["star", &a, &c]).0, EXIT_INPUT);
}

#[test]
fn family_conversions_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let text = operator(r#"{"g": 1, "in": ["u"], "out": ["x", "x"], "coeff": "3"}"#);
    let h = write(dir.path(), "h.json", &text);
    let (code, family) = call(&["to-family", &h]);
    assert_eq!(code, EXIT_OK);
    let f = write(dir.path(), "f.json", &family);
    let (code, back) = call(&["to-weyl", &f]);
    assert_eq!(code, EXIT_OK);
    let reread: serde_json::Value = serde_json::from_str(&back).unwrap();
    let original: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(reread, original);
    assert_eq!(call(&["relations", &f]).0, EXIT_OK);
}

#[test]
fn homology_formats_and_truncation() {
    let (code, csv) = call(&["homology", "--r", "2", "--t", "1", "--g", "0"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(csv, "r,t,g,degree,dim_chains,betti\n2,1,0,-1,1,1\n");

    let (code, json) = call(&["homology", "--r", "2", "--t", "2", "--g", "0", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    let five_term = &value["relations"][0];
    assert_eq!(five_term["relation"], "five_term");
    assert_eq!(five_term["boundary"], true);

    let args = ["homology", "--r", "3", "--t", "2", "--g", "0", "--pmax", "2"];
    assert_eq!(call(&args).0, EXIT_TRUNCATED);
    let mut allowed = args.to_vec();
    allowed.push("--allow-truncated");
    let (code, csv) = call(&allowed);
    assert_eq!(code, EXIT_OK);
    assert!(csv.contains("truncated"));

    assert_eq!(call(&["homology", "--r", "2"]).0, EXIT_INPUT);
    assert_eq!(call(&["homology", "--r", "0", "--t", "1", "--g", "0"]).0, EXIT_INPUT);
}

#[test]
fn verify_suites_run() {
    let (code, text) = call(&["verify", "--suite", "dsq", "--max-arity", "3", "--max-genus", "1", "--pmax", "2"]);
    assert_eq!(code, EXIT_OK, "{text}");
    assert!(text.ends_with("all passed\n"));
    let (code, text) = call(&["verify", "--suite", "theorem", "--cases", "4", "--max-arity", "2", "--max-genus", "1"]);
    assert_eq!(code, EXIT_OK, "{text}");
    let (code, _) = call(&["verify", "--suite", "coassoc", "--max-arity", "2", "--max-genus", "0"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn basis_uses_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let (code, first) = call(&["basis", "--r", "2", "--t", "2", "--g", "0", "--pmax", "3", "--cache", cache]);
    assert_eq!(code, EXIT_OK);
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_some());
    let (_, second) = call(&["basis", "--r", "2", "--t", "2", "--g", "0", "--pmax", "3", "--cache", cache]);
    assert_eq!(first, second);
    let (_, uncached) = call(&["basis", "--r", "2", "--t", "2", "--g", "0", "--pmax", "3"]);
    assert_eq!(first, uncached);
}
