use std::fs;
use std::path::PathBuf;

use acampo::cli::run;
use serde_json::Value;

fn path(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel).display().to_string()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("acampo").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn decompose_matches_golden() {
    let (code, out, _) = call(&["decompose", "--germ", &path("gl4.germ.json"), "--divide", &path("gl4.divide.json"), "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, fs::read_to_string(path("golden/gl4-decompose-n2.json")).unwrap());

    let v: Value = serde_json::from_str(&out).unwrap();
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.iter().filter(|t| t["kind"] == "main").count(), 13);
    let mut parts: Vec<String> =
        terms.iter().filter(|t| t["kind"] == "stratum").map(|t| t["partition"].to_string()).collect();
    parts.dedup();
    assert_eq!(parts.len(), 7);
    assert_eq!(v["consistency"]["passed"], true);
}

#[test]
fn dynkin_and_strata_match_golden() {
    let (code, out, _) = call(&["dynkin", "--divide", &path("gl4.divide.json")]);
    assert_eq!(code, 0);
    assert_eq!(out, fs::read_to_string(path("golden/gl4.dot")).unwrap());
    let args = ["strata", "--germ", &path("gl4.germ.json"), "--divide", &path("gl4.divide.json"), "--n", "3", "--format", "text"];
    let (code, out, _) = call(&args);
    assert_eq!(code, 0);
    assert_eq!(out, fs::read_to_string(path("golden/gl4-strata-n3.txt")).unwrap());
}

#[test]
fn exit_codes() {
    let tampered = call(&["divide-check", "--germ", &path("gl4.germ.json"), "--divide", &path("gl4-tampered.divide.json")]);
    assert_eq!(tampered.0, 1);
    let v: Value = serde_json::from_str(&tampered.1).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(v["mu_minus"], 1);

    assert_eq!(call(&["divide-check", "--germ", &path("gl4.germ.json"), "--divide", &path("gl4.divide.json")]).0, 0);
    assert_eq!(call(&["invariants", "--germ", "/nonexistent/germ.json"]).0, 2);
    assert_eq!(call(&["invariants", "--germ", &path("gl4.divide.json")]).0, 2);
    assert_eq!(call(&["no-such-command"]).0, 2);
    assert_eq!(call(&["generate", "--kind", "grid", "--params", "3,6"]).0, 2);
    assert_eq!(call(&["generate", "--kind", "lines", "--params", "2,3"]).0, 2);
    let (code, _, err) =
        call(&["strata", "--germ", &path("gl4.germ.json"), "--divide", &path("gl4.divide.json"), "--n", "3", "--budget", "1"]);
    // inclusion-exclusion still applies on GL4, so a tiny budget is not fatal
    assert_eq!(code, 0, "{err}");
    assert_eq!(call(&["decompose", "--germ", &path("gl4.germ.json"), "--divide", &path("gl4.divide.json"), "--n", "1"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn generate_writes_loadable_files() {
    let dir = std::env::temp_dir().join(format!("acampo-cli-test-{}", std::process::id()));
    let (code, out, _) = call(&["generate", "--kind", "lines", "--params", "5", "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    let files: Vec<&str> = out.lines().collect();
    assert_eq!(files.len(), 2);
    let check = call(&["divide-check", "--germ", files[0], "--divide", files[1]]);
    assert_eq!(check.0, 0);
    let d = call(&["decompose", "--germ", files[0], "--divide", files[1], "--n", "2", "--format", "text"]);
    assert_eq!(d.0, 0);
    assert!(d.1.trim_end().ends_with("consistent"));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn both_heights_are_printed() {
    let (_, out, _) = call(&["decompose", "--germ", &path("node.germ.json"), "--divide", &path("node.divide.json"), "--n", "3", "--format", "text"]);
    assert!(out.contains("h = 1 (ordered sum 2)"));
}
