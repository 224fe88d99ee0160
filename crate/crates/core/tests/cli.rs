use std::process::Command;

use serde_json::Value;

const SAMPLE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tables/sample.cls");
const REDUCED: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tables/reduced.cls");
const SCHEMA: &str = include_str!("../schema/report.schema.json");

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["nomsub".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = nomsub::cli::run_with(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn sample(args: &[&str]) -> (i32, String, String) {
    let mut all = vec!["--table", SAMPLE];
    all.extend_from_slice(args);
    run(&all)
}

#[test]
fn binary_delegates_to_the_library() {
    let out = Command::new(env!("CARGO_BIN_EXE_nomsub"))
        .args(["--table", SAMPLE, "subtype", "LinkedList<String>", "List<?>"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "true\n");

    let out = Command::new(env!("CARGO_BIN_EXE_nomsub")).args(["nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn every_subcommand_succeeds_on_the_sample() {
    for args in [
        vec!["check"],
        vec!["universe"],
        vec!["build"],
        vec!["build", "--export", "dot"],
        vec!["build", "--export", "json"],
        vec!["galois"],
        vec!["closures"],
        vec!["fsub", "Enum"],
        vec!["fsup", "List"],
        vec!["maxima", "Enum"],
        vec!["minima", "List"],
        vec!["validity", "--mode", "ind"],
        vec!["validity", "--mode", "coind"],
        vec!["report"],
    ] {
        let (code, out, err) = sample(&args);
        assert_eq!(code, 0, "{args:?}: {err}");
        assert!(!out.is_empty(), "{args:?}");
    }
}

#[test]
fn json_outputs_parse() {
    for args in [
        vec!["--format", "json", "check"],
        vec!["--format", "json", "universe"],
        vec!["--format", "json", "galois"],
        vec!["--format", "json", "closures"],
        vec!["--format", "json", "fsub", "Enum"],
        vec!["--format", "json", "maxima", "Enum"],
        vec!["--format", "json", "validity"],
        vec!["--format", "json", "subtype", "Weekday", "Enum<?>"],
        vec!["build", "--export", "json"],
    ] {
        let (code, out, _) = sample(&args);
        assert_eq!(code, 0, "{args:?}");
        serde_json::from_str::<Value>(&out).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}

#[test]
fn validity_json_is_keyed_by_class() {
    let (_, out, _) = sample(&["--format", "json", "validity"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let enums = &v["classes"]["Enum"];
    let has = |k: &str, t: &str| enums[k].as_array().unwrap().iter().any(|x| x == t);
    assert!(has("valid", "Enum<Weekday>"));
    assert!(has("invalid", "Enum<Object>"));
    assert!(has("invalid", "Enum<String>"));
}

#[test]
fn galois_on_reduced_depth_two() {
    let (code, out, _) = run(&["--table", REDUCED, "--depth", "2", "galois"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("0 violations / "));
}

#[test]
fn flags_change_the_construction() {
    let (_, with, _) = sample(&["--include-cofree", "build", "--export", "json"]);
    let (_, without, _) = sample(&["--no-cofree", "build", "--export", "json"]);
    assert_ne!(with, without);
    let (_, last_wins, _) = sample(&["--no-cofree", "--include-cofree", "build", "--export", "json"]);
    assert_eq!(last_wins, with);

    let (code, out, _) = sample(&["--quantify", "valid", "--format", "json", "galois"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["quantify"], "valid");
    let (_, all, _) = sample(&["--format", "json", "galois"]);
    let all: Value = serde_json::from_str(&all).unwrap();
    assert!(v["checked_pairs"].as_u64() < all["checked_pairs"].as_u64());
}

#[test]
fn depth_guard() {
    let (code, _, err) = sample(&["--depth", "4", "check"]);
    assert_eq!(code, 2);
    assert!(err.contains("--allow-deep"));
    assert_eq!(run(&["--table", "/nonexistent.cls", "check"]).0, 2);
}

#[test]
fn parse_errors_exit_2() {
    let dir = std::env::temp_dir().join(format!("nomsub-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.cls");
    std::fs::write(&bad, "class Object\nclass A extends B\n").unwrap();
    let (code, _, err) = run(&["--table", bad.to_str().unwrap(), "check"]);
    assert_eq!(code, 2);
    assert!(err.contains('B'), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [vec!["report"], vec!["build", "--export", "dot"], vec!["universe"]] {
        assert_eq!(sample(&args), sample(&args), "{args:?}");
    }
}

#[test]
fn report_validates_against_the_schema() {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for args in [
        vec!["--table", SAMPLE, "report"],
        vec!["--table", SAMPLE, "--no-cofree", "--quantify", "valid", "--mode", "coind", "report"],
        vec!["--table", REDUCED, "report"],
    ] {
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "{err}");
        let doc: Value = serde_json::from_str(&out).unwrap();
        let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:#?}");
    }
    // The schema is strict enough to reject a tampered document.
    let (_, out, _) = sample(&["report"]);
    let mut doc: Value = serde_json::from_str(&out).unwrap();
    doc["galois"]["violations"] = serde_json::json!([{"type": "A"}]);
    assert!(!validator.is_valid(&doc));
}
