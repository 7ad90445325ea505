use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hodge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn schema(name: &str) -> jsonschema::Validator {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "schemas", &format!("{name}.json")]
        .iter()
        .collect();
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    jsonschema::validator_for(&raw).expect("schema compiles")
}

/// Run with `--format json`, check exit code 0 and schema validity.
fn json_report(name: &str, args: &[&str]) -> Value {
    let mut all = vec![args[0], "--format", "json"];
    all.extend_from_slice(&args[1..]);
    let out = hodge(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let validator = schema(name);
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
    v
}

#[test]
fn roots_text_reports() {
    assert!(stdout(&hodge(&["roots", "E8"])).contains("positive roots: 120\n"));
    assert!(stdout(&hodge(&["roots", "A1"])).contains("positive roots: 1\n"));
    let g2 = stdout(&hodge(&["roots", "--matrix", "[[2,-3],[-1,2]]"]));
    assert!(g2.contains("positive roots: 6\n"));
    assert!(g2.contains("highest root: (3,2)\n"));
}

#[test]
fn roots_json_matches_schema() {
    let v = json_report("roots", &["roots", "F4"]);
    assert_eq!(v["positive_root_count"], 24);
    assert_eq!(v["highest_root"], serde_json::json!([2, 3, 4, 2]));
    json_report("roots", &["roots", "--matrix", "[[2,-1],[-1,2]]"]);
}

#[test]
fn grade_examples() {
    let a3 = stdout(&hodge(&["grade", "A3", "1,1,1"]));
    assert!(a3.contains("level = 3\n"));
    assert!(a3.contains("classical: false\n"));
    assert!(a3.contains("g^1 generates g^+: true\n"));
    assert!(stdout(&hodge(&["grade", "A2", "0,0"])).contains("level = 0\n"));
    assert!(stdout(&hodge(&["grade", "G2", "1,1"])).contains("level = 5\n"));
    let v = json_report("grade", &["grade", "B3", "[1,0,2]"]);
    assert_eq!(v["generated_in_degree_one"], false);
}

#[test]
fn verify_small_grids() {
    let out = hodge(&["verify", "--max-rank", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("all verdicts hold; 0 counterexamples"));
    let vacuous = stdout(&hodge(&["verify", "--types", "A", "--max-rank", "1"]));
    assert!(vacuous.contains("closure checks are vacuous"));
    let v = json_report("verify", &["verify", "--max-rank", "3", "--types", "A,B,C"]);
    assert_eq!(v["verdict"], "holds");
    assert_eq!(v["counterexamples"], 0);
}

#[test]
fn hypersurface_examples() {
    let q = stdout(&hodge(&["hypersurface", "3", "5"]));
    assert!(q.contains("primitive Hodge numbers: (1,101,101,1)\n"));
    assert!(q.contains("coupling length: 3\n"));
    assert!(q.contains("certificate g^-3,3 nonzero: true\n"));
    let k3 = stdout(&hodge(&["hypersurface", "2", "4"]));
    assert!(k3.contains("primitive Hodge numbers: (1,19,1)\n"));
    assert!(k3.contains("coupling length: 2\n"));
    assert!(k3.contains("certificate g^-3,3 nonzero: false\n"));
    let e = stdout(&hodge(&["hypersurface", "1", "3"]));
    assert!(e.contains("primitive Hodge numbers: (1,1)\n"));
    assert!(e.contains("coupling length: 1\n"));
    let v = json_report("hypersurface", &["hypersurface", "2", "5"]);
    assert_eq!(v["hodge_numbers_prim"], serde_json::json!([4, 44, 4]));
    assert_eq!(v["macaulay"]["verdict"], "holds");
}

#[test]
fn explicit_hypersurfaces() {
    let path = data("quartic_deformed.json");
    let v = json_report("hypersurface", &["hypersurface", "2", "4", "--explicit", &path]);
    assert_eq!(v["form"], "explicit");
    assert_eq!(v["hodge_numbers_prim"], serde_json::json!([1, 19, 1]));
    let singular = hodge(&["hypersurface", "1", "3", "--explicit", &data("singular_cubic.json")]);
    assert_eq!(singular.status.code(), Some(2));
    let wrong_degree = hodge(&[
        "hypersurface",
        "1",
        "3",
        "--explicit",
        r#"[{"exponents":[2,0,0],"coeff":"1"}]"#,
    ]);
    assert_eq!(wrong_degree.status.code(), Some(2));
}

#[test]
fn atypicality_examples() {
    let input = r#"{"dim_g_minus":{"1":3,"2":1},"dim_h_minus":{"1":2,"2":1},"dim_T0P":2,"dim_T0PH":2}"#;
    let v = json_report("atypical", &["atypical", input]);
    assert_eq!(v["expected_codim"], 3);
    assert_eq!(v["actual_codim"], 2);
    assert_eq!(v["atypical"], true);
    let forced = r#"{"dim_g_minus":{"1":2,"2":2},"dim_h_minus":{"1":1,"2":1},"dim_T0P":1,"dim_T0PH":0}"#;
    let v = json_report("atypical", &["atypical", forced]);
    assert_eq!(v["forcing"]["violates_forcing"], true);
    assert_eq!(v["atypical"], true);
    let classical = r#"{"dim_g_minus":{"1":3},"dim_h_minus":{"1":3},"dim_T0P":2,"dim_T0PH":2}"#;
    let text = stdout(&hodge(&["atypical", classical]));
    assert!(text.contains("classical case"));
    assert!(text.contains("verdict: typical"));
    let bad = hodge(&["atypical", r#"{"dim_g_minus":{"1":1},"dim_h_minus":{"1":2},"dim_T0P":0,"dim_T0PH":0}"#]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn nl_and_correction() {
    let v = json_report("nl", &["nl", r#"{"hodge_numbers":[1,30,1],"weight":4,"dim_sigma":5}"#]);
    assert_eq!(v["naive_upper"], 30);
    assert_eq!(v["refined_upper"], 25);
    let v = json_report("nl", &["nl", r#"{"hodge_numbers":[4,44,4],"weight":2,"degree_d":5}"#]);
    assert_eq!(v["naive_upper"], 4);
    assert_eq!(v["lower"], 2);
    assert_eq!(hodge(&["nl", r#"{"hodge_numbers":[1],"weight":3}"#]).status.code(), Some(2));
    let v = json_report("correction", &["correction", "30", "25"]);
    assert_eq!(v["correction"], 5);
    assert_eq!(hodge(&["correction", "2", "3"]).status.code(), Some(2));
}

#[test]
fn exit_codes_for_bad_input_and_budget() {
    assert_eq!(hodge(&["roots", "X9"]).status.code(), Some(2));
    assert_eq!(hodge(&["roots", "--matrix", "[[2,1],[1,2]]"]).status.code(), Some(2));
    assert_eq!(hodge(&["grade", "A2", "1,-1"]).status.code(), Some(2));
    assert_eq!(hodge(&["atypical", "/nonexistent/input.json"]).status.code(), Some(2));
    assert_eq!(hodge(&["roots", "E8", "--budget", "50"]).status.code(), Some(3));
}

#[test]
fn output_is_deterministic_and_out_flag_writes_file() {
    let a = hodge(&["verify", "--max-rank", "3", "--format", "json"]);
    let b = hodge(&["verify", "--max-rank", "3", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let path = std::env::temp_dir().join(format!("hodge-cli-test-{}.txt", std::process::id()));
    let out = hodge(&["roots", "E6", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, stdout(&hodge(&["roots", "E6"])));
}

#[test]
fn schema_subcommand_prints_shipped_schemas() {
    for name in ["roots", "grade", "verify", "hypersurface", "atypical", "nl", "correction"] {
        let out = hodge(&["schema", name, "--format", "json"]);
        let printed: Value = serde_json::from_slice(&out.stdout).unwrap();
        jsonschema::validator_for(&printed).expect("printed schema compiles");
    }
}
