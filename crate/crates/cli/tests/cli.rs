use std::process::Command;

use serde_json::Value;

fn charp(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_charp")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into(), String::from_utf8_lossy(&out.stderr).into())
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (code, out, err) = charp(&a);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).expect("json report")
}

#[test]
fn desing_p5_n2() {
    let r = json(&["desing", "--p", "5", "--n", "2"]);
    assert_eq!(r["format"], "charp-report/1");
    assert_eq!(r["outputs"]["steps"], 2);
    assert!(r["assertions"].as_array().unwrap().iter().all(|a| a["passed"] == true));
}

#[test]
fn northcott_example1_q3() {
    let r = json(&["northcott-demo", "--example", "1", "--n", "2", "--p", "3"]);
    assert_eq!(r["outputs"]["points"], 13);
    assert_eq!(r["outputs"]["max_height"], "0");
}

#[test]
fn vojta_demo_table() {
    let r = json(&["vojta-demo", "--p", "3", "--d", "1", "--n", "5", "--max-degree", "10"]);
    let d = r["outputs"]["discriminants"].as_array().unwrap();
    assert_eq!(d.len(), 10);
    assert!(d.iter().all(|x| x == "-2"));
    let h: Vec<i64> = r["outputs"]["heights"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    assert!(h.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(r["outputs"]["violations"].as_array().unwrap().len(), 6);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["run", "genericity", "--seed", "11", "--format", "json"];
    let (_, a, _) = charp(&args);
    let (_, b, _) = charp(&args);
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn unknown_scenario_and_bad_params() {
    let (code, _, err) = charp(&["run", "no-such-scenario"]);
    assert_eq!(code, 2);
    assert!(err.contains("known scenarios"));
    let (code, _, _) = charp(&["desing", "--p", "4"]);
    assert_eq!(code, 2);
}

#[test]
fn failing_assertion_sets_exit_code() {
    // the Klein cubic over F3 has a degenerate singular point
    let (code, out, _) = charp(&["cover", "--input", "x1^2*x2 + x2^2*x3 + x3^2*x1"]);
    assert_eq!(code, 1);
    assert!(out.contains("[FAIL] singular points are nondegenerate"));
}

#[test]
fn saved_report_verifies() {
    let path = std::env::temp_dir().join(format!("charp-report-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, _, err) = charp(&["adjunction", "--format", "json", "--out", p]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = charp(&["verify", p]);
    assert_eq!(code, 0);
    assert!(out.contains("reproduced"));
    let tampered = std::fs::read_to_string(&path).unwrap().replace("17", "13");
    std::fs::write(&path, tampered).unwrap();
    let (code, _, _) = charp(&["verify", p]);
    assert_eq!(code, 1);
    let _ = std::fs::remove_file(&path);
}

#[test]
fn all_scenarios_pass_in_parallel() {
    let (code, out, err) = charp(&["all", "--jobs", "4"]);
    assert_eq!(code, 0, "{out}{err}");
    assert!(!out.contains("FAIL"));
}
