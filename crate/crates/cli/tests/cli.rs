use std::process::{Command, Output};

use serde_json::Value;

fn lplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lplab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = lplab(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

fn assert_envelope(v: &Value, command: &str) {
    for key in [
        "command",
        "inputs",
        "result",
        "error_bounds",
        "runtime_ms",
        "tool_version",
    ] {
        assert!(v.get(key).is_some(), "missing {key} in {v}");
    }
    assert_eq!(v["command"], command);
}

#[test]
fn eval_example() {
    let v = json(&[
        "eval", "--family", "eulerF", "--a", "4", "--z", "-5", "--tol", "1e-14", "--format", "json",
    ]);
    assert_envelope(&v, "eval");
    // Exact rational partial sum, 40 terms.
    assert!((f(&v["result"]["value"]) - 0.271_931_232_2).abs() < 1e-10);
    assert_eq!(f(&v["result"]["value_im"]), 0.0);
    let bound = f(&v["error_bounds"]["abs_error_bound"]);
    assert!(bound > 0.0 && bound < 1e-13);
    assert_eq!(f(&v["inputs"]["z"]["re"]), -5.0);
}

#[test]
fn complex_points_and_sections() {
    let v = json(&["section", "--family", "theta", "--a", "2", "--n", "2", "--z", "-1,-2"]);
    // 1 + z/2 + z²/16 at z = -1 - 2i.
    assert!((f(&v["result"]["value"]) - 0.3125).abs() < 1e-15);
    assert!((f(&v["result"]["value_im"]) + 0.75).abs() < 1e-15);
    assert_eq!(
        lplab(&["eval", "--family", "theta", "--a", "2", "--z", "1,2,3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn classify_examples() {
    let v = json(&["classify", "--a", "3.95", "--format", "json"]);
    assert_envelope(&v, "classify");
    assert_eq!(v["result"]["verdict"], "NotInLP");
    assert_eq!(v["result"]["criterion"], "sign_test_fa");
    assert!(v["result"]["witness_x"].is_number());
    assert_eq!(json(&["classify", "--a", "3.97"])["result"]["verdict"], "InLP");
    assert_eq!(json(&["classify", "--a", "5"])["result"]["verdict"], "InLP");
    assert_eq!(json(&["classify", "--a", "2"])["result"]["verdict"], "NotInLP");
}

#[test]
fn constants_examples() {
    let v = json(&["constants", "--name", "q_infinity", "--tol", "1e-6"]);
    let b = &v["result"]["bracket"];
    assert!(f(&b["lo"]) <= 3.233_636_66 + 1e-8 && 3.233_636_66 - 1e-8 <= f(&b["hi"]));
    assert!(f(&v["error_bounds"]["bracket_width"]) <= 1e-6);

    let v = json(&["constants", "--name", "c_n", "--n", "4"]);
    assert!(v["result"]["precise"]["value"]
        .as_str()
        .unwrap()
        .starts_with("3.2360679774997896964"));

    let v = json(&["constants", "--name", "critical_a", "--tol", "1e-5"]);
    assert_eq!(v["result"]["estimate"]["rigorous"], false);
    assert!((f(&v["result"]["midpoint"]) - 3.964_228).abs() < 1e-5);
}

#[test]
fn zeros_at_rho() {
    let v = json(&["zeros", "--a", "4", "--radius", "rho:3"]);
    assert_eq!(v["result"]["count"], 3);
    assert_eq!(v["result"]["certified"], true);
    assert!((f(&v["result"]["radius_u"]) - 25.8496).abs() < 1e-3);
    assert!((f(&v["result"]["radius_z"]) - 5.0 * f(&v["result"]["radius_u"])).abs() < 1e-9);
    assert_eq!(json(&["zeros", "--a", "4", "--radius", "1"])["result"]["count"], 0);
}

#[test]
fn quotients_match_closed_form() {
    let v = json(&["quotients", "--family", "eulerF", "--a", "4", "--n-max", "6"]);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(f(&rows[0]["p_n"]), 5.0);
    assert!(rows[0]["q_n"].is_null());
    for n in 2..=6 {
        let x = 4f64.powi(n as i32 - 1);
        // q_n = p_n / p_(n-1) = (4^n + 1) / (4^(n-1) + 1).
        let exact = (4.0 * x + 1.0) / (x + 1.0);
        assert!((f(&rows[n - 1]["q_n"]) - exact).abs() <= 4.0 * f64::EPSILON * exact);
    }
    assert_eq!(v["result"]["monotonicity"], "Increasing");
    assert_eq!(f(&v["result"]["limit"]), 4.0);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["eval", "--family", "sine", "--a", "4", "--z", "1"],
        &["eval", "--family", "eulerF", "--a", "4", "--z", "1", "--tol", "0"],
        &["eval", "--family", "eulerF", "--a", "4", "--z", "1", "--tol", "-1e-3"],
        &["eval", "--family", "eulerF", "--a", "4", "--z", "1", "--format", "csv"],
        &["classify", "--a", "4", "--format", "csv"],
        &["sign-test", "--family", "eulerF", "--a", "4", "--n", "6"],
        &["sign-test", "--family", "eulerH", "--a", "4"],
        &["constants", "--name", "c_n"],
        &["constants", "--name", "q_infinity", "--n", "3"],
        &["verify", "--lemma", "5"],
        &["verify", "--lemma", "4algebra", "--a-grid", "3:4:5"],
        &["verify", "--lemma", "2", "--a-grid", "4:3:5"],
        &["zeros", "--a", "4", "--radius", "rho:x"],
        &["zeros", "--a", "4", "--radius", "-2"],
    ] {
        let out = lplab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn computation_errors_exit_1_with_json() {
    for (args, kind) in [
        (&["eval", "--family", "eulerF", "--a", "0.5", "--z", "1"][..], "domain"),
        (
            &["eval", "--family", "theta", "--a", "1.000000000001", "--z", "0.999999"],
            "truncation",
        ),
        (
            &["constants", "--name", "q_infinity", "--tol", "1e-12"],
            "invalid_tolerance",
        ),
        (
            &["scan-conjecture", "--a-lo", "3.9", "--a-hi", "4", "--steps", "5"],
            "domain",
        ),
    ] {
        let out = lplab(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_envelope(&v, args[0]);
        assert_eq!(v["error"]["kind"], kind, "{args:?}");
        assert!(v["error"]["message"].as_str().is_some_and(|m| !m.is_empty()));
        assert!(v["result"].is_null());
    }
}

#[test]
fn csv_tables() {
    let out = lplab(&[
        "scan-conjecture",
        "--a-lo",
        "3.9",
        "--a-hi",
        "4",
        "--steps",
        "11",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(r.headers().unwrap(), vec!["a", "min_value", "verdict"]);
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 11);
    assert_eq!(&rows[0][2], "NotInLP");
    assert_eq!(&rows[10][2], "InLP");

    let out = lplab(&["constants", "--name", "thresholds", "--format", "csv"]);
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    let names: Vec<String> = r.records().map(|x| x.unwrap()[0].to_string()).collect();
    assert!(names.contains(&"octic".to_string()) && names.contains(&"degree20".to_string()));

    let out = lplab(&["verify", "--lemma", "2", "--format", "csv"]);
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(r.headers().unwrap().len(), 7);
    assert!(r.records().map(Result::unwrap).all(|x| &x[6] == "true"));

    let out = lplab(&[
        "quotients",
        "--family",
        "theta",
        "--a",
        "2",
        "--n-max",
        "4",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn verify_suites_pass_on_default_grids() {
    for lemma in ["2", "rouche", "3", "6", "positivity", "4algebra"] {
        let v = json(&["verify", "--lemma", lemma]);
        assert_eq!(v["result"]["passed"], true, "lemma {lemma}");
        assert!(f(&v["result"]["worst_margin"]) >= 0.0);
        assert!(v["error_bounds"]["max_error_bound"].is_number());
    }
    let v = json(&["verify", "--lemma", "3", "--a-grid", "3.6:4:3"]);
    assert_eq!(v["inputs"]["a_grid"]["steps"], 3);
}

#[test]
fn deterministic_apart_from_runtime() {
    let strip = |out: Output| {
        let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v.as_object_mut().unwrap().remove("runtime_ms");
        serde_json::to_vec(&v).unwrap()
    };
    for args in [
        &["verify", "--lemma", "4algebra", "--seed", "11"][..],
        &["classify", "--a", "3.9"],
        &["zeros", "--a", "4.3", "--radius", "rho:5"],
    ] {
        let (x, y) = (lplab(args), lplab(args));
        let (sx, sy) = (
            String::from_utf8_lossy(&x.stdout).to_string(),
            String::from_utf8_lossy(&y.stdout).to_string(),
        );
        let without_runtime = |s: &str| {
            s.lines()
                .filter(|l| !l.contains("\"runtime_ms\""))
                .collect::<Vec<_>>()
                .join("\n")
        };
        assert_eq!(without_runtime(&sx), without_runtime(&sy), "{args:?}");
        assert_eq!(strip(x), strip(y));
    }
    let a = strip(lplab(&["verify", "--lemma", "4algebra", "--seed", "1"]));
    let b = strip(lplab(&["verify", "--lemma", "4algebra", "--seed", "2"]));
    assert_ne!(a, b);
}

#[test]
fn out_file_and_text_format() {
    let path = std::env::temp_dir().join(format!("lplab-cli-test-{}.json", std::process::id()));
    let out = lplab(&["classify", "--a", "4.5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["verdict"], "InLP");
    std::fs::remove_file(&path).ok();

    let out = lplab(&[
        "scan-conjecture",
        "--a-lo",
        "3.9",
        "--a-hi",
        "4",
        "--steps",
        "10",
        "--format",
        "text",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("scan-conjecture"));
    assert!(text.contains("transitions: 1"));
    assert_eq!(text.lines().filter(|l| l.contains("InLP")).count(), 10);
}
