//! End-to-end tests of the tforge binary: flags, formats, exit codes,
//! and determinism of the emitted documents.

use std::process::{Command, Output};

fn tforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tforge"))
        .args(args)
        .output()
        .expect("tforge runs")
}

fn tforge_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tforge"))
        .args(args)
        .env(key, value)
        .output()
        .expect("tforge runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn triangle_stirling2_row_4() {
    let out = tforge(&["triangle", "--name", "stirling2", "--rows", "5", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().last().unwrap(), "0,1,7,6,1");
}

#[test]
fn triangle_inline_riordan_spec() {
    let out = tforge(&[
        "triangle",
        "--spec",
        "riordan: g=1/(1-x), f=x/(1-x)",
        "--rows",
        "4",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows, vec!["1", "1,1", "1,2,1", "1,3,3,1"]);
}

#[test]
fn family_constraint_violation_is_an_error() {
    let out = tforge(&["triangle", "--name", "S2[2,0]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("gcd"));
}

#[test]
fn catalog_lists_entries() {
    let out = tforge(&["catalog"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("stirling2"));
    assert!(text.contains("exp(s)-1"));

    let out = tforge(&["catalog", "--format", "json"]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(parsed.as_array().unwrap().len() >= 12);
}

#[test]
fn unknown_format_is_an_error() {
    let out = tforge(&["catalog", "--format", "xml"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown format"));
}

#[test]
fn diag_gf_stirling2_schema() {
    let out = tforge(&["diag-gf", "--name", "stirling2", "--dmax", "4", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 5);
    let numerators: Vec<Vec<&str>> = results
        .iter()
        .map(|r| {
            r["numerator"]
                .as_array()
                .unwrap()
                .iter()
                .map(|c| c.as_str().unwrap())
                .collect()
        })
        .collect();
    assert_eq!(
        numerators,
        vec![
            vec!["1"],
            vec!["0", "1"],
            vec!["0", "1", "2"],
            vec!["0", "1", "8", "6"],
            vec!["0", "1", "22", "58", "24"],
        ]
    );
    let powers: Vec<u64> =
        results.iter().map(|r| r["den_power"].as_u64().unwrap()).collect();
    assert_eq!(powers, vec![1, 3, 5, 7, 9]);
}

#[test]
fn diag_gf_narayana_normalization() {
    let out = tforge(&[
        "diag-gf",
        "--name",
        "A097805",
        "--dmax",
        "4",
        "--normalize",
        "narayana",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let numerators: Vec<Vec<&str>> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            r["numerator"]
                .as_array()
                .unwrap()
                .iter()
                .map(|c| c.as_str().unwrap())
                .collect()
        })
        .collect();
    assert_eq!(
        numerators,
        vec![
            vec!["1"],
            vec!["1"],
            vec!["1", "1"],
            vec!["1", "3", "1"],
            vec!["1", "6", "6", "1"],
        ]
    );
}

#[test]
fn diag_gf_factorial_mode() {
    let out = tforge(&[
        "diag-gf",
        "--name",
        "pascal",
        "--dmax",
        "3",
        "--mode",
        "eegf-factorial",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let expansion: Vec<&str> = v["results"].as_array().unwrap()[3]["expansion"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    // Independent oracle: coefficient m is (3+m)! binom(3+m, m) / m!.
    let factorial = |n: u64| (1..=n).product::<u64>();
    let binom = |n: u64, k: u64| {
        factorial(n) / (factorial(k) * factorial(n - k))
    };
    for (m, text) in expansion.iter().take(5).enumerate() {
        let m = m as u64;
        let want = factorial(3 + m) * binom(3 + m, m) / factorial(m);
        assert_eq!(*text, want.to_string(), "m = {m}");
    }
}

#[test]
fn verify_stirling2_passes_with_exit_zero() {
    let out = tforge(&[
        "verify",
        "--name",
        "stirling2",
        "--dmax",
        "2",
        "--mmax",
        "9",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], serde_json::json!(true));
    let matrix = v["sections"][0]["matrix"].as_array().unwrap();
    assert_eq!(matrix.len(), 3);
    assert!(matrix[2].as_array().unwrap().iter().all(|b| b.as_bool().unwrap()));
}

#[test]
fn verify_all_catalog_entries() {
    let out = tforge(&["verify", "--name", "all", "--dmax", "2", "--mmax", "6"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    // One report per catalog entry, in catalog order.
    let text = stdout(&out);
    assert!(text.contains("verify stirling2"));
    assert!(text.contains("verify A135278"));
}

#[test]
fn verify_unknown_name_fails() {
    let out = tforge(&["verify", "--name", "nosuch"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("available"));
}

#[test]
fn verify_reports_known_misprints() {
    let out = tforge(&["verify", "--name", "charlier", "--dmax", "4", "--mmax", "8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("known misprint"), "got: {text}");
    assert!(text.contains("d=3"));
}

#[test]
fn output_is_deterministic() {
    let args = ["diag-gf", "--name", "S2[2,1]", "--dmax", "3", "--format", "json"];
    let a = tforge(&args);
    let b = tforge(&args);
    assert_eq!(a.stdout, b.stdout);

    // JSON round-trip is byte-identical.
    let text = stdout(&a);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(format!("{}\n", serde_json::to_string(&v).unwrap()), text);
}

#[test]
fn truncation_order_env_override() {
    let args = ["diag-gf", "--name", "stirling2", "--dmax", "4", "--format", "json"];
    let default_run = tforge(&args);
    let overridden = tforge_env(&args, "TFORGE_ORDER", "9");
    // Coefficients are exact at any sufficient order, so the documents agree.
    assert_eq!(default_run.stdout, overridden.stdout);

    let bad = tforge_env(&args, "TFORGE_ORDER", "many");
    assert_eq!(bad.status.code(), Some(2));
}
