use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn primrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_primrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_wk4_json() {
    let out = primrep(&["analyze", "--gen", "wk", "--param", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let runs = v["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 6);
    let secondary: Vec<&Value> = runs.iter().filter(|r| r["class"] == "secondary").collect();
    assert_eq!(secondary.len(), 1);
    assert_eq!(secondary[0]["period"], 7);
    assert_eq!(secondary[0]["exponent"], "2/1");
    assert_eq!(secondary[0]["generator"]["alpha"], 3);
    assert_eq!(secondary[0]["generator"]["sigma"], 1);
    let left = secondary[0]["generator"]["left"].as_u64().unwrap() as usize;
    assert_eq!(runs[left]["start"], 1);
    assert_eq!(v["word_meta"]["length"], 16);
}

#[test]
fn analyze_square_free_word() {
    let out = primrep(&["analyze", "--word", "abc", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["runs"].as_array().unwrap().is_empty());
    for s in v["lambda_stats"].as_array().unwrap() {
        assert_eq!(s["rp_count"], 0);
        assert_eq!(s["exp_sum"], "0/1");
    }
}

#[test]
fn analyze_csv_rows() {
    let out = primrep(&["analyze", "--word", "01011010", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "start,end,period,exp_num,exp_den,class,gen_left,gen_right,alpha,sigma"
    );
    assert_eq!(lines.len(), 5);
    assert!(lines.contains(&"2,7,3,2,1,primary,,,,"));
}

#[test]
fn analyze_file_bytes_and_text_mode() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all("ééaéé".as_bytes()).unwrap();
    let path = f.path().to_str().unwrap();
    let bytes = primrep(&[
        "analyze", "--file", path, "--format", "json", "--lambda", "1",
    ]);
    let text = primrep(&[
        "analyze", "--file", path, "--text", "--format", "json", "--lambda", "1",
    ]);
    let vb: Value = serde_json::from_str(&stdout(&bytes)).unwrap();
    let vt: Value = serde_json::from_str(&stdout(&text)).unwrap();
    assert_eq!(vb["word_meta"]["length"], 9);
    assert_eq!(vt["word_meta"]["length"], 5);
    assert_eq!(vt["lambda_stats"].as_array().unwrap().len(), 1);
}

#[test]
fn analyze_with_checks() {
    let out = primrep(&[
        "analyze",
        "--gen",
        "fibonacci",
        "--param",
        "60",
        "--check",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() > 20);
    assert!(checks.iter().all(|c| c["passed"] == true));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(primrep(&["analyze"]).status.code(), Some(2));
    assert_eq!(
        primrep(&["analyze", "--word", "ab", "--factor", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        primrep(&["analyze", "--word", "ab", "--lambda", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        primrep(&["analyze", "--gen", "nope", "--param", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        primrep(&["analyze", "--gen", "wk", "--param", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        primrep(&["analyze", "--file", "/nonexistent/file"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        primrep(&["verify", "--exhaustive", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        primrep(&["verify", "--family", "wk:5..2"]).status.code(),
        Some(2)
    );
    assert_eq!(primrep(&["conjecture"]).status.code(), Some(2));
    assert_eq!(
        primrep(&["conjecture", "--factor-sweep", "2,3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        primrep(&["conjecture", "--maxruns", "2,4", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(primrep(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_corpora() {
    let out = primrep(&["verify", "--exhaustive", "2,12"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["summary"]["words"], 8191);
    assert_eq!(v["summary"]["failures"], 0);

    let out = primrep(&["verify", "--family", "wk:2..50", "--lambda-sweep"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let wk = v["summary"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check_id"] == "wk_structure")
        .unwrap();
    assert_eq!(wk["words"], 49);

    let out = primrep(&["verify", "--random", "5,40,3", "--all-outcomes"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(!v["outcomes"].as_array().unwrap().is_empty());
}

#[test]
fn verify_without_corpus_warns() {
    let out = primrep(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["summary"]["outcomes"], 0);
}

#[test]
fn conjecture_tables() {
    let out = primrep(&["conjecture", "--maxruns", "2,1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    assert_eq!(v["rows"][0]["mrn"], 0);

    let out = primrep(&["conjecture", "--maxruns", "2,16"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("conjecture status"));
    assert_eq!(
        text.lines()
            .filter(|l| l.trim_start().starts_with(char::is_numeric))
            .count(),
        16
    );

    let out = primrep(&[
        "conjecture",
        "--factor-sweep",
        "3,4,5",
        "--family",
        "wk:1..30",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["monotone"], true);
    let factors = v["factors"].as_array().unwrap();
    assert_eq!(factors.len(), 3);
    assert!(factors.iter().all(|f| f["bounds_hold"] == true));
}

#[test]
fn conjecture_maxruns_18() {
    let out = primrep(&["conjecture", "--maxruns", "2,18", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 18);
    assert!(rows
        .iter()
        .all(|r| r["argmax"].as_array().is_some_and(|a| !a.is_empty())));
}
