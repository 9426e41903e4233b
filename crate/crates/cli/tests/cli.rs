use std::process::{Command, Output};

use delannoy_core::verify::{CongruenceReport, Status};

fn delannoy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_delannoy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn last_line(out: &Output) -> String {
    stdout(out).lines().last().unwrap_or_default().to_string()
}

#[test]
fn seq_delannoy_numbers() {
    let out = delannoy(&["seq", "delannoy", "--n", "0..4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1 3 13 63 321");
}

#[test]
fn seq_other_families() {
    let out = delannoy(&["seq", "schroder", "--n", "0..5"]);
    assert_eq!(stdout(&out).trim(), "1 2 6 22 90 394");
    let out = delannoy(&["seq", "trinomial", "--b", "1", "--c", "1", "--n", "0..4"]);
    assert_eq!(stdout(&out).trim(), "1 1 3 7 19");
    let out = delannoy(&["seq", "delannoy", "--n", "0..3", "--z", "1/2", "--eps", "-1"]);
    assert_eq!(stdout(&out).trim(), "1 -2 11/2 -17");
    let out = delannoy(&["seq", "trinomial", "--n", "0..3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn constants_json_has_rho() {
    let out = delannoy(&["constants", "--vmax", "2", "--format", "json"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rho: Vec<&str> = rows.as_array().unwrap().iter().map(|r| r["rho"].as_str().unwrap()).collect();
    assert_eq!(rho, ["1", "5", "105"]);
    assert_eq!(rows[2]["c"], "(4*z + 9)/z^2");
    assert_eq!(rows[2]["c_tilde"], "(-4*z + 5)/(z + 1)^2");
}

#[test]
fn constants_text_table() {
    let out = delannoy(&["constants", "--vmax", "1"]);
    let text = stdout(&out);
    assert!(text.lines().next().unwrap().starts_with("v  c_v"));
    assert!(text.contains("1/z") && text.contains("-1/(z + 1)"));
}

#[test]
fn op_inspect_reports_center() {
    let out = delannoy(&["op", "inspect", "--eps", "1", "--z", "z"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["gamma"], "-1/2");
    assert_eq!(report["degree"], 1);
    assert_eq!(report["nondegenerate"], true);
    let out = delannoy(&["op", "inspect", "--z", "0"]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["nondegenerate"], false);
}

#[test]
fn reduce_certificate() {
    let out = delannoy(&["reduce", "--m", "2", "--epsilon", "1"]);
    assert!(out.status.success());
    let cert: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert["identity_holds"], true);
    assert_eq!(cert["remainder"][0]["lambda"], "1/(4*z)");
}

#[test]
fn verify_theorem_1_3_counts() {
    let out = delannoy(&["verify", "--claim", "thm1.3", "--a", "1..10", "--v", "0..3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(last_line(&out), "verified=80 failed=0 na=0");
}

#[test]
fn perturbed_constant_fails_with_exit_one() {
    let out = delannoy(&[
        "verify", "--claim", "thm1.3", "--a", "1..6", "--v", "1", "--eps", "1", "--perturb-rho", "1:1:7",
        "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let failed: Vec<CongruenceReport> = text
        .lines()
        .filter(|l| l.starts_with('{'))
        .map(|l| serde_json::from_str(l).unwrap())
        .filter(|r: &CongruenceReport| r.status == Status::Failed)
        .collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|r| r.lhs.is_some() && r.rhs.is_some()));
}

#[test]
fn json_is_deterministic_and_round_trips() {
    let args = ["verify", "--claim", "thm1.1", "--n", "1..21", "--z", "-3..3", "--v", "0..2", "--format", "json"];
    let one = delannoy(&[&args[..], &["--jobs", "1"]].concat());
    let many = delannoy(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(one.stdout, many.stdout);
    for line in stdout(&one).lines().filter(|l| l.starts_with('{')) {
        let r: CongruenceReport = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), line);
    }
}

#[test]
fn csv_to_file() {
    let dir = std::env::temp_dir().join(format!("delannoy-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sun.csv");
    let out = delannoy(&[
        "verify", "--claim", "sun", "--p", "3..13", "--format", "csv", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(last_line(&out).starts_with("verified="));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next().unwrap(), "claim,params,status,lhs,rhs,modulus");
    assert!(text.lines().skip(1).all(|l| l.starts_with("sun,p=")));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exploratory_never_fails() {
    let out = delannoy(&["verify", "--exploratory", "--claim", "thm1.3", "--n", "1..9", "--v", "1", "--eps", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("differs"));
    assert!(last_line(&out).starts_with("observed=9"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--claim", "thm1.1", "--n", "9..1"][..],
        &["verify", "--claim", "nope"],
        &["verify"],
        &["seq", "delannoy", "--n", "x"],
        &["frobnicate"],
    ] {
        let out = delannoy(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn empty_prime_range_is_empty_success() {
    let out = delannoy(&["verify", "--claim", "thm1.2", "--p", "8,9,10"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(last_line(&out), "verified=0 failed=0 na=0");
}
