use delannoy_wasm_demo::{check_prime, constants, delannoy_terms};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).expect("valid json")
}

#[test]
fn constants_rows() {
    let rows = parse(constants(2));
    assert_eq!(rows.as_array().unwrap().len(), 3);
    assert_eq!(rows[1]["c"], "1/z");
    assert_eq!(rows[2]["rho"], "105");
    assert!(parse(constants(99))["error"].is_string());
}

#[test]
fn prime_check() {
    let report = parse(check_prime(3, 1, 1, 1));
    assert_eq!(report["status"], "verified");
    assert_eq!(report["lhs"], "2");
    let report = parse(check_prime(9, 1, 1, 1));
    assert_eq!(report["status"], "not-applicable");
    assert!(parse(check_prime(7, 1, 1, 3))["error"].is_string());
}

#[test]
fn terms() {
    let t = parse(delannoy_terms(5, "1", 1));
    assert_eq!(t, serde_json::json!(["1", "3", "13", "63", "321"]));
    let t = parse(delannoy_terms(3, "1/2", -1));
    assert_eq!(t, serde_json::json!(["1", "-2", "11/2"]));
    assert!(parse(delannoy_terms(3, "oops", 1))["error"].is_string());
}
