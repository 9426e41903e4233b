//! Browser bindings. Every export returns a JSON string; failures come back
//! as `{"error": "..."}` so the page never has to catch exceptions.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use delannoy_core::arith::parse_rational;
use delannoy_core::reduction::ConstantTable;
use delannoy_core::sequences::{signed_delannoy, Sign};
use delannoy_core::verify::{verify_theorem_1_2, VerifyContext};

// keeps the page responsive; tables beyond this take seconds to build
const MAX_VMAX: u32 = 12;
const MAX_TERMS: u32 = 400;
const MAX_PRIME: u32 = 100_000;

fn to_json(value: &impl Serialize) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

fn wrap(result: Result<String, String>) -> String {
    result.unwrap_or_else(|e| serde_json::json!({ "error": e }).to_string())
}

fn sign_of(eps: i32) -> Result<Sign, String> {
    Sign::try_from(eps as i64).map_err(|e| e.to_string())
}

pub fn constants_json(vmax: u32) -> Result<String, String> {
    if vmax > MAX_VMAX {
        return Err(format!("vmax is capped at {MAX_VMAX}"));
    }
    let table = ConstantTable::shared(vmax as usize).map_err(|e| e.to_string())?;
    let rows: Vec<_> = table.rows().into_iter().take(vmax as usize + 1).collect();
    to_json(&rows)
}

pub fn check_prime_json(p: u32, z: i32, v: u32, eps: i32) -> Result<String, String> {
    if p > MAX_PRIME {
        return Err(format!("p is capped at {MAX_PRIME}"));
    }
    if v > MAX_VMAX {
        return Err(format!("v is capped at {MAX_VMAX}"));
    }
    let ctx = VerifyContext::new(v as usize).map_err(|e| e.to_string())?;
    let report = verify_theorem_1_2(&ctx, p as u64, z as i64, v, sign_of(eps)?).map_err(|e| e.to_string())?;
    to_json(&report)
}

pub fn terms_json(count: u32, z: &str, eps: i32) -> Result<String, String> {
    if count > MAX_TERMS {
        return Err(format!("at most {MAX_TERMS} terms"));
    }
    let z = parse_rational(z).ok_or_else(|| format!("cannot parse z = `{z}`"))?;
    let terms: Vec<String> = signed_delannoy(&z, sign_of(eps)?)
        .take(count as usize)
        .map(|t| t.to_string())
        .collect();
    to_json(&terms)
}

/// Rows `{v, c, c_tilde, rho, rho_tilde}` for `v = 0..=vmax`.
#[wasm_bindgen]
pub fn constants(vmax: u32) -> String {
    wrap(constants_json(vmax))
}

/// One prime-modulus check of an even-power weighted sum.
#[wasm_bindgen]
pub fn check_prime(p: u32, z: i32, v: u32, eps: i32) -> String {
    wrap(check_prime_json(p, z, v, eps))
}

/// The first `count` values of `ε^k D_k(z)`.
#[wasm_bindgen]
pub fn delannoy_terms(count: u32, z: &str, eps: i32) -> String {
    wrap(terms_json(count, z, eps))
}
