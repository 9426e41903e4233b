use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::report::{ClaimId, CongruenceReport, Params};
use crate::arith::{is_prime, legendre, mod_normalize, mod_pow};
use crate::error::{Error, Result};
use crate::reduction::ConstantTable;
use crate::sequences::{schroder_number, DelannoyIter, Sign, TrinomialIter};

/// Whether the weight is `(2k+1)^{2v}` or `(2k+1)^{2v+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerParity {
    Even,
    Odd,
}

/// `sum_{k<n} ε^k (2k+1)^e D_k(z) mod modulus` with `e = 2v` or `2v+1`.
///
/// Streams `D_k(z)`; the result lies in `[0, modulus)`.
pub fn sum_weighted(
    n: u64,
    v: u32,
    sign: Sign,
    z: &BigInt,
    parity: PowerParity,
    modulus: &BigInt,
) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if modulus < &BigInt::one() {
        return Err(Error::InvalidArgument(format!("modulus {modulus} must be positive")));
    }
    let exp = BigInt::from(match parity {
        PowerParity::Even => 2 * v,
        PowerParity::Odd => 2 * v + 1,
    });
    let mut acc = BigInt::zero();
    for (k, d) in DelannoyIter::new(z).take(n as usize).enumerate() {
        let w = mod_pow(&BigInt::from(2 * k as u64 + 1), &exp, modulus)?;
        let term = w * (d % modulus);
        if sign.pow(k as u64) < 0 {
            acc -= term;
        } else {
            acc += term;
        }
        acc %= modulus;
    }
    Ok(mod_normalize(&acc, modulus))
}

fn eval_int_poly(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Shared, read-only state for a batch of checks.
#[derive(Debug, Clone)]
pub struct VerifyContext {
    table: Arc<ConstantTable>,
    rho_override: Option<(Sign, usize, BigInt)>,
}

impl VerifyContext {
    /// Context whose constant table covers `0..=v_max`.
    pub fn new(v_max: usize) -> Result<Self> {
        Ok(VerifyContext { table: ConstantTable::shared(v_max)?, rho_override: None })
    }

    /// Replaces one `ρ` constant. Exists so that tests can confirm a wrong
    /// constant is caught.
    pub fn with_rho_override(mut self, sign: Sign, v: usize, value: BigInt) -> Self {
        self.rho_override = Some((sign, v, value));
        self
    }

    pub fn table(&self) -> &ConstantTable {
        &self.table
    }

    fn check_v(&self, v: u32) -> Result<usize> {
        let v = v as usize;
        if v > self.table.v_max() {
            return Err(Error::InvalidArgument(format!(
                "v = {v} exceeds the constant table (v_max = {})",
                self.table.v_max()
            )));
        }
        Ok(v)
    }

    fn rho(&self, sign: Sign, v: usize) -> BigInt {
        if let Some((s, ov, value)) = &self.rho_override {
            if *s == sign && *ov == v {
                return value.clone();
            }
        }
        match sign {
            Sign::Plus => self.table.rho[v].clone(),
            Sign::Minus => self.table.rho_tilde[v].clone(),
        }
    }
}

fn base_params(z: i64, v: u32, sign: Sign) -> Params {
    Params { z: Some(z), v: Some(v), eps: Some(sign.as_i64() as i8), ..Params::default() }
}

/// The integer `z` (resp. `z+1`) whose powers clear the constant's
/// denominator, and which must be coprime to the modulus.
fn pivot(z: i64, sign: Sign) -> BigInt {
    match sign {
        Sign::Plus => BigInt::from(z),
        Sign::Minus => BigInt::from(z) + 1,
    }
}

/// `pivot^v · sum ε^k (2k+1)^{2v} D_k(z)` against `pivot^v c_v(z) · sum ε^k D_k(z)`
/// modulo `n`, where `c_v` stands for `c̃_v` when `ε = -1`.
pub fn verify_theorem_1_1(ctx: &VerifyContext, n: u64, z: i64, v: u32, sign: Sign) -> Result<CongruenceReport> {
    let params = Params { n: Some(n), ..base_params(z, v, sign) };
    let claim = ClaimId::EvenPowerModN;
    let v_idx = ctx.check_v(v)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let piv = pivot(z, sign);
    let modulus = BigInt::from(n);
    if z == 0 || z == -1 || !modulus.gcd(&(&piv * 2)).is_one() {
        return Ok(CongruenceReport::not_applicable(claim, params));
    }
    let zb = BigInt::from(z);
    let weighted = sum_weighted(n, v, sign, &zb, PowerParity::Even, &modulus)?;
    let plain = sum_weighted(n, 0, sign, &zb, PowerParity::Even, &modulus)?;
    let scale = mod_pow(&piv, &BigInt::from(v), &modulus)?;
    let lhs = mod_normalize(&(scale * weighted), &modulus);
    let cleared = eval_int_poly(ctx.table.cleared(sign, v_idx), &zb);
    let rhs = mod_normalize(&(cleared * plain), &modulus);
    Ok(CongruenceReport::compare(claim, params, lhs, rhs, modulus))
}

/// Same as [`verify_theorem_1_1`] with `n = p` prime and the plain sum
/// replaced by `(-z/p)` (resp. `((z+1)/p)`).
pub fn verify_theorem_1_2(ctx: &VerifyContext, p: u64, z: i64, v: u32, sign: Sign) -> Result<CongruenceReport> {
    let params = Params { p: Some(p), ..base_params(z, v, sign) };
    let claim = ClaimId::EvenPowerModP;
    let v_idx = ctx.check_v(v)?;
    let modulus = BigInt::from(p);
    let piv = pivot(z, sign);
    if p < 3 || !is_prime(&modulus) || z == 0 || z == -1 || !modulus.gcd(&piv).is_one() {
        return Ok(CongruenceReport::not_applicable(claim, params));
    }
    let zb = BigInt::from(z);
    let weighted = sum_weighted(p, v, sign, &zb, PowerParity::Even, &modulus)?;
    let scale = mod_pow(&piv, &BigInt::from(v), &modulus)?;
    let lhs = mod_normalize(&(scale * weighted), &modulus);
    let symbol_arg = match sign {
        Sign::Plus => -zb.clone(),
        Sign::Minus => piv.clone(),
    };
    let symbol = legendre(&symbol_arg, &modulus)?;
    let cleared = eval_int_poly(ctx.table.cleared(sign, v_idx), &zb);
    let rhs = mod_normalize(&(cleared * symbol), &modulus);
    Ok(CongruenceReport::compare(claim, params, lhs, rhs, modulus))
}

/// `sum ε^k (2k+1)^{2v+1} D_k` against `ρ_v n` (resp. `ρ̃_v n^2`) modulo
/// `n^3`, `n = 2^a`.
pub fn verify_theorem_1_3(ctx: &VerifyContext, a: u32, v: u32, sign: Sign) -> Result<CongruenceReport> {
    let params = Params { a: Some(a), v: Some(v), eps: Some(sign.as_i64() as i8), ..Params::default() };
    let claim = ClaimId::OddPowerSuper;
    let v_idx = ctx.check_v(v)?;
    if a == 0 {
        return Ok(CongruenceReport::not_applicable(claim, params));
    }
    let n = BigInt::one() << a;
    let (lhs, rhs, modulus) = odd_power_residues(ctx, &n, v_idx, sign)?;
    Ok(CongruenceReport::compare(claim, params, lhs, rhs, modulus))
}

fn odd_power_residues(ctx: &VerifyContext, n: &BigInt, v: usize, sign: Sign) -> Result<(BigInt, BigInt, BigInt)> {
    let modulus = n.pow(3);
    let n_u64 = u64::try_from(n).map_err(|_| Error::InvalidArgument(format!("n = {n} too large")))?;
    let lhs = sum_weighted(n_u64, v as u32, sign, &BigInt::one(), PowerParity::Odd, &modulus)?;
    let rhs = match sign {
        Sign::Plus => ctx.rho(sign, v) * n,
        Sign::Minus => ctx.rho(sign, v) * n * n,
    };
    Ok((lhs, mod_normalize(&rhs, &modulus), modulus))
}

/// Residues of the odd-power sum for an arbitrary `n`, with no verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    pub n: u64,
    pub v: u32,
    pub eps: i8,
    pub lhs: String,
    pub rhs: String,
    pub modulus: String,
    pub agrees: bool,
}

/// Evaluates the odd-power congruence shape at any `n`. The statement is
/// only claimed for powers of two, so the result is informational.
pub fn observe_theorem_1_3(ctx: &VerifyContext, n: u64, v: u32, sign: Sign) -> Result<Observation> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let v_idx = ctx.check_v(v)?;
    let (lhs, rhs, modulus) = odd_power_residues(ctx, &BigInt::from(n), v_idx, sign)?;
    Ok(Observation {
        n,
        v,
        eps: sign.as_i64() as i8,
        agrees: lhs == rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        modulus: modulus.to_string(),
    })
}

/// The five statements about `D_{2^a}`, `D_{2^a±1}` and `S_{2^a}`.
pub fn verify_power2_lemmas(a: u32) -> Vec<CongruenceReport> {
    let params = Params { a: Some(a), ..Params::default() };
    if a < 2 {
        return ClaimId::POW2
            .iter()
            .map(|c| CongruenceReport::not_applicable(*c, params.clone()))
            .collect();
    }
    let n = 1usize << a;
    let mut it = DelannoyIter::new(&BigInt::one()).skip(n - 1);
    let d_minus = it.next().expect("infinite");
    let d_mid = it.next().expect("infinite");
    let d_plus = it.next().expect("infinite");
    let s_mid = schroder_number(n as u64);

    let four = BigInt::one() << (2 * a + 2);
    let two = BigInt::one() << (2 * a + 1);
    let pow = |e: u32| BigInt::one() << e;
    let check = |claim, value: &BigInt, target: BigInt, modulus: &BigInt| {
        CongruenceReport::compare(
            claim,
            params.clone(),
            mod_normalize(value, modulus),
            mod_normalize(&target, modulus),
            modulus.clone(),
        )
    };
    let identity_rhs = &d_plus - (pow(a + 1) + 1) * 2 * &s_mid;
    vec![
        check(ClaimId::DelannoyPow2, &d_mid, BigInt::one(), &four),
        check(ClaimId::SchroderPow2, &s_mid, 2 - pow(a + 1), &two),
        check(ClaimId::DelannoyPow2Plus1, &d_plus, 3 + pow(a + 2), &four),
        check(ClaimId::DelannoyPow2Minus1, &d_minus, -BigInt::one(), &four),
        CongruenceReport::compare(ClaimId::Pow2Identity, params.clone(), d_minus, identity_rhs, BigInt::zero()),
    ]
}

/// `sum_{k<p} T_k(b,c) m^{-k}` against `((m-b)^2 - 4c / p)` modulo `p`.
///
/// Fails with an error when `p | m`, since `m^{-1}` does not exist.
pub fn verify_sun_trinomial(p: u64, b: i64, c: i64, m: i64) -> Result<CongruenceReport> {
    let params = Params { p: Some(p), b: Some(b), c: Some(c), m: Some(m), ..Params::default() };
    let claim = ClaimId::TrinomialSum;
    let modulus = BigInt::from(p);
    if p < 3 || !is_prime(&modulus) {
        return Ok(CongruenceReport::not_applicable(claim, params));
    }
    let m_res = mod_normalize(&BigInt::from(m), &modulus);
    if m_res.is_zero() {
        return Err(Error::InvalidArgument(format!("m = {m} is divisible by p = {p}")));
    }
    let m_inv = mod_pow(&m_res, &(&modulus - 2u32), &modulus)?;
    let mut weight = BigInt::one();
    let mut acc = BigInt::zero();
    for t in TrinomialIter::new(&BigInt::from(b), &BigInt::from(c)).take(p as usize) {
        acc = (acc + t * &weight) % &modulus;
        weight = weight * &m_inv % &modulus;
    }
    let disc = BigInt::from(m - b).pow(2) - 4 * BigInt::from(c);
    let symbol = legendre(&disc, &modulus)?;
    Ok(CongruenceReport::compare(
        claim,
        params,
        mod_normalize(&acc, &modulus),
        mod_normalize(&BigInt::from(symbol), &modulus),
        modulus,
    ))
}
