//! Generators for the sequences whose weighted sums are studied: Delannoy
//! numbers and polynomials, generalized central trinomial coefficients,
//! Schmidt polynomials and large Schröder polynomials.
//!
//! Delannoy and trinomial values come from a three-term recurrence streamed
//! by an iterator that only keeps the last two terms; every family also has
//! an independent binomial-sum evaluator used as an oracle.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{Rational, Ring};
use crate::error::{Error, Result};

/// The sign `ε` in `F_k(z) = ε^k D_k(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `ε^k`.
    pub fn pow(self, k: u64) -> i64 {
        if self == Sign::Minus && k % 2 == 1 {
            -1
        } else {
            1
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.as_i64() as i8
    }
}

impl TryFrom<i8> for Sign {
    type Error = Error;
    fn try_from(v: i8) -> Result<Self> {
        Sign::try_from(v as i64)
    }
}

impl TryFrom<i64> for Sign {
    type Error = Error;
    fn try_from(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::InvalidArgument(format!("sign must be +1 or -1, got {v}"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i64())
    }
}

/// Streams `D_0(z), D_1(z), ...` over any coefficient ring.
///
/// Uses `(n+1) D_{n+1} = (2n+1)(2z+1) D_n - n D_{n-1}`; the division is exact
/// in every ring this is instantiated with (integers included).
#[derive(Clone, Debug)]
pub struct DelannoyIter<R: Ring> {
    two_z_plus_one: R,
    prev: R,
    cur: R,
    n: u64,
}

impl<R: Ring> DelannoyIter<R> {
    pub fn new(z: &R) -> Self {
        let two_z_plus_one = z.add(z).add(&R::one());
        DelannoyIter {
            prev: R::zero(),
            cur: R::one(),
            two_z_plus_one,
            n: 0,
        }
    }
}

impl<R: Ring> Iterator for DelannoyIter<R> {
    type Item = R;

    fn next(&mut self) -> Option<R> {
        let n = self.n as i64;
        let next = if n == 0 {
            self.two_z_plus_one.clone()
        } else {
            self.cur
                .mul(&self.two_z_plus_one)
                .mul(&R::from_i64(2 * n + 1))
                .sub(&self.prev.mul(&R::from_i64(n)))
                .div_int(n + 1)
        };
        let out = std::mem::replace(&mut self.cur, next);
        self.prev = out.clone();
        self.n += 1;
        Some(out)
    }
}

/// Streams `F_k(z) = ε^k D_k(z)`.
pub fn signed_delannoy<R: Ring>(z: &R, sign: Sign) -> impl Iterator<Item = R> {
    DelannoyIter::new(z)
        .enumerate()
        .map(move |(k, d)| if sign.pow(k as u64) < 0 { d.neg() } else { d })
}

/// `binom(n, k)` for every `k` in `0..=n`, by incremental multiply/divide.
pub fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        row.push(c.clone());
    }
    row
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |c, i| c * (n - i) / (i + 1))
}

/// `binom(n,k) binom(n+k,k)` for `k` in `0..=n`.
fn delannoy_weights(n: u64) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut w = BigInt::one();
    out.push(w.clone());
    for k in 0..n {
        w = w * ((n - k) * (n + k + 1)) / ((k + 1) * (k + 1));
        out.push(w.clone());
    }
    out
}

/// `D_n(z)` by its defining binomial sum.
pub fn delannoy_direct<R: Ring>(n: u64, z: &R) -> R {
    let mut acc = R::zero();
    let mut zk = R::one();
    for w in delannoy_weights(n) {
        acc = acc.add(&zk.mul(&R::from_bigint(&w)));
        zk = zk.mul(z);
    }
    acc
}

/// `D_n(z)` through the recurrence.
pub fn delannoy_poly_at(n: u64, z: &Rational) -> Rational {
    DelannoyIter::new(z).nth(n as usize).expect("infinite iterator")
}

/// Central Delannoy number `D_n = D_n(1)`.
pub fn delannoy_number(n: u64) -> BigInt {
    DelannoyIter::new(&BigInt::one())
        .nth(n as usize)
        .expect("infinite iterator")
}

/// `D_n` through the alternative form `sum_k binom(n,k)^2 2^k`.
pub fn delannoy_number_by_squares(n: u64) -> BigInt {
    binomial_row(n)
        .into_iter()
        .enumerate()
        .map(|(k, b)| (&b * &b) << k)
        .sum()
}

/// `T(n, k) = binom(n,k)^2 2^k`, the summands of [`delannoy_number_by_squares`].
pub fn squared_binomial_term(n: u64, k: u64) -> BigInt {
    let b = binomial(n, k);
    (&b * &b) << k
}

/// Generalized central trinomial coefficient `T_n(b, c)` by its binomial sum.
pub fn trinomial(n: u64, b: &BigInt, c: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut central = BigInt::one(); // binom(2k, k)
    for k in 0..=n / 2 {
        if k > 0 {
            central = central * (2 * (2 * k - 1)) / k;
        }
        acc += binomial(n, 2 * k) * &central * b.pow((n - 2 * k) as u32) * c.pow(k as u32);
    }
    acc
}

/// Streams `T_0(b,c), T_1(b,c), ...` via
/// `n T_n = (2n-1) b T_{n-1} - (n-1)(b^2 - 4c) T_{n-2}`.
#[derive(Clone, Debug)]
pub struct TrinomialIter {
    b: BigInt,
    disc: BigInt,
    prev: BigInt,
    cur: BigInt,
    n: u64,
}

impl TrinomialIter {
    pub fn new(b: &BigInt, c: &BigInt) -> Self {
        TrinomialIter {
            disc: b * b - c * 4u32,
            b: b.clone(),
            prev: BigInt::zero(),
            cur: BigInt::one(),
            n: 0,
        }
    }
}

impl Iterator for TrinomialIter {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let n = self.n + 1;
        let next = (&self.cur * &self.b * (2 * n - 1) - &self.prev * &self.disc * (n - 1)) / n;
        let out = std::mem::replace(&mut self.cur, next);
        self.prev = out.clone();
        self.n += 1;
        Some(out)
    }
}

/// Schmidt polynomial `S_n^{(r)}(z) = sum_k binom(n,k)^r binom(n+k,k)^r z^k`.
pub fn schmidt_poly(r: u32, n: u64, z: &Rational) -> Result<Rational> {
    if r == 0 {
        return Err(Error::InvalidArgument("Schmidt order r must be at least 1".into()));
    }
    Ok(schmidt_direct(r, n, z))
}

fn schmidt_direct<R: Ring>(r: u32, n: u64, z: &R) -> R {
    let mut acc = R::zero();
    let mut zk = R::one();
    for w in delannoy_weights(n) {
        acc = acc.add(&zk.mul(&R::from_bigint(&w.pow(r))));
        zk = zk.mul(z);
    }
    acc
}

/// Large Schröder polynomial `S_n(z) = sum_k binom(n,k) binom(n+k,k) z^k/(k+1)`.
///
/// Every coefficient is an integer, so this is exact over the integers too.
pub fn schroder_direct<R: Ring>(n: u64, z: &R) -> R {
    let mut acc = R::zero();
    let mut zk = R::one();
    for (k, w) in delannoy_weights(n).into_iter().enumerate() {
        let coeff = w / (k as u64 + 1);
        acc = acc.add(&zk.mul(&R::from_bigint(&coeff)));
        zk = zk.mul(z);
    }
    acc
}

pub fn schroder_poly_at(n: u64, z: &Rational) -> Rational {
    schroder_direct(n, z)
}

/// Large Schröder number `S_n = S_n(1)`.
pub fn schroder_number(n: u64) -> BigInt {
    schroder_direct(n, &BigInt::one())
}

/// Which sequence a [`SequenceSpec`] generates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "family")]
pub enum Family {
    Delannoy,
    Trinomial { b: BigInt, c: BigInt },
    Schmidt { r: u32 },
    Schroder,
}

/// A fully parameterized sequence: family, evaluation point and sign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceSpec {
    pub family: Family,
    pub z: Rational,
    pub sign: Sign,
}

impl SequenceSpec {
    pub fn new(family: Family, z: Rational, sign: Sign) -> Result<Self> {
        if let Family::Schmidt { r: 0 } = family {
            return Err(Error::InvalidArgument("Schmidt order r must be at least 1".into()));
        }
        Ok(SequenceSpec { family, z, sign })
    }

    /// Terms with indices `lo..=hi`, including the `ε^k` factor.
    pub fn terms(&self, lo: u64, hi: u64) -> Vec<Rational> {
        if lo > hi {
            return Vec::new();
        }
        let raw: Vec<Rational> = match &self.family {
            Family::Delannoy => DelannoyIter::new(&self.z)
                .skip(lo as usize)
                .take((hi - lo + 1) as usize)
                .collect(),
            Family::Trinomial { b, c } => TrinomialIter::new(b, c)
                .skip(lo as usize)
                .take((hi - lo + 1) as usize)
                .map(Rational::from_integer)
                .collect(),
            Family::Schmidt { r } => (lo..=hi).map(|n| schmidt_direct(*r, n, &self.z)).collect(),
            Family::Schroder => (lo..=hi).map(|n| schroder_direct(n, &self.z)).collect(),
        };
        raw.into_iter()
            .zip(lo..)
            .map(|(v, k)| if self.sign.pow(k) < 0 { -v } else { v })
            .collect()
    }
}
