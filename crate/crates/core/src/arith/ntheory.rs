use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Reduces `a` into `[0, modulus)`. `modulus` must be positive.
pub fn mod_normalize(a: &BigInt, modulus: &BigInt) -> BigInt {
    a.mod_floor(modulus)
}

/// `base^exp mod modulus` by square-and-multiply, result in `[0, modulus)`.
pub fn mod_pow(base: &BigInt, exp: &BigInt, modulus: &BigInt) -> Result<BigInt> {
    if exp.is_negative() {
        return Err(Error::InvalidArgument(format!("negative exponent {exp}")));
    }
    if !modulus.is_positive() {
        return Err(Error::InvalidArgument(format!("modulus {modulus} must be positive")));
    }
    if modulus.is_one() {
        return Ok(BigInt::zero());
    }
    let mut b = base.mod_floor(modulus);
    let mut acc = BigInt::one();
    let (_, digits) = exp.to_u64_digits();
    for (limb_idx, limb) in digits.iter().enumerate() {
        let last = limb_idx + 1 == digits.len();
        let mut limb = *limb;
        let bits = if last { 64 - limb.leading_zeros() } else { 64 };
        for _ in 0..bits {
            if limb & 1 == 1 {
                acc = (&acc * &b) % modulus;
            }
            limb >>= 1;
            b = (&b * &b) % modulus;
        }
    }
    Ok(acc)
}

/// Legendre symbol `(a/p)` by Euler's criterion.
///
/// `p` must be an odd prime; primality itself is the caller's
/// responsibility, only evenness and sign are rejected here.
pub fn legendre(a: &BigInt, p: &BigInt) -> Result<i8> {
    if !p.is_positive() || p.is_even() || p.is_one() {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    let r = mod_pow(a, &((p - 1u32) >> 1), p)?;
    if r.is_zero() {
        Ok(0)
    } else if r.is_one() {
        Ok(1)
    } else {
        debug_assert_eq!(r, p - 1u32);
        Ok(-1)
    }
}

// Deterministic for n < 3.317e24.
const MR_WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller-Rabin with a fixed witness set.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for &w in &MR_WITNESSES {
        let w = BigInt::from(w);
        if *n == w {
            return true;
        }
        if (n % &w).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &w in &MR_WITNESSES {
        let mut x = mod_pow(&BigInt::from(w), &d, n).expect("positive modulus");
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// 2-adic valuation.
pub fn v2(n: &BigInt) -> Result<u64> {
    n.trailing_zeros()
        .ok_or_else(|| Error::InvalidArgument("v2 of zero".into()))
}
