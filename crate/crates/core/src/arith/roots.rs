use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::{Poly, RatFunc, Rational, Ring, ZPoly};
use crate::error::{Error, Result};

// Trial division is only attempted below this bound.
const MAX_FACTOR: u128 = 1 << 50;

/// Rational roots of `p`, sorted and without repetition.
///
/// Uses the rational root theorem on the primitive integer multiple of `p`.
/// The zero polynomial has every number as a root and is rejected.
pub fn rational_roots(p: &ZPoly) -> Result<Vec<Rational>> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("roots of the zero polynomial".into()));
    }
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    let zeros = ints.iter().take_while(|c| Ring::is_zero(*c)).count();
    if zeros > 0 {
        roots.push(Rational::from_integer(BigInt::from(0)));
        ints.drain(..zeros);
    }
    if ints.len() > 1 {
        let a0 = ints[0].abs();
        let an = ints.last().expect("nonempty").abs();
        let num_divs = divisors(&a0)?;
        let den_divs = divisors(&an)?;
        let q = ZPoly::from_coeffs(ints.iter().map(|c| Rational::from_integer(c.clone())).collect());
        for n in &num_divs {
            for d in &den_divs {
                for sign in [1i64, -1] {
                    let cand = Rational::new(n * sign, d.clone());
                    if Ring::is_zero(&q.eval(&cand)) && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n
        .to_u128()
        .filter(|&v| v < MAX_FACTOR && v > 0)
        .ok_or_else(|| Error::InvalidArgument(format!("cannot enumerate divisors of {n}")))?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Result of solving a system of polynomial equations for a rational value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommonRoots {
    /// Every equation is the zero polynomial.
    Everything,
    Finite(Vec<Rational>),
}

/// Rational values of the indeterminate that are roots of every polynomial
/// in `polys` identically in `z`.
///
/// Each polynomial has coefficients in `Q(z)`; a rational root must annihilate
/// every `z`-coefficient after clearing denominators, which reduces the
/// problem to univariate root finding over `Q`.
pub fn common_rational_roots(polys: &[Poly<RatFunc>]) -> Result<CommonRoots> {
    let mut equations: Vec<ZPoly> = Vec::new();
    for p in polys {
        let common_den = p.coeffs().iter().fold(ZPoly::one(), |acc, c| {
            let g = acc.gcd(c.denom());
            acc.mul(c.denom()).div_rem(&g).expect("nonzero gcd").0
        });
        let cleared: Vec<ZPoly> = p
            .coeffs()
            .iter()
            .map(|c| {
                let factor = common_den.div_rem(c.denom()).expect("nonzero").0;
                c.numer().mul(&factor)
            })
            .collect();
        let max_zdeg = cleared.iter().filter_map(ZPoly::degree).max();
        if let Some(max_zdeg) = max_zdeg {
            for u in 0..=max_zdeg {
                let eq = ZPoly::from_coeffs(cleared.iter().map(|c| c.coeff(u)).collect());
                if !eq.is_zero() {
                    equations.push(eq);
                }
            }
        }
    }
    let Some(pivot) = equations.iter().min_by_key(|e| e.degree()) else {
        return Ok(CommonRoots::Everything);
    };
    let roots = rational_roots(pivot)?
        .into_iter()
        .filter(|r| equations.iter().all(|e| Ring::is_zero(&e.eval(r))))
        .collect();
    Ok(CommonRoots::Finite(roots))
}

/// Lifts a polynomial over `Q` to one over `Q(z)` with constant coefficients.
pub fn lift(p: &ZPoly) -> Poly<RatFunc> {
    p.map(|c| RatFunc::constant(c.clone()))
}

/// True when the rational is a nonnegative integer; returns it.
pub fn as_natural(r: &Rational) -> Option<u64> {
    if r.is_integer() && !r.is_negative() {
        r.to_integer().to_u64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    #[test]
    fn roots_of_small_polynomials() {
        // (2x - 1)(x + 3) x = 2x^3 + 5x^2 - 3x
        let p = ZPoly::from_ints(&[0, -3, 5, 2]);
        assert_eq!(rational_roots(&p).unwrap(), vec![rat(-3), rat(0), ratio(1, 2)]);
        assert_eq!(rational_roots(&ZPoly::from_ints(&[1, 0, 1])).unwrap(), vec![]);
        assert_eq!(rational_roots(&ZPoly::from_ints(&[7])).unwrap(), vec![]);
        assert!(rational_roots(&ZPoly::zero()).is_err());
    }

    #[test]
    fn common_roots_over_function_field() {
        // (s - 2) z + (s - 2)(s + 1) and (s - 2)(s - 5): common root 2
        let z = RatFunc::z();
        let p = Poly::from_coeffs(vec![
            &(&RatFunc::from_int(-2) * &z) + &RatFunc::from_int(-2),
            &z + &RatFunc::from_int(-1),
            RatFunc::one(),
        ]);
        let q = lift(&ZPoly::from_ints(&[10, -7, 1]));
        assert_eq!(
            common_rational_roots(&[p, q]).unwrap(),
            CommonRoots::Finite(vec![rat(2)])
        );
        assert_eq!(
            common_rational_roots(&[Poly::zero()]).unwrap(),
            CommonRoots::Everything
        );
    }
}
