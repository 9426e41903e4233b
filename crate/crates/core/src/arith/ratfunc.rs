use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use super::{as_integer, Field, Poly, Rational, Ring};
use crate::error::{Error, Result};

/// Polynomial in the parameter `z` with rational coefficients.
pub type ZPoly = Poly<Rational>;

/// Rational function in `z`, kept in lowest terms with a monic denominator.
///
/// Because the representation is canonical, equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: ZPoly,
    den: ZPoly,
}

impl RatFunc {
    /// Builds `num/den` and normalizes. Fails on a zero denominator.
    pub fn new(num: ZPoly, den: ZPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: ZPoly, den: ZPoly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num,
                den: ZPoly::one(),
            };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_constant() {
                (num, den)
            } else {
                (
                    num.div_rem(&g).expect("nonzero gcd").0,
                    den.div_rem(&g).expect("nonzero gcd").0,
                )
            }
        };
        let lc_inv = den.leading().expect("nonzero denominator").inv().expect("field");
        RatFunc {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        }
    }

    pub fn from_poly(p: ZPoly) -> Self {
        RatFunc {
            num: p,
            den: ZPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(ZPoly::constant(c))
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(super::rat(v))
    }

    /// The parameter `z`.
    pub fn z() -> Self {
        Self::from_poly(ZPoly::x())
    }

    pub fn numer(&self) -> &ZPoly {
        &self.num
    }

    pub fn denom(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The value if this function does not depend on `z`.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }

    /// Evaluates at a rational point; a vanishing denominator is a pole.
    pub fn eval(&self, z: &Rational) -> Result<Rational> {
        let d = self.den.eval(z);
        if d.is_zero() {
            return Err(Error::Pole(z.to_string()));
        }
        Ok(self.num.eval(z) / d)
    }

    pub fn eval_int(&self, z: i64) -> Result<Rational> {
        self.eval(&super::rat(z))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Field::div(self, other).ok_or(Error::DivisionByZero)
    }

    /// Integer coefficients of the numerator when the function is a
    /// polynomial over the integers; `None` otherwise.
    pub fn integer_polynomial(&self) -> Option<Vec<BigInt>> {
        if !self.is_polynomial() {
            return None;
        }
        self.num.coeffs().iter().map(as_integer).collect()
    }

    /// Renders with the given parameter name, e.g. `(4*z + 9)/z^2`.
    ///
    /// Numerator and denominator are scaled to integer coefficients first,
    /// so `1/(4z)` prints as `1/(4*z)` rather than with nested fractions.
    pub fn display_with(&self, var: &str) -> String {
        if self.den == ZPoly::one() {
            return self.num.display_with(var);
        }
        let lcm = self
            .num
            .coeffs()
            .iter()
            .chain(self.den.coeffs())
            .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let factor = Rational::from_integer(lcm);
        let (num_p, den_p) = (self.num.scale(&factor), self.den.scale(&factor));
        let terms = |p: &ZPoly| p.coeffs().iter().filter(|c| !c.is_zero()).count();
        let num = num_p.display_with(var);
        let num = if terms(&num_p) > 1 { format!("({num})") } else { num };
        let den = den_p.display_with(var);
        if terms(&den_p) == 1 && !den.contains('*') {
            format!("{num}/{den}")
        } else {
            format!("{num}/({den})")
        }
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        Self::from_poly(ZPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(ZPoly::one())
    }
    fn from_i64(v: i64) -> Self {
        RatFunc::from_int(v)
    }
    fn from_bigint(v: &BigInt) -> Self {
        RatFunc::constant(Rational::from_integer(v.clone()))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        Ring::add(self, &Ring::neg(other))
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_polynomial() && other.is_polynomial() {
            // monic constant denominators are exactly one
            return Self::from_poly(self.num.mul(&other.num));
        }
        Self::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn div_int(&self, d: i64) -> Self {
        assert!(d != 0, "division by zero");
        RatFunc {
            num: self.num.scale(&super::ratio(1, d)),
            den: self.den.clone(),
        }
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl std::ops::Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        Ring::add(self, rhs)
    }
}

impl std::ops::Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        Ring::sub(self, rhs)
    }
}

impl std::ops::Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        Ring::mul(self, rhs)
    }
}

impl std::ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        Ring::neg(self)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("z"))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self.display_with("z"))
    }
}
