//! Linear recurrence operators `L = sum_i a_i(k) σ^i` with coefficients in
//! `Q(z)[k]`, their adjoints, telescoping certificates, operator degree,
//! nondegeneracy and the reflection symmetry that makes an operator
//! power-partible.

use serde::{Deserialize, Serialize};

use crate::arith::{
    as_natural, common_rational_roots, lift, rational_roots, CommonRoots, Poly, RatFunc, Rational,
    Ring, ZPoly,
};
use crate::error::{Error, Result};
use crate::sequences::{signed_delannoy, Sign};

/// Polynomial in the summation index `k` with coefficients in `Q(z)`.
pub type KPoly = Poly<RatFunc>;

/// `L = sum_{i=0}^{J} a_i(k) σ^i` with `a_J ≠ 0` and `J ≥ 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShiftOperator {
    coeffs: Vec<KPoly>,
}

/// `deg L` together with the polynomials `b_ℓ` it is computed from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperatorDegree {
    /// `None` when every `b_ℓ` vanishes (degree `-∞`).
    pub d: Option<i64>,
    pub b: Vec<KPoly>,
}

/// Indicial data of an operator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Nondegeneracy {
    /// `sum_ℓ [k^{d+ℓ}] b_ℓ(k) · s(s-1)...(s-ℓ+1)` as a polynomial in `s`.
    pub indicial: Poly<RatFunc>,
    /// Nonnegative integer roots of `indicial` (the set `R_L`).
    pub roots: Vec<u64>,
    pub nondegenerate: bool,
    /// Rational `z` at which the indicial polynomial vanishes identically.
    pub exceptional_z: Vec<Rational>,
}

/// Everything `op inspect` reports, rendered as strings for JSON output.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PartibilityReport {
    pub order: usize,
    pub coefficients: Vec<String>,
    /// `null` encodes `deg L = -∞`.
    pub degree: Option<i64>,
    pub b: Vec<String>,
    pub indicial: String,
    pub r_l: Vec<u64>,
    /// Set when the indicial polynomial is identically zero, so that every
    /// `s` belongs to `R_L`.
    pub degenerate_everywhere: bool,
    pub nondegenerate: bool,
    pub exceptional_z: Vec<String>,
    pub gamma: Option<String>,
    pub condition_holds: bool,
}

fn falling_factorial(l: usize) -> Poly<RatFunc> {
    (0..l).fold(Poly::one(), |acc, j| {
        acc.mul(&Poly::linear(RatFunc::one(), RatFunc::from_int(-(j as i64))))
    })
}

fn binom_small(m: usize, t: usize) -> i64 {
    (0..t).fold(1i64, |c, i| c * (m - i) as i64 / (i as i64 + 1))
}

pub(crate) fn kpoly_display(p: &KPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "k".to_string(),
            _ => format!("k^{i}"),
        };
        let text = c.to_string();
        let atom = !text.contains([' ', '/']);
        parts.push(match (mono.is_empty(), atom, text.as_str()) {
            (true, _, _) => text,
            (false, _, "1") => mono,
            (false, _, "-1") => format!("-{mono}"),
            (false, true, _) => format!("{text}*{mono}"),
            (false, false, _) => format!("({text})*{mono}"),
        });
    }
    parts.join(" + ").replace("+ -", "- ")
}

impl ShiftOperator {
    pub fn new(coeffs: Vec<KPoly>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidArgument("operator order must be at least 1".into()));
        }
        if coeffs.last().is_some_and(Poly::is_zero) {
            return Err(Error::InvalidArgument("leading coefficient a_J vanishes".into()));
        }
        Ok(ShiftOperator { coeffs })
    }

    /// Operator whose coefficients have integer coefficients in `k`, listed
    /// lowest degree first for each `a_i`.
    pub fn from_int_coeffs(coeffs: &[&[i64]]) -> Result<Self> {
        Self::new(coeffs.iter().map(|c| KPoly::from_ints(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[KPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &KPoly {
        &self.coeffs[i]
    }

    /// Substitutes a concrete `z` into every coefficient.
    pub fn specialize(&self, z: &Rational) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.try_map(|c| c.eval(z).map(RatFunc::constant)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    /// `(L F)(k) = sum_i a_i(k) F(k+i)` given `window = [F(k), ..., F(k+J)]`.
    pub fn apply_at(&self, k: i64, window: &[RatFunc]) -> RatFunc {
        assert_eq!(window.len(), self.coeffs.len(), "window must hold J+1 values");
        let kk = RatFunc::from_int(k);
        self.coeffs
            .iter()
            .zip(window)
            .fold(RatFunc::zero(), |acc, (a, f)| acc.add(&a.eval(&kk).mul(f)))
    }

    /// `L*(x)(k) = sum_i a_i(k-i) x(k-i)`.
    pub fn adjoint_apply(&self, x: &KPoly) -> KPoly {
        self.coeffs
            .iter()
            .enumerate()
            .fold(KPoly::zero(), |acc, (i, a)| {
                acc.add(&a.mul(x).shift_by(-(i as i64)))
            })
    }

    /// `u_i(k) = sum_{j=1}^{J-i} a_{i+j}(k-j) x(k-j)` for `i = 0..J`, so that
    /// `L*(x)(k) F(k) = Δ(-sum_i u_i(k) F(k+i))` whenever `L F = 0`.
    pub fn telescoping_u(&self, x: &KPoly) -> Vec<KPoly> {
        let j_max = self.order();
        (0..j_max)
            .map(|i| {
                (1..=j_max - i).fold(KPoly::zero(), |acc, j| {
                    acc.add(&self.coeffs[i + j].mul(x).shift_by(-(j as i64)))
                })
            })
            .collect()
    }

    /// Right-hand side of the summed telescoping identity,
    /// `sum_i u_i(0) F(i) - sum_i u_i(n) F(n+i)`, from values `F(0..n+J)`.
    pub fn telescoped_sum(&self, x: &KPoly, n: u64, values: &[RatFunc]) -> RatFunc {
        let us = self.telescoping_u(x);
        let zero = RatFunc::zero();
        let nn = RatFunc::from_int(n as i64);
        us.iter().enumerate().fold(RatFunc::zero(), |acc, (i, u)| {
            let start = u.eval(&zero).mul(&values[i]);
            let end = u.eval(&nn).mul(&values[n as usize + i]);
            acc.add(&start).sub(&end)
        })
    }

    /// `b_ℓ(k) = sum_{j=ℓ}^{J} binom(j, ℓ) a_{J-j}(k+j-J)` and
    /// `deg L = max_ℓ (deg b_ℓ - ℓ)`.
    pub fn degree(&self) -> OperatorDegree {
        let j_max = self.order();
        let b: Vec<KPoly> = (0..=j_max)
            .map(|l| {
                (l..=j_max).fold(KPoly::zero(), |acc, j| {
                    let term = self.coeffs[j_max - j]
                        .shift_by(j as i64 - j_max as i64)
                        .scale(&RatFunc::from_int(binom_small(j, l)));
                    acc.add(&term)
                })
            })
            .collect();
        let d = b
            .iter()
            .enumerate()
            .filter_map(|(l, bl)| bl.degree().map(|deg| deg as i64 - l as i64))
            .max();
        OperatorDegree { d, b }
    }

    /// The indicial polynomial in `s`; errors if `deg L = -∞`.
    pub fn indicial_polynomial(&self) -> Result<Poly<RatFunc>> {
        let OperatorDegree { d, b } = self.degree();
        let d = d.ok_or(Error::NoDegree)?;
        Ok(b.iter().enumerate().fold(Poly::zero(), |acc, (l, bl)| {
            let idx = d + l as i64;
            if idx < 0 {
                return acc;
            }
            let c = bl.coeff(idx as usize);
            acc.add(&falling_factorial(l).scale(&c))
        }))
    }

    /// Computes `R_L`. An indicial polynomial that vanishes identically is
    /// reported as [`Error::DegenerateEverywhere`].
    pub fn nondegeneracy(&self) -> Result<Nondegeneracy> {
        let indicial = self.indicial_polynomial()?;
        if indicial.is_zero() {
            return Err(Error::DegenerateEverywhere);
        }
        let roots = match common_rational_roots(std::slice::from_ref(&indicial))? {
            CommonRoots::Finite(r) => r.iter().filter_map(as_natural).collect::<Vec<_>>(),
            CommonRoots::Everything => unreachable!("nonzero indicial polynomial"),
        };

        // z values killing every coefficient of the indicial polynomial
        let common_den = indicial.coeffs().iter().fold(ZPoly::one(), |acc, c| {
            let g = acc.gcd(c.denom());
            acc.mul(c.denom()).div_rem(&g).expect("nonzero gcd").0
        });
        let numerators: Vec<Poly<RatFunc>> = indicial
            .coeffs()
            .iter()
            .map(|c| lift(&c.numer().mul(&common_den.div_rem(c.denom()).expect("nonzero").0)))
            .collect();
        let poles = if common_den.is_constant() {
            Vec::new()
        } else {
            rational_roots(&common_den)?
        };
        let exceptional_z = match common_rational_roots(&numerators)? {
            CommonRoots::Finite(r) => r.into_iter().filter(|z| !poles.contains(z)).collect(),
            CommonRoots::Everything => unreachable!("nonzero indicial polynomial"),
        };

        Ok(Nondegeneracy {
            nondegenerate: roots.is_empty(),
            indicial,
            roots,
            exceptional_z,
        })
    }

    /// Tests `a_i(γ+k) = (-1)^{deg L} a_{J-i}(γ-k-J)` for `i = 0..=J/2`
    /// identically in `k` and `z`.
    pub fn partibility_check(&self, gamma: &Rational) -> bool {
        let Some(d) = self.degree().d else {
            return false;
        };
        let j_max = self.order();
        let g = RatFunc::constant(gamma.clone());
        let g_minus_j = RatFunc::constant(gamma - Rational::from_i64(j_max as i64));
        (0..=j_max / 2).all(|i| {
            let lhs = self.coeffs[i].shift(&g);
            let rhs = self.coeffs[j_max - i].shift(&g_minus_j).reflect();
            let rhs = if d.rem_euclid(2) == 1 { rhs.neg() } else { rhs };
            lhs == rhs
        })
    }

    /// Solves the symmetry condition for a rational center `γ`.
    ///
    /// Each coefficient of `k^t` on both sides is a polynomial in `γ`; a
    /// valid center is a common rational root. Returns `Ok(None)` when there
    /// is none (or when `deg L = -∞`).
    pub fn find_gamma(&self) -> Result<Option<Rational>> {
        let Some(d) = self.degree().d else {
            return Ok(None);
        };
        let j_max = self.order();
        let mut equations = Vec::new();
        for i in 0..=j_max / 2 {
            let a = &self.coeffs[i];
            let b = &self.coeffs[j_max - i];
            let top = a.coeffs().len().max(b.coeffs().len());
            for t in 0..top {
                // [k^t] a(γ + k) as a polynomial in γ
                let lhs = Poly::from_coeffs(
                    (t..a.coeffs().len())
                        .map(|m| a.coeff(m).mul(&RatFunc::from_int(binom_small(m, t))))
                        .collect(),
                );
                // [k^t] b(g - k) with g = γ - J, then substitute
                let rhs = Poly::from_coeffs(
                    (t..b.coeffs().len())
                        .map(|m| b.coeff(m).mul(&RatFunc::from_int(binom_small(m, t))))
                        .collect(),
                )
                .shift_by(-(j_max as i64));
                let sign = if (d + t as i64).rem_euclid(2) == 1 { -1 } else { 1 };
                equations.push(lhs.sub(&rhs.scale(&RatFunc::from_int(sign))));
            }
        }
        let candidates = match common_rational_roots(&equations)? {
            CommonRoots::Everything => vec![Rational::from_i64(0)],
            CommonRoots::Finite(r) => r,
        };
        Ok(candidates.into_iter().find(|g| self.partibility_check(g)))
    }

    /// Collects degree, indicial data and symmetry center into one report.
    pub fn inspect(&self) -> Result<PartibilityReport> {
        let OperatorDegree { d, b } = self.degree();
        let (indicial, r_l, degenerate_everywhere, nondegenerate, exceptional_z) =
            match self.nondegeneracy() {
                Ok(nd) => (
                    nd.indicial.display_with("s"),
                    nd.roots,
                    false,
                    nd.nondegenerate,
                    nd.exceptional_z.iter().map(ToString::to_string).collect(),
                ),
                Err(Error::DegenerateEverywhere) => ("0".into(), Vec::new(), true, false, Vec::new()),
                Err(Error::NoDegree) => (String::new(), Vec::new(), true, false, Vec::new()),
                Err(e) => return Err(e),
            };
        let gamma = self.find_gamma()?;
        Ok(PartibilityReport {
            order: self.order(),
            coefficients: self.coeffs.iter().map(kpoly_display).collect(),
            degree: d,
            b: b.iter().map(kpoly_display).collect(),
            indicial,
            r_l,
            degenerate_everywhere,
            nondegenerate,
            exceptional_z,
            condition_holds: gamma.is_some(),
            gamma: gamma.map(|g| g.to_string()),
        })
    }
}

/// `L = (k+2)σ^2 - ε(2k+3)(2z+1)σ + (k+1)`, annihilating `ε^k D_k(z)`.
///
/// Pass [`RatFunc::z`] for the symbolic operator or a constant for a
/// specialization.
pub fn delannoy_operator(sign: Sign, z: &RatFunc) -> ShiftOperator {
    let two_z_plus_one = z.add(z).add(&RatFunc::one());
    let eps = RatFunc::from_int(sign.as_i64());
    let mid = KPoly::from_ints(&[3, 2]).scale(&two_z_plus_one.mul(&eps).neg());
    ShiftOperator::new(vec![
        KPoly::from_ints(&[1, 1]),
        mid,
        KPoly::from_ints(&[2, 1]),
    ])
    .expect("order two with nonzero leading coefficient")
}

/// Both sides of `sum_{k<n} L*(x)(k) F_k(z) = n (x(n-1) F_{n-1}(z) - x(n-2) F_n(z))`
/// for the Delannoy operator, computed independently.
pub fn boundary_sum_identity(
    x: &KPoly,
    n: u64,
    z: &Rational,
    sign: Sign,
) -> Result<(Rational, Rational)> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let op = delannoy_operator(sign, &RatFunc::constant(z.clone()));
    let x = x.try_map(|c| c.eval(z).map(RatFunc::constant))?;
    let f: Vec<Rational> = signed_delannoy(z, sign).take(n as usize + 1).collect();
    let adj = op.adjoint_apply(&x);
    let at = |p: &KPoly, k: i64| -> Rational {
        p.eval(&RatFunc::from_int(k))
            .as_constant()
            .expect("specialized polynomial is constant in z")
    };
    let lhs = (0..n as usize).fold(Rational::from_i64(0), |acc, k| {
        acc + at(&adj, k as i64) * &f[k]
    });
    let n_i = n as i64;
    let rhs = Rational::from_i64(n_i)
        * (at(&x, n_i - 1) * &f[n as usize - 1] - at(&x, n_i - 2) * &f[n as usize]);
    Ok((lhs, rhs))
}
