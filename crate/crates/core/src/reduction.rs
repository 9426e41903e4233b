//! Reduction of odd-center powers modulo the image of the adjoint: the
//! integers `e_j^(s)`, the closed form of `L*((2k+3)^s)`, the constant
//! recursions for `c_v`, `y_v`, `ρ_v` and their `ε = -1` twins, and a generic
//! greedy reducer for power-partible operators.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{as_integer, rat, ratio, Poly, RatFunc, Rational, Ring};
use crate::error::{Error, Result};
use crate::operator::{delannoy_operator, kpoly_display, KPoly, ShiftOperator};
use crate::sequences::{binomial, Sign};

/// `e_j^(s) = binom(s, 2j) 2^{2j-1} + binom(s, 2j-1) 2^{2j-2}`.
pub fn e_coeff(s: u64, j: u64) -> Result<BigInt> {
    if j < 1 || j > s.div_ceil(2) {
        return Err(Error::InvalidArgument(format!("e_j^(s) needs 1 <= j <= (s+1)/2, got s={s}, j={j}")));
    }
    let two = BigInt::from(2);
    let first = binomial(s, 2 * j) * two.pow(2 * j as u32 - 1);
    let second = binomial(s, 2 * j - 1) * two.pow(2 * j as u32 - 2);
    Ok(first + second)
}

fn e_row(s: u64) -> Vec<BigInt> {
    (1..=s.div_ceil(2)).map(|j| e_coeff(s, j).expect("in range")).collect()
}

/// Which odd linear form the powers are taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    /// `2k + 1`
    TwoKPlusOne,
    /// `2k + 3`
    TwoKPlusThree,
}

impl Basis {
    fn offset(self) -> i64 {
        match self {
            Basis::TwoKPlusOne => 1,
            Basis::TwoKPlusThree => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Basis::TwoKPlusOne => "2k+1",
            Basis::TwoKPlusThree => "2k+3",
        }
    }
}

/// Finite combination `sum_i c_i (2k+b)^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenPowerCombo<R: Ring> {
    pub basis: Basis,
    pub terms: BTreeMap<u32, R>,
}

impl<R: Ring> EvenPowerCombo<R> {
    pub fn zero(basis: Basis) -> Self {
        EvenPowerCombo { basis, terms: BTreeMap::new() }
    }

    pub fn monomial(basis: Basis, exp: u32, coeff: R) -> Self {
        let mut c = Self::zero(basis);
        c.add_term(exp, &coeff);
        c
    }

    pub fn coeff(&self, exp: u32) -> R {
        self.terms.get(&exp).cloned().unwrap_or_else(R::zero)
    }

    fn add_term(&mut self, exp: u32, coeff: &R) {
        let sum = self.coeff(exp).add(coeff);
        if sum.is_zero() {
            self.terms.remove(&exp);
        } else {
            self.terms.insert(exp, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.basis, other.basis, "combos in different bases");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn scale(&self, by: &R) -> Self {
        let mut out = Self::zero(self.basis);
        for (e, c) in &self.terms {
            out.add_term(*e, &c.mul(by));
        }
        out
    }

    /// All exponents share one parity.
    pub fn has_uniform_parity(&self) -> bool {
        let mut parities = self.terms.keys().map(|e| e % 2);
        match parities.next() {
            None => true,
            Some(p) => parities.all(|q| q == p),
        }
    }

    /// Expands into the monomial basis in `k`.
    pub fn to_kpoly(&self) -> Poly<R> {
        let linear = Poly::from_coeffs(vec![R::from_i64(self.basis.offset()), R::from_i64(2)]);
        self.terms
            .iter()
            .fold(Poly::zero(), |acc, (e, c)| acc.add(&linear.pow(*e).scale(c)))
    }

    /// Value at `k = -1`, where `2k + 3 = 1` and `2k + 1 = -1`.
    pub fn at_minus_one(&self) -> R {
        self.terms.iter().fold(R::zero(), |acc, (e, c)| {
            let term = match self.basis {
                Basis::TwoKPlusThree => c.clone(),
                Basis::TwoKPlusOne if e % 2 == 1 => c.neg(),
                Basis::TwoKPlusOne => c.clone(),
            };
            acc.add(&term)
        })
    }

    /// Formal derivative in `k`, staying in the same basis.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero(self.basis);
        for (e, c) in &self.terms {
            if *e > 0 {
                out.add_term(e - 1, &c.mul(&R::from_i64(2 * *e as i64)));
            }
        }
        out
    }

    pub fn display(&self) -> String
    where
        R: std::fmt::Display,
    {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                _ => format!("({c})*({})^{e}", self.basis.label()),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `L*((2k+3)^s)` for the Delannoy operator, written in powers of `2k+1`:
/// `(1 - ε - 2εz)(2k+1)^{s+1} + 2 sum_j e_j^(s) (2k+1)^{s+1-2j}`.
pub fn adjoint_closed_form(s: u32, sign: Sign) -> EvenPowerCombo<RatFunc> {
    let eps = sign.as_i64();
    let lead = RatFunc::from_poly(Poly::from_ints(&[1 - eps, -2 * eps]));
    let mut combo = EvenPowerCombo::monomial(Basis::TwoKPlusOne, s + 1, lead);
    for (j, e) in e_row(s as u64).iter().enumerate() {
        let exp = s + 1 - 2 * (j as u32 + 1);
        combo.add_term(exp, &RatFunc::from_bigint(&(e * 2)));
    }
    combo
}

/// `c_0..=c_{v_max}` and `c̃_0..=c̃_{v_max}` over `Q(z)`.
pub fn c_constants(v_max: usize) -> (Vec<RatFunc>, Vec<RatFunc>) {
    let z = RatFunc::z();
    let inv_z = RatFunc::one().try_div(&z).expect("z is nonzero");
    let inv_z1 = RatFunc::one()
        .try_div(&z.add(&RatFunc::one()))
        .expect("z + 1 is nonzero")
        .neg();
    let mut c = vec![RatFunc::one()];
    let mut ct = vec![RatFunc::one()];
    for v in 1..=v_max {
        let row = e_row(2 * v as u64 - 1);
        let (mut acc, mut acc_t) = (RatFunc::zero(), RatFunc::zero());
        for (j, e) in row.iter().enumerate().take(v) {
            let e = RatFunc::from_bigint(e);
            acc = acc.add(&e.mul(&c[v - j - 1]));
            acc_t = acc_t.add(&e.mul(&ct[v - j - 1]));
        }
        c.push(acc.mul(&inv_z));
        ct.push(acc_t.mul(&inv_z1));
    }
    (c, ct)
}

/// `y_0..=y_{v_max}` and `ỹ_0..=ỹ_{v_max}` in powers of `2k+3`.
pub fn y_polys(v_max: usize) -> (Vec<EvenPowerCombo<Rational>>, Vec<EvenPowerCombo<Rational>>) {
    let b = Basis::TwoKPlusThree;
    let mut y = vec![EvenPowerCombo::monomial(b, 0, ratio(-1, 2))];
    let mut yt = vec![EvenPowerCombo::monomial(b, 0, ratio(1, 4))];
    for v in 1..=v_max {
        let row = e_row(2 * v as u64);
        let mut next = EvenPowerCombo::monomial(b, 2 * v as u32, ratio(-1, 2));
        let mut next_t = EvenPowerCombo::monomial(b, 2 * v as u32, ratio(1, 4));
        for (j, e) in row.iter().enumerate().take(v) {
            let e = Rational::from_integer(e.clone());
            next = next.add(&y[v - j - 1].scale(&e));
            next_t = next_t.add(&yt[v - j - 1].scale(&(-e / rat(2))));
        }
        y.push(next);
        yt.push(next_t);
    }
    (y, yt)
}

fn to_int(r: &Rational, what: impl FnOnce() -> String) -> Result<BigInt> {
    as_integer(r).ok_or_else(|| Error::NotIntegral(format!("{} = {r}", what())))
}

/// `ρ_v` and `ρ̃_v` from the recursions over `y_{v-j}(-1)` and `ỹ'_{v-j}(-1)`.
pub fn rho_constants(v_max: usize) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let (y, yt) = y_polys(v_max);
    let mut rho = Vec::with_capacity(v_max + 1);
    let mut rho_t = Vec::with_capacity(v_max + 1);
    for v in 0..=v_max {
        let row = e_row(2 * v as u64);
        let (mut acc, mut acc_t) = (rat(0), rat(0));
        for (j, e) in row.iter().enumerate().take(v) {
            let e = Rational::from_integer(e.clone());
            acc += &e * y[v - j - 1].at_minus_one();
            acc_t += &e * yt[v - j - 1].derivative().at_minus_one();
        }
        rho.push(to_int(&(rat(1) - rat(2) * acc), || format!("rho_{v}"))?);
        rho_t.push(to_int(&(rat(2 * v as i64) - acc_t), || format!("rho~_{v}"))?);
    }
    Ok((rho, rho_t))
}

/// Constants indexed by `v`, built once and shared read-only.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantTable {
    pub c: Vec<RatFunc>,
    pub c_tilde: Vec<RatFunc>,
    pub rho: Vec<BigInt>,
    pub rho_tilde: Vec<BigInt>,
    /// Constant term times two of `y_v(k-1)`; equals `-ρ_v`.
    pub s0: Vec<BigInt>,
    /// Linear coefficient of `ỹ_v(k-1)`; equals `ρ̃_v / 2`.
    pub s1_tilde: Vec<BigInt>,
    /// `z^v c_v` as integer coefficients, lowest degree first.
    pub c_cleared: Vec<Vec<BigInt>>,
    /// `(z+1)^v c̃_v` as integer coefficients, lowest degree first.
    pub c_tilde_cleared: Vec<Vec<BigInt>>,
}

/// One row of [`ConstantTable`] rendered for output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantRow {
    pub v: usize,
    pub c: String,
    pub c_tilde: String,
    pub rho: String,
    pub rho_tilde: String,
}

impl ConstantTable {
    /// Builds the table and checks every integrality claim along the way.
    pub fn build(v_max: usize) -> Result<Self> {
        let (c, c_tilde) = c_constants(v_max);
        let (rho, rho_tilde) = rho_constants(v_max)?;
        let (y, yt) = y_polys(v_max);
        let mut s0 = Vec::new();
        let mut s1_tilde = Vec::new();
        for v in 0..=v_max {
            let shifted = y[v].to_kpoly().shift_by(-1);
            for (j, sj) in shifted.coeffs().iter().enumerate().skip(1) {
                to_int(sj, || format!("s_{j}^({v})"))?;
            }
            s0.push(to_int(&(shifted.coeff(0) * rat(2)), || format!("s_0^({v})"))?);
            let shifted_t = yt[v].to_kpoly().shift_by(-1);
            s1_tilde.push(to_int(&shifted_t.coeff(1), || format!("s~_1^({v})"))?);
        }

        let clear = |f: &RatFunc, root: i64, v: usize, name: &str| -> Result<Vec<BigInt>> {
            let factor = RatFunc::from_poly(Poly::from_ints(&[root, 1]).pow(v as u32));
            f.mul(&factor)
                .integer_polynomial()
                .ok_or_else(|| Error::NotIntegral(format!("{name}_{v} times its denominator = {f}")))
        };
        let c_cleared = (0..=v_max)
            .map(|v| clear(&c[v], 0, v, "c"))
            .collect::<Result<Vec<_>>>()?;
        let c_tilde_cleared = (0..=v_max)
            .map(|v| clear(&c_tilde[v], 1, v, "c~"))
            .collect::<Result<Vec<_>>>()?;

        Ok(ConstantTable { c, c_tilde, rho, rho_tilde, s0, s1_tilde, c_cleared, c_tilde_cleared })
    }

    /// Process-wide table covering at least `0..=v_max`.
    pub fn shared(v_max: usize) -> Result<Arc<ConstantTable>> {
        static CACHE: OnceLock<Mutex<Option<Arc<ConstantTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(None));
        let mut guard = cache.lock().expect("constant cache poisoned");
        if let Some(t) = guard.as_ref().filter(|t| t.v_max() >= v_max) {
            return Ok(Arc::clone(t));
        }
        let table = Arc::new(ConstantTable::build(v_max)?);
        *guard = Some(Arc::clone(&table));
        Ok(table)
    }

    pub fn v_max(&self) -> usize {
        self.c.len() - 1
    }

    /// Cleared constant polynomial for the given sign.
    pub fn cleared(&self, sign: Sign, v: usize) -> &[BigInt] {
        match sign {
            Sign::Plus => &self.c_cleared[v],
            Sign::Minus => &self.c_tilde_cleared[v],
        }
    }

    /// Rows with `c_v` written as `p(z)/z^v` and `c̃_v` as `p(z)/(z + 1)^v`.
    pub fn rows(&self) -> Vec<ConstantRow> {
        (0..=self.v_max())
            .map(|v| ConstantRow {
                v,
                c: over_power(&self.c_cleared[v], "z", v),
                c_tilde: over_power(&self.c_tilde_cleared[v], "(z + 1)", v),
                rho: self.rho[v].to_string(),
                rho_tilde: self.rho_tilde[v].to_string(),
            })
            .collect()
    }
}

fn over_power(num: &[BigInt], base: &str, v: usize) -> String {
    let p = Poly::from_coeffs(num.iter().map(|c| Rational::from_integer(c.clone())).collect());
    let text = p.display_with("z");
    if v == 0 {
        return text;
    }
    let text = if num.iter().filter(|c| !Ring::is_zero(*c)).count() > 1 { format!("({text})") } else { text };
    match v {
        1 => format!("{text}/{base}"),
        _ => format!("{text}/{base}^{v}"),
    }
}

/// `(k-γ)^m ≡ sum_i λ_i (k-γ)^i` modulo the image of `L*`, with witness `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionCertificate {
    pub operator: ShiftOperator,
    pub gamma: Rational,
    pub m: u32,
    /// Polynomial in `k` with `(k-γ)^m - L*(x) = sum_i λ_i (k-γ)^i`.
    pub witness: KPoly,
    /// Nonzero `λ_i`, keyed by `i`.
    pub remainder: BTreeMap<u32, RatFunc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemainderTerm {
    pub i: u32,
    pub lambda: String,
}

/// Output form of a [`ReductionCertificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub coefficients: Vec<String>,
    pub gamma: String,
    pub m: u32,
    pub witness: String,
    pub remainder: Vec<RemainderTerm>,
    pub identity_holds: bool,
}

impl ReductionCertificate {
    fn t_power(&self, i: u32) -> KPoly {
        let t = Poly::linear(RatFunc::one(), RatFunc::constant(-self.gamma.clone()));
        t.pow(i)
    }

    /// `(k-γ)^m - L*(x) - sum_i λ_i (k-γ)^i`, which must vanish.
    pub fn residual(&self) -> KPoly {
        let combo = self
            .remainder
            .iter()
            .fold(KPoly::zero(), |acc, (i, l)| acc.add(&self.t_power(*i).scale(l)));
        self.t_power(self.m)
            .sub(&self.operator.adjoint_apply(&self.witness))
            .sub(&combo)
    }

    pub fn holds(&self) -> bool {
        self.residual().is_zero()
    }

    pub fn report(&self) -> CertificateReport {
        CertificateReport {
            coefficients: self.operator.coeffs().iter().map(kpoly_display).collect(),
            gamma: self.gamma.to_string(),
            m: self.m,
            witness: kpoly_display(&self.witness),
            remainder: self
                .remainder
                .iter()
                .map(|(i, l)| RemainderTerm { i: *i, lambda: l.to_string() })
                .collect(),
            identity_holds: self.holds(),
        }
    }
}

/// Greedy reduction of `(k-γ)^m` using reducers `(2(k-γ) + J)^s`.
///
/// Works in `t = k - γ`: each step picks `s = deg r - deg L` and cancels the
/// leading term of the running remainder `r` with `L*` of the reducer.
pub fn general_reduce(op: &ShiftOperator, gamma: &Rational, m: u32) -> Result<ReductionCertificate> {
    let d = match op.degree().d {
        Some(d) if d >= 0 => d as usize,
        Some(d) => return Err(Error::InvalidArgument(format!("operator degree {d} is negative"))),
        None => return Err(Error::NoDegree),
    };
    let nd = op.nondegeneracy()?;
    if let Some(&s) = nd.roots.first() {
        return Err(Error::Degenerate(s));
    }
    if !op.partibility_check(gamma) {
        return Err(Error::InvalidArgument(format!("no reflection symmetry about {gamma}")));
    }

    let g = RatFunc::constant(gamma.clone());
    let op_t = ShiftOperator::new(op.coeffs().iter().map(|a| a.shift(&g)).collect())?;
    let base = Poly::from_ints(&[op.order() as i64, 2]);

    let mut r = KPoly::monomial(RatFunc::one(), m as usize);
    let mut x_t = KPoly::zero();
    while let Some(deg) = r.degree().filter(|&deg| deg >= d) {
        let s = deg - d;
        let reducer = base.pow(s as u32);
        let image = op_t.adjoint_apply(&reducer);
        if image.degree().is_some_and(|e| e > deg) {
            return Err(Error::EliminationFailure(s));
        }
        let lead = image.coeff(deg);
        let factor = r.coeff(deg).try_div(&lead).map_err(|_| Error::EliminationFailure(s))?;
        x_t = x_t.add(&reducer.scale(&factor));
        r = r.sub(&image.scale(&factor));
    }

    let remainder = r
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as u32, c.clone()))
        .collect();
    Ok(ReductionCertificate {
        operator: op.clone(),
        gamma: gamma.clone(),
        m,
        witness: x_t.shift(&g.neg()),
        remainder,
    })
}

/// [`general_reduce`] for the symbolic Delannoy operator about `γ = -1/2`.
pub fn delannoy_reduce(sign: Sign, m: u32) -> Result<ReductionCertificate> {
    general_reduce(&delannoy_operator(sign, &RatFunc::z()), &ratio(-1, 2), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ZPoly;
    use crate::sequences::signed_delannoy;
    use proptest::prelude::*;

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(ZPoly::from_ints(n), ZPoly::from_ints(d)).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn e_values() {
        assert_eq!(e_coeff(1, 1).unwrap(), BigInt::from(1));
        assert_eq!(e_coeff(2, 1).unwrap(), BigInt::from(4));
        assert_eq!(e_coeff(3, 1).unwrap(), BigInt::from(9));
        assert_eq!(e_coeff(3, 2).unwrap(), BigInt::from(4));
        assert!(e_coeff(3, 0).is_err());
        assert!(e_coeff(3, 3).is_err());
        assert!(e_coeff(0, 1).is_err());
    }

    #[test]
    fn e_even_rows_are_even() {
        for v in 1..=10u64 {
            for e in e_row(2 * v) {
                assert_eq!(&e % 2, BigInt::from(0), "v={v}");
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        let c0 = adjoint_closed_form(0, Sign::Plus);
        assert_eq!(c0.terms.len(), 1);
        assert_eq!(c0.coeff(1), rf(&[0, -2], &[1]));
        let c1 = adjoint_closed_form(1, Sign::Plus);
        assert_eq!(c1.coeff(2), rf(&[0, -2], &[1]));
        assert_eq!(c1.coeff(0), RatFunc::from_int(2));
        let lead = adjoint_closed_form(6, Sign::Minus);
        assert_eq!(lead.coeff(7), rf(&[2, 2], &[1]));
    }

    #[test]
    fn closed_form_matches_adjoint() {
        for sign in Sign::BOTH {
            let op = delannoy_operator(sign, &RatFunc::z());
            for s in 0..=12u32 {
                let x = Poly::from_ints(&[3, 2]).pow(s);
                let combo = adjoint_closed_form(s, sign);
                assert!(combo.has_uniform_parity());
                assert_eq!(combo.to_kpoly(), op.adjoint_apply(&x), "s={s} sign={sign}");
            }
        }
    }

    #[test]
    fn c_worked_values() {
        let (c, ct) = c_constants(3);
        assert_eq!(c[0], RatFunc::one());
        assert_eq!(ct[0], RatFunc::one());
        assert_eq!(c[1], rf(&[1], &[0, 1]));
        assert_eq!(c[2], rf(&[9, 4], &[0, 0, 1]));
        assert_eq!(c[3], rf(&[225, 180, 16], &[0, 0, 0, 1]));
        assert_eq!(ct[1], rf(&[-1], &[1, 1]));
        assert_eq!(ct[2], rf(&[5, -4], &[1, 2, 1]));
    }

    #[test]
    fn y_worked_values() {
        let (y, yt) = y_polys(1);
        assert_eq!(y[0].to_kpoly(), Poly::constant(ratio(-1, 2)));
        assert_eq!(yt[0].to_kpoly(), Poly::constant(ratio(1, 4)));
        // -(2k+3)^2/2 - 2 and (2k+3)^2/4 - 1/2
        assert_eq!(y[1].coeff(2), ratio(-1, 2));
        assert_eq!(y[1].coeff(0), rat(-2));
        assert_eq!(yt[1].coeff(2), ratio(1, 4));
        assert_eq!(yt[1].coeff(0), ratio(-1, 2));
        assert_eq!(
            y[1].to_kpoly(),
            Poly::from_coeffs(vec![ratio(-13, 2), rat(-6), rat(-2)])
        );
    }

    #[test]
    fn y_solves_adjoint_equation_at_z_one() {
        let (y, yt) = y_polys(6);
        let lift = |p: &Poly<Rational>| p.map(|c| RatFunc::constant(c.clone()));
        for (sign, ys) in [(Sign::Plus, &y), (Sign::Minus, &yt)] {
            let op = delannoy_operator(sign, &RatFunc::from_int(1));
            for (v, yv) in ys.iter().enumerate() {
                let target = Poly::from_ints(&[1, 2]).pow(2 * v as u32 + 1);
                assert_eq!(op.adjoint_apply(&lift(&yv.to_kpoly())), target, "v={v} sign={sign}");
            }
        }
    }

    #[test]
    fn rho_worked_values() {
        let (rho, rho_t) = rho_constants(4).unwrap();
        assert_eq!(rho, ints(&[1, 5, 105, 4909, 406097]));
        assert_eq!(rho_t, ints(&[0, 2, -12, 22, 2216]));
    }

    #[test]
    fn table_invariants() {
        let t = ConstantTable::build(10).unwrap();
        for v in 0..=10 {
            assert_eq!(&t.rho[v] % 2, BigInt::from(1), "rho_{v}");
            assert_eq!(&t.rho_tilde[v] % 2, BigInt::from(0), "rho~_{v}");
            assert_eq!(t.rho[v], -&t.s0[v]);
            assert_eq!(t.rho_tilde[v], &t.s1_tilde[v] * 2);
        }
        assert_eq!(t.c_cleared[2], ints(&[9, 4]));
        assert_eq!(t.c_tilde_cleared[2], ints(&[5, -4]));
        let rows = t.rows();
        assert_eq!(rows[2].c, "(4*z + 9)/z^2");
        assert_eq!(rows[1].c_tilde, "-1/(z + 1)");
    }

    #[test]
    fn shared_table_grows() {
        let small = ConstantTable::shared(2).unwrap();
        assert!(small.v_max() >= 2);
        let big = ConstantTable::shared(5).unwrap();
        assert!(big.v_max() >= 5);
        assert_eq!(big.rho[2], BigInt::from(105));
    }

    #[test]
    fn y_reflection_symmetry() {
        let (y, yt) = y_polys(8);
        for p in y.iter().chain(&yt) {
            let k = p.to_kpoly();
            assert_eq!(k.shift_by(-1), k.shift_by(-2).reflect());
        }
    }

    #[test]
    fn combo_evaluation_paths_agree() {
        let (y, yt) = y_polys(5);
        for p in y.iter().chain(&yt) {
            let k = p.to_kpoly();
            assert_eq!(p.at_minus_one(), k.eval(&rat(-1)));
            assert_eq!(p.derivative().to_kpoly(), k.derivative());
        }
    }

    #[test]
    fn reduce_trivial_and_odd() {
        let cert = delannoy_reduce(Sign::Plus, 0).unwrap();
        assert!(cert.witness.is_zero());
        assert_eq!(cert.remainder.get(&0), Some(&RatFunc::one()));
        let cert = delannoy_reduce(Sign::Plus, 1).unwrap();
        assert!(cert.remainder.is_empty());
        assert!(cert.holds());
    }

    #[test]
    fn reduce_square_recovers_c1() {
        for (sign, v1) in [(Sign::Plus, rf(&[1], &[0, 1])), (Sign::Minus, rf(&[-1], &[1, 1]))] {
            let cert = delannoy_reduce(sign, 2).unwrap();
            assert!(cert.holds());
            let lambda = cert.remainder.get(&0).unwrap();
            assert_eq!(lambda.mul(&RatFunc::from_int(4)), v1);
        }
    }

    #[test]
    fn reduce_even_powers_recover_c_v() {
        // (2k+1)^{2v} ≡ c_v (2k+1)^0, and (2k+1)^{2v} = 4^v (k+1/2)^{2v}
        let (c, ct) = c_constants(6);
        for v in 0..=6u32 {
            for (sign, cs) in [(Sign::Plus, &c), (Sign::Minus, &ct)] {
                let cert = delannoy_reduce(sign, 2 * v).unwrap();
                assert!(cert.holds());
                let scaled = cert.remainder.get(&0).unwrap().mul(&RatFunc::from_int(4i64.pow(v)));
                assert_eq!(scaled, cs[v as usize], "v={v} sign={sign}");
            }
        }
    }

    #[test]
    fn reduce_with_shifted_center() {
        let op = delannoy_operator(Sign::Plus, &RatFunc::z());
        let shifted =
            ShiftOperator::new(op.coeffs().iter().map(|a| a.shift_by(-3)).collect()).unwrap();
        let cert = general_reduce(&shifted, &ratio(5, 2), 5).unwrap();
        assert!(cert.holds());
        assert!(cert.remainder.is_empty());
    }

    #[test]
    fn reduce_rejects_bad_center() {
        assert!(general_reduce(&delannoy_operator(Sign::Plus, &RatFunc::z()), &rat(0), 2).is_err());
        let degenerate = delannoy_operator(Sign::Plus, &RatFunc::from_int(0));
        assert!(general_reduce(&degenerate, &ratio(-1, 2), 2).is_err());
    }

    #[test]
    fn remainder_sums_match_weighted_sums() {
        // sum_{k<n} (2k+1)^2 D_k(z) - c_1 sum D_k(z) is the boundary term
        // n(x(n-1)D_{n-1} - x(n-2)D_n) for the witness scaled by 4
        let cert = delannoy_reduce(Sign::Plus, 2).unwrap();
        let x4 = cert.witness.scale(&RatFunc::from_int(4));
        for z in [1i64, 2, -3] {
            let zr = rat(z);
            let d: Vec<Rational> = signed_delannoy(&zr, Sign::Plus).take(40).collect();
            let x = x4.try_map(|c| c.eval(&zr)).unwrap();
            let c1 = rat(1) / zr.clone();
            for n in 1..=38usize {
                let lhs: Rational = (0..n)
                    .map(|k| rat((2 * k as i64 + 1).pow(2)) * &d[k])
                    .fold(rat(0), |a, b| a + b)
                    - &c1 * d[..n].iter().fold(rat(0), |a, b| a + b);
                let ni = n as i64;
                let rhs = rat(ni) * (x.eval(&rat(ni - 1)) * &d[n - 1] - x.eval(&rat(ni - 2)) * &d[n]);
                assert_eq!(lhs, rhs, "z={z} n={n}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn certificates_hold(m in 0u32..=14, minus in any::<bool>()) {
            let sign = if minus { Sign::Minus } else { Sign::Plus };
            let cert = delannoy_reduce(sign, m).unwrap();
            prop_assert!(cert.holds());
            prop_assert!(cert.remainder.keys().all(|i| (*i as i64) < 1 && i % 2 == m % 2));
        }
    }
}
