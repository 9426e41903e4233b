//! One test per acceptance criterion. Each prints a single PASS/FAIL line
//! with its elapsed time against a pinned budget. All comparisons are exact.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use delannoy_core::arith::{rat, Poly, RatFunc, Ring, ZPoly};
use delannoy_core::operator::{boundary_sum_identity, delannoy_operator, KPoly};
use delannoy_core::reduction::{adjoint_closed_form, c_constants, rho_constants, y_polys, ConstantTable};
use delannoy_core::sequences::{delannoy_direct, schroder_direct, Sign};
use delannoy_core::verify::{
    run_sweep, verify_power2_lemmas, ClaimId, CongruenceReport, Status, Summary, SweepOptions, SweepSpec,
    VerifyContext,
};

const SEED: u64 = 0x5eed_de1a;

fn report(id: u32, name: &str, budget_s: u64, start: Instant, ok: bool, detail: &str) {
    let elapsed = start.elapsed();
    let in_time = elapsed <= Duration::from_secs(budget_s);
    let verdict = if ok && in_time { "PASS" } else { "FAIL" };
    println!(
        "{verdict} criterion {id:>2} {name}: {detail}; {:.2}s of {budget_s}s",
        elapsed.as_secs_f64()
    );
    assert!(ok, "criterion {id} failed: {detail}");
    assert!(in_time, "criterion {id} exceeded {budget_s}s: {:.2}s", elapsed.as_secs_f64());
}

fn rf(num: &[i64], den: &[i64]) -> RatFunc {
    RatFunc::new(ZPoly::from_ints(num), ZPoly::from_ints(den)).unwrap()
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn sweep(claim: ClaimId, edit: impl FnOnce(&mut SweepSpec), ctx: &VerifyContext) -> Vec<CongruenceReport> {
    let mut spec = SweepSpec::default_for(claim);
    edit(&mut spec);
    run_sweep(&spec, ctx, SweepOptions::default()).unwrap()
}

#[test]
fn criterion_01_constant_tables() {
    let start = Instant::now();
    let (c, ct) = c_constants(2);
    let (rho, rho_t) = rho_constants(2).unwrap();
    let ok = c[1] == rf(&[1], &[0, 1])
        && c[2] == rf(&[9, 4], &[0, 0, 1])
        && ct[1] == rf(&[-1], &[1, 1])
        && ct[2] == rf(&[5, -4], &[1, 2, 1])
        && rho == ints(&[1, 5, 105])
        && rho_t == ints(&[0, 2, -12]);
    let detail = format!("c_2 = {}, c~_2 = {}, rho = {rho:?}, rho~ = {rho_t:?}", c[2], ct[2]);
    report(1, "constant tables", 1, start, ok, &detail);
}

#[test]
fn criterion_02_closed_form_equivalence() {
    let start = Instant::now();
    let mut checked = 0;
    let mut ok = true;
    for sign in Sign::BOTH {
        let op = delannoy_operator(sign, &RatFunc::z());
        for s in 0..=12u32 {
            let x: KPoly = Poly::from_ints(&[3, 2]).pow(s);
            ok &= adjoint_closed_form(s, sign).to_kpoly() == op.adjoint_apply(&x);
            checked += 1;
        }
    }
    report(2, "closed form of the adjoint", 5, start, ok, &format!("{checked} (s, eps) pairs equal"));
}

#[test]
fn criterion_03_boundary_identity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut mismatches = 0;
    for _ in 0..200 {
        let deg = rng.gen_range(0..=6);
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-10..=10)).collect();
        let x = KPoly::from_ints(&coeffs);
        let n = rng.gen_range(1..=50u64);
        let z = rat(rng.gen_range(-3..=3));
        let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        let (lhs, rhs) = boundary_sum_identity(&x, n, &z, sign).unwrap();
        if lhs != rhs {
            mismatches += 1;
        }
    }
    report(3, "boundary sum identity", 30, start, mismatches == 0, &format!("200 random instances, {mismatches} mismatches"));
}

fn sweep_criterion(id: u32, name: &str, claim: ClaimId, budget_s: u64) {
    let start = Instant::now();
    let ctx = VerifyContext::new(5).unwrap();
    let reports = sweep(claim, |_| {}, &ctx);
    let s = Summary::of(&reports);
    report(id, name, budget_s, start, s.failed == 0 && s.verified > 0, &s.to_string());
}

#[test]
fn criterion_04_modulus_n_sweep() {
    sweep_criterion(4, "even powers mod n", ClaimId::EvenPowerModN, 120);
}

#[test]
fn criterion_05_prime_sweep() {
    sweep_criterion(5, "even powers mod p", ClaimId::EvenPowerModP, 300);
}

#[test]
fn criterion_06_power_of_two_sweep() {
    let start = Instant::now();
    let ctx = VerifyContext::new(4).unwrap();
    let reports = sweep(ClaimId::OddPowerSuper, |_| {}, &ctx);
    let s = Summary::of(&reports);
    // n = 4, eps = -1, v = 1 is the case 2 n^2 mod n^3
    let gz = reports
        .iter()
        .find(|r| r.params.a == Some(2) && r.params.v == Some(1) && r.params.eps == Some(-1))
        .map(|r| r.status == Status::Verified && r.rhs.as_deref() == Some("32"))
        .unwrap_or(false);
    let ok = s.failed == 0 && s.verified == 12 * 5 * 2 && gz;
    report(6, "odd powers mod n^3", 600, start, ok, &format!("{s}, rho~_1 = 2 case verified: {gz}"));
}

#[test]
fn criterion_07_two_adic_lemmas() {
    let start = Instant::now();
    let spot = verify_power2_lemmas(2);
    let lhs = |c: ClaimId| spot.iter().find(|r| r.claim == c).and_then(|r| r.lhs.clone());
    let spot_ok = lhs(ClaimId::DelannoyPow2).as_deref() == Some("1")
        && lhs(ClaimId::DelannoyPow2Plus1).as_deref() == Some("19")
        && lhs(ClaimId::SchroderPow2).as_deref() == Some("26")
        && lhs(ClaimId::DelannoyPow2Minus1).as_deref() == Some("63");
    let all: Vec<CongruenceReport> = (2..=14).flat_map(verify_power2_lemmas).collect();
    let s = Summary::of(&all);
    let ok = spot_ok && s.failed == 0 && s.verified == 13 * 5;
    report(7, "2-adic lemmas", 60, start, ok, &format!("a in 2..=14: {s}; spot values ok: {spot_ok}"));
}

#[test]
fn criterion_08_property_suites() {
    let start = Instant::now();
    let mut failures = Vec::new();

    // integrality of the cleared constants is checked while building
    let table = match ConstantTable::build(10) {
        Ok(t) => t,
        Err(e) => {
            report(8, "property suites", 60, start, false, &e.to_string());
            return;
        }
    };
    for v in 0..=10 {
        if &table.rho[v] % 2 != BigInt::from(1) {
            failures.push(format!("rho_{v} even"));
        }
        if &table.rho_tilde[v] % 2 != BigInt::from(0) {
            failures.push(format!("rho~_{v} odd"));
        }
        if table.rho[v] != -&table.s0[v] || table.rho_tilde[v] != &table.s1_tilde[v] * 2 {
            failures.push(format!("rho paths disagree at v={v}"));
        }
    }

    let (y, yt) = y_polys(8);
    for (v, p) in y.iter().chain(&yt).enumerate() {
        let k = p.to_kpoly();
        if k.shift_by(-1) != k.shift_by(-2).reflect() {
            failures.push(format!("reflection fails for entry {v}"));
        }
    }

    let z = RatFunc::z();
    let two_z = z.add(&z);
    for n in 1..=100u64 {
        let lhs = delannoy_direct(n + 1, &z).sub(&delannoy_direct(n - 1, &z));
        let rhs = two_z.mul(&RatFunc::from_int(2 * n as i64 + 1)).mul(&schroder_direct(n, &z));
        if lhs != rhs {
            failures.push(format!("D/S identity fails at n={n}"));
        }
    }

    let detail = if failures.is_empty() {
        "integrality, parity, two-path agreement (v<=10), reflection (v<=8), D/S identity (n<=100)".to_string()
    } else {
        failures.join(", ")
    };
    report(8, "property suites", 60, start, failures.is_empty(), &detail);
}

#[test]
fn criterion_09_trinomial_sweep() {
    let start = Instant::now();
    let ctx = VerifyContext::new(0).unwrap();
    let reports = sweep(ClaimId::TrinomialSum, |_| {}, &ctx);
    let s = Summary::of(&reports);
    // only m = 3 at p = 3 may be excluded
    let ok = s.failed == 0 && s.not_applicable == 49 && s.verified > 0;
    report(9, "trinomial congruence", 60, start, ok, &s.to_string());
}

#[test]
fn criterion_10_negative_control() {
    let start = Instant::now();
    let ctx = VerifyContext::new(4).unwrap().with_rho_override(Sign::Plus, 1, BigInt::from(7));
    let reports = sweep(ClaimId::OddPowerSuper, |_| {}, &ctx);
    let failed: Vec<_> = reports.iter().filter(|r| r.status == Status::Failed).collect();
    let populated = failed.iter().all(|r| r.lhs.is_some() && r.rhs.is_some() && r.lhs != r.rhs);
    let ok = !failed.is_empty() && populated;
    report(10, "perturbed rho_1 = 7 is caught", 600, start, ok, &format!("{} FAILED reports, residues populated: {populated}", failed.len()));
}
