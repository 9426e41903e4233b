use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::claims::{
    verify_power2_lemmas, verify_sun_trinomial, verify_theorem_1_1, verify_theorem_1_2,
    verify_theorem_1_3, VerifyContext,
};
use super::report::{ClaimId, CongruenceReport, Params};
use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::sequences::Sign;

/// Parses `"lo..hi"` (inclusive), a comma list, or a single integer.
pub fn parse_range(s: &str) -> Result<Vec<i64>> {
    let bad = || Error::BadRange(s.to_string());
    let s = s.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    let mut out = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// [`parse_range`] restricted to nonnegative values.
pub fn parse_natural_range(s: &str) -> Result<Vec<u64>> {
    parse_range(s)?
        .into_iter()
        .map(|x| u64::try_from(x).map_err(|_| Error::BadRange(s.to_string())))
        .collect()
}

/// Parses `"1"`, `"-1"`, `"+1"` or `"both"`.
pub fn parse_signs(s: &str) -> Result<Vec<Sign>> {
    match s.trim() {
        "both" | "all" | "1,-1" | "-1,1" => Ok(Sign::BOTH.to_vec()),
        "1" | "+1" | "+" => Ok(vec![Sign::Plus]),
        "-1" | "-" => Ok(vec![Sign::Minus]),
        _ => Err(Error::BadRange(s.to_string())),
    }
}

/// Odd primes in a list.
pub fn odd_primes(values: &[u64]) -> Vec<u64> {
    values
        .iter()
        .copied()
        .filter(|&p| p > 2 && is_prime(&BigInt::from(p)))
        .collect()
}

/// One claim and the parameter ranges it is swept over. Ranges a claim does
/// not use are ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub claim: ClaimId,
    pub n: Vec<u64>,
    /// Candidate primes; non-primes are filtered out when tasks are built.
    pub p: Vec<u64>,
    pub a: Vec<u32>,
    pub z: Vec<i64>,
    pub v: Vec<u32>,
    pub eps: Vec<Sign>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
    pub m: Vec<i64>,
}

impl SweepSpec {
    /// The sweep used for acceptance runs of `claim`.
    pub fn default_for(claim: ClaimId) -> Self {
        let mut spec = SweepSpec {
            claim,
            n: Vec::new(),
            p: Vec::new(),
            a: Vec::new(),
            z: Vec::new(),
            v: Vec::new(),
            eps: Sign::BOTH.to_vec(),
            b: Vec::new(),
            c: Vec::new(),
            m: Vec::new(),
        };
        match claim {
            ClaimId::EvenPowerModN => {
                spec.n = (1..=99).collect();
                spec.z = (-6..=6).collect();
                spec.v = (0..=5).collect();
            }
            ClaimId::EvenPowerModP => {
                spec.p = (3..=199).collect();
                spec.z = (-10..=10).collect();
                spec.v = (0..=5).collect();
            }
            ClaimId::OddPowerSuper => {
                spec.a = (1..=12).collect();
                spec.v = (0..=4).collect();
            }
            ClaimId::TrinomialSum => {
                spec.p = (3..=97).collect();
                spec.b = (-3..=3).collect();
                spec.c = (-3..=3).collect();
                spec.m = vec![-2, -1, 1, 2, 3];
            }
            _ => spec.a = (2..=14).collect(),
        }
        spec
    }

    /// Largest `v` any task needs.
    pub fn v_max(&self) -> usize {
        self.v.iter().copied().max().unwrap_or(0) as usize
    }

    fn tasks(&self) -> Vec<Task> {
        let mut out = Vec::new();
        match self.claim {
            ClaimId::EvenPowerModN | ClaimId::EvenPowerModP => {
                let first = if self.claim == ClaimId::EvenPowerModN { self.n.clone() } else { odd_primes(&self.p) };
                for &x in &first {
                    for &z in &self.z {
                        for &v in &self.v {
                            for &sign in &self.eps {
                                out.push(match self.claim {
                                    ClaimId::EvenPowerModN => Task::ModN { n: x, z, v, sign },
                                    _ => Task::ModP { p: x, z, v, sign },
                                });
                            }
                        }
                    }
                }
            }
            ClaimId::OddPowerSuper => {
                for &a in &self.a {
                    for &v in &self.v {
                        for &sign in &self.eps {
                            out.push(Task::Super { a, v, sign });
                        }
                    }
                }
            }
            ClaimId::TrinomialSum => {
                for p in odd_primes(&self.p) {
                    for &b in &self.b {
                        for &c in &self.c {
                            for &m in &self.m {
                                out.push(Task::Trinomial { p, b, c, m });
                            }
                        }
                    }
                }
            }
            claim => {
                for &a in &self.a {
                    out.push(Task::Pow2 { a, claim });
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
enum Task {
    ModN { n: u64, z: i64, v: u32, sign: Sign },
    ModP { p: u64, z: i64, v: u32, sign: Sign },
    Super { a: u32, v: u32, sign: Sign },
    Pow2 { a: u32, claim: ClaimId },
    Trinomial { p: u64, b: i64, c: i64, m: i64 },
}

impl Task {
    fn run(self, ctx: &VerifyContext) -> Result<Vec<CongruenceReport>> {
        Ok(match self {
            Task::ModN { n, z, v, sign } => vec![verify_theorem_1_1(ctx, n, z, v, sign)?],
            Task::ModP { p, z, v, sign } => vec![verify_theorem_1_2(ctx, p, z, v, sign)?],
            Task::Super { a, v, sign } => vec![verify_theorem_1_3(ctx, a, v, sign)?],
            Task::Pow2 { a, claim } => verify_power2_lemmas(a).into_iter().filter(|r| r.claim == claim).collect(),
            Task::Trinomial { p, b, c, m } => match verify_sun_trinomial(p, b, c, m) {
                Ok(r) => vec![r],
                // p | m breaks the coprimality precondition
                Err(Error::InvalidArgument(_)) => {
                    let params = Params { p: Some(p), b: Some(b), c: Some(c), m: Some(m), ..Params::default() };
                    vec![CongruenceReport::not_applicable(ClaimId::TrinomialSum, params)]
                }
                Err(e) => return Err(e),
            },
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepOptions {
    /// Worker threads; `0` means one per available core.
    pub jobs: usize,
    /// Record per-report wall time. Off by default so output is reproducible.
    pub timings: bool,
}

/// Runs every tuple of `spec` and returns the reports sorted by claim and
/// parameters, independent of the thread count.
pub fn run_sweep(spec: &SweepSpec, ctx: &VerifyContext, opts: SweepOptions) -> Result<Vec<CongruenceReport>> {
    let tasks = spec.tasks();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let batches: Vec<Vec<CongruenceReport>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|task| {
                let start = Instant::now();
                let mut reports = task.run(ctx)?;
                if opts.timings {
                    let us = start.elapsed().as_micros() as u64;
                    for r in &mut reports {
                        r.wall_time_us = Some(us);
                    }
                }
                Ok(reports)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut reports: Vec<CongruenceReport> = batches.into_iter().flatten().collect();
    reports.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
    Ok(reports)
}

/// Runs several specs with one shared context.
pub fn run_sweeps(specs: &[SweepSpec], ctx: &VerifyContext, opts: SweepOptions) -> Result<Vec<CongruenceReport>> {
    let mut out = Vec::new();
    for spec in specs {
        out.extend(run_sweep(spec, ctx, opts)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::report::{Status, Summary};

    #[test]
    fn range_syntax() {
        assert_eq!(parse_range("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_range("-2..=1").unwrap(), vec![-2, -1, 0, 1]);
        assert_eq!(parse_range("5, 3,3").unwrap(), vec![3, 5]);
        assert_eq!(parse_range("-6").unwrap(), vec![-6]);
        for bad in ["", "4..1", "a..b", "1,,2", "1..2..3"] {
            assert!(parse_range(bad).is_err(), "{bad}");
        }
        assert!(parse_natural_range("-1..2").is_err());
        assert_eq!(parse_signs("both").unwrap().len(), 2);
        assert!(parse_signs("2").is_err());
    }

    #[test]
    fn prime_filter() {
        assert_eq!(odd_primes(&(0..=20).collect::<Vec<_>>()), vec![3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn empty_intersection_is_empty() {
        let mut spec = SweepSpec::default_for(ClaimId::EvenPowerModP);
        spec.p = vec![4, 6, 8];
        let ctx = VerifyContext::new(5).unwrap();
        let reports = run_sweep(&spec, &ctx, SweepOptions::default()).unwrap();
        assert!(reports.is_empty());
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let mut spec = SweepSpec::default_for(ClaimId::EvenPowerModN);
        spec.n = (1..=15).collect();
        spec.z = vec![-2, 1, 3];
        spec.v = vec![0, 2];
        let ctx = VerifyContext::new(2).unwrap();
        let one = run_sweep(&spec, &ctx, SweepOptions { jobs: 1, timings: false }).unwrap();
        let many = run_sweep(&spec, &ctx, SweepOptions { jobs: 4, timings: false }).unwrap();
        assert_eq!(one, many);
        assert_eq!(one.len(), 15 * 3 * 2 * 2);
        assert_eq!(Summary::of(&one).failed, 0);
        assert!(one.iter().all(|r| r.wall_time_us.is_none()));
    }

    #[test]
    fn thm13_count_and_perturbation() {
        let mut spec = SweepSpec::default_for(ClaimId::OddPowerSuper);
        spec.a = (1..=6).collect();
        spec.v = (0..=3).collect();
        let ctx = VerifyContext::new(3).unwrap();
        let reports = run_sweep(&spec, &ctx, SweepOptions::default()).unwrap();
        assert_eq!(Summary::of(&reports).verified, 48);

        let bad = ctx.with_rho_override(Sign::Plus, 1, BigInt::from(7));
        let reports = run_sweep(&spec, &bad, SweepOptions::default()).unwrap();
        let failed: Vec<_> = reports.iter().filter(|r| r.status == Status::Failed).collect();
        assert!(!failed.is_empty());
        assert!(failed.iter().all(|r| r.params.v == Some(1) && r.params.eps == Some(1)));
    }

    #[test]
    fn trinomial_sweep_marks_divisible_m() {
        let mut spec = SweepSpec::default_for(ClaimId::TrinomialSum);
        spec.p = vec![3];
        let reports = run_sweep(&spec, &VerifyContext::new(0).unwrap(), SweepOptions::default()).unwrap();
        let s = Summary::of(&reports);
        assert_eq!(s.failed, 0);
        assert_eq!(s.not_applicable, 7 * 7);
    }
}
