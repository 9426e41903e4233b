//! `delannoy`: sequences, operator inspection, constant tables, reduction
//! certificates and congruence sweeps from the command line.

mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use delannoy_core::arith::{parse_rational, RatFunc};
use delannoy_core::operator::delannoy_operator;
use delannoy_core::reduction::{delannoy_reduce, ConstantTable};
use delannoy_core::sequences::{Family, SequenceSpec, Sign};
use delannoy_core::verify::{
    observe_theorem_1_3, parse_natural_range, parse_range, parse_signs, run_sweeps, ClaimId, SweepOptions,
    SweepSpec, Summary, VerifyContext,
};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "delannoy", version, about = "Delannoy sums, reduction constants and congruence sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print terms of a sequence
    Seq(SeqArgs),
    /// Inspect an annihilating operator
    #[command(subcommand)]
    Op(OpCommand),
    /// Print the table of reduction constants
    Constants(ConstantsArgs),
    /// Reduce (k+1/2)^m modulo the adjoint image and print the certificate
    Reduce(ReduceArgs),
    /// Check congruences over parameter ranges
    Verify(Box<VerifyArgs>),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyName {
    Delannoy,
    Trinomial,
    Schmidt,
    Schroder,
}

#[derive(Args, Debug)]
struct SeqArgs {
    family: FamilyName,
    /// Index range, e.g. 0..10
    #[arg(long, default_value = "0..10")]
    n: String,
    /// Evaluation point, an integer or a fraction
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    z: String,
    /// Sign ε in ε^k F_k
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    eps: String,
    /// Trinomial parameter b
    #[arg(long, allow_hyphen_values = true)]
    b: Option<i64>,
    /// Trinomial parameter c
    #[arg(long, allow_hyphen_values = true)]
    c: Option<i64>,
    /// Schmidt order r
    #[arg(long, default_value_t = 2)]
    r: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum OpCommand {
    /// Degree, indicial data and symmetry center of the Delannoy operator
    Inspect {
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        eps: String,
        /// `z` for the symbolic operator, or a rational value
        #[arg(long, default_value = "z", allow_hyphen_values = true)]
        z: String,
    },
}

#[derive(Args, Debug)]
struct ConstantsArgs {
    #[arg(long, default_value_t = 4)]
    vmax: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    #[arg(long)]
    m: u32,
    #[arg(long, alias = "eps", default_value = "1", allow_hyphen_values = true)]
    epsilon: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// `all` runs every claim over its default ranges
    target: Option<String>,
    /// Claim ids (thm1.1, thm1.2, thm1.3, d2a, s2a, d2a+1, d2a-1,
    /// d2a-identity, sun) or the group `pow2`; repeat or separate by commas
    #[arg(long, value_delimiter = ',')]
    claim: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    /// 1, -1 or both
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    /// Worker threads; 0 uses every core
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write reports here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Evaluate the odd-power congruence at every n in --n; informational only
    #[arg(long)]
    exploratory: bool,
    /// Include per-report wall time (makes output nondeterministic)
    #[arg(long)]
    timings: bool,
    /// Replace one rho constant, as SIGN:V:VALUE
    #[arg(long, hide = true, allow_hyphen_values = true)]
    perturb_rho: Option<String>,
}

type CliResult<T> = Result<T, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Seq(args) => seq(args),
        Command::Op(OpCommand::Inspect { eps, z }) => inspect(&eps, &z),
        Command::Constants(args) => constants(args),
        Command::Reduce(args) => reduce(args),
        Command::Verify(args) => verify(*args),
    }
}

fn sign_arg(s: &str) -> CliResult<Sign> {
    match parse_signs(s).map_err(|e| e.to_string())?.as_slice() {
        [one] => Ok(*one),
        _ => Err(format!("expected a single sign, got `{s}`")),
    }
}

fn stdout_json(value: &impl serde::Serialize) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    println!("{text}");
    Ok(())
}

fn seq(args: SeqArgs) -> CliResult<ExitCode> {
    let range = parse_natural_range(&args.n).map_err(|e| e.to_string())?;
    let z = parse_rational(&args.z).ok_or_else(|| format!("bad value for z: `{}`", args.z))?;
    let sign = sign_arg(&args.eps)?;
    let family = match args.family {
        FamilyName::Delannoy => Family::Delannoy,
        FamilyName::Schroder => Family::Schroder,
        FamilyName::Schmidt => Family::Schmidt { r: args.r },
        FamilyName::Trinomial => match (args.b, args.c) {
            (Some(b), Some(c)) => Family::Trinomial { b: BigInt::from(b), c: BigInt::from(c) },
            _ => return Err("trinomial needs --b and --c".into()),
        },
    };
    let spec = SequenceSpec::new(family, z, sign).map_err(|e| e.to_string())?;
    let (lo, hi) = (range[0], *range.last().expect("nonempty"));
    let values = spec.terms(lo, hi);
    let picked: Vec<(u64, String)> = (lo..=hi)
        .zip(values)
        .filter(|(n, _)| range.binary_search(n).is_ok())
        .map(|(n, v)| (n, v.to_string()))
        .collect();
    output::write_terms(&mut io::stdout().lock(), &picked, args.format).map_err(|e| e.to_string())?;
    Ok(ExitCode::SUCCESS)
}

fn inspect(eps: &str, z: &str) -> CliResult<ExitCode> {
    let sign = sign_arg(eps)?;
    let z = if z == "z" {
        RatFunc::z()
    } else {
        RatFunc::constant(parse_rational(z).ok_or_else(|| format!("bad value for z: `{z}`"))?)
    };
    let report = delannoy_operator(sign, &z).inspect().map_err(|e| e.to_string())?;
    stdout_json(&report)?;
    Ok(ExitCode::SUCCESS)
}

fn constants(args: ConstantsArgs) -> CliResult<ExitCode> {
    let table = ConstantTable::build(args.vmax).map_err(|e| e.to_string())?;
    match args.format {
        Format::Json => stdout_json(&table.rows())?,
        Format::Csv => output::write_constants_csv(io::stdout().lock(), &table.rows()).map_err(|e| e.to_string())?,
        Format::Text => output::write_constants_text(&mut io::stdout().lock(), &table.rows()).map_err(|e| e.to_string())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn reduce(args: ReduceArgs) -> CliResult<ExitCode> {
    let sign = sign_arg(&args.epsilon)?;
    let cert = delannoy_reduce(sign, args.m).map_err(|e| e.to_string())?;
    stdout_json(&cert.report())?;
    Ok(ExitCode::SUCCESS)
}

fn selected_claims(args: &VerifyArgs) -> CliResult<Vec<ClaimId>> {
    let all = match args.target.as_deref() {
        None => false,
        Some("all") => true,
        Some(other) => return Err(format!("unknown verify target `{other}` (expected `all`)")),
    };
    if all || args.claim.is_empty() {
        if !all && !args.exploratory {
            return Err("choose claims with --claim, or run `verify all`".into());
        }
        return Ok(if all { ClaimId::ALL.to_vec() } else { vec![ClaimId::OddPowerSuper] });
    }
    let mut out = Vec::new();
    for name in &args.claim {
        if name == "pow2" {
            out.extend(ClaimId::POW2);
        } else {
            out.push(name.parse::<ClaimId>().map_err(|e| e.to_string())?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn build_spec(claim: ClaimId, args: &VerifyArgs) -> CliResult<SweepSpec> {
    let mut spec = SweepSpec::default_for(claim);
    let err = |e: delannoy_core::Error| e.to_string();
    let small = |v: Vec<u64>, what: &str| -> CliResult<Vec<u32>> {
        v.into_iter()
            .map(|x| u32::try_from(x).map_err(|_| format!("{what} value {x} too large")))
            .collect()
    };
    if let Some(s) = &args.n {
        spec.n = parse_natural_range(s).map_err(err)?;
    }
    if let Some(s) = &args.p {
        spec.p = parse_natural_range(s).map_err(err)?;
    }
    if let Some(s) = &args.a {
        spec.a = small(parse_natural_range(s).map_err(err)?, "a")?;
    }
    if let Some(s) = &args.z {
        spec.z = parse_range(s).map_err(err)?;
    }
    if let Some(s) = &args.v {
        spec.v = small(parse_natural_range(s).map_err(err)?, "v")?;
    }
    if let Some(s) = &args.eps {
        spec.eps = parse_signs(s).map_err(err)?;
    }
    if let Some(s) = &args.b {
        spec.b = parse_range(s).map_err(err)?;
    }
    if let Some(s) = &args.c {
        spec.c = parse_range(s).map_err(err)?;
    }
    if let Some(s) = &args.m {
        spec.m = parse_range(s).map_err(err)?;
    }
    Ok(spec)
}

fn parse_perturbation(s: &str) -> CliResult<(Sign, usize, BigInt)> {
    let parts: Vec<&str> = s.split(':').collect();
    let [sign, v, value] = parts.as_slice() else {
        return Err(format!("perturbation must be SIGN:V:VALUE, got `{s}`"));
    };
    let v = v.parse::<usize>().map_err(|_| format!("bad v in `{s}`"))?;
    let value = value.parse::<BigInt>().map_err(|_| format!("bad value in `{s}`"))?;
    Ok((sign_arg(sign)?, v, value))
}

fn report_sink(out: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| format!("{}: {e}", path.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn verify(args: VerifyArgs) -> CliResult<ExitCode> {
    let claims = selected_claims(&args)?;
    let specs = claims
        .iter()
        .map(|c| build_spec(*c, &args))
        .collect::<CliResult<Vec<_>>>()?;
    let v_max = specs.iter().map(SweepSpec::v_max).max().unwrap_or(0);
    let mut ctx = VerifyContext::new(v_max).map_err(|e| e.to_string())?;
    if let Some(p) = &args.perturb_rho {
        let (sign, v, value) = parse_perturbation(p)?;
        ctx = ctx.with_rho_override(sign, v, value);
    }

    if args.exploratory {
        if claims != [ClaimId::OddPowerSuper] {
            return Err("--exploratory only applies to thm1.3".into());
        }
        let spec = &specs[0];
        let mut observations = Vec::new();
        for &n in &spec.n {
            for &v in &spec.v {
                for &sign in &spec.eps {
                    observations.push(observe_theorem_1_3(&ctx, n, v, sign).map_err(|e| e.to_string())?);
                }
            }
        }
        let mut sink = report_sink(&args.out)?;
        output::write_observations(&mut sink, &observations, args.format).map_err(|e| e.to_string())?;
        sink.flush().map_err(|e| e.to_string())?;
        drop(sink);
        let agree = observations.iter().filter(|o| o.agrees).count();
        println!("observed={} agree={} differ={}", observations.len(), agree, observations.len() - agree);
        return Ok(ExitCode::SUCCESS);
    }

    let opts = SweepOptions { jobs: args.jobs, timings: args.timings };
    let reports = run_sweeps(&specs, &ctx, opts).map_err(|e| e.to_string())?;
    let mut sink = report_sink(&args.out)?;
    output::write_reports(&mut sink, &reports, args.format).map_err(|e| e.to_string())?;
    sink.flush().map_err(|e| e.to_string())?;
    drop(sink);
    let summary = Summary::of(&reports);
    println!("{summary}");
    Ok(if summary.failed > 0 { ExitCode::from(1) } else { ExitCode::SUCCESS })
}
