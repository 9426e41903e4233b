use std::collections::BTreeMap;
use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

use delannoy_core::reduction::ConstantRow;
use delannoy_core::verify::{ClaimId, CongruenceReport, Observation, Status, Summary};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Serialize)]
struct Term<'a> {
    n: u64,
    value: &'a str,
}

pub fn write_terms(w: &mut impl Write, terms: &[(u64, String)], format: Format) -> io::Result<()> {
    match format {
        Format::Text => {
            let line: Vec<&str> = terms.iter().map(|(_, v)| v.as_str()).collect();
            writeln!(w, "{}", line.join(" "))
        }
        Format::Json => {
            let rows: Vec<Term> = terms.iter().map(|(n, v)| Term { n: *n, value: v }).collect();
            writeln!(w, "{}", serde_json::to_string(&rows)?)
        }
        Format::Csv => {
            let mut out = csv::Writer::from_writer(w);
            out.write_record(["n", "value"])?;
            for (n, v) in terms {
                out.write_record([n.to_string().as_str(), v])?;
            }
            out.flush()
        }
    }
}

pub fn write_constants_text(w: &mut impl Write, rows: &[ConstantRow]) -> io::Result<()> {
    let header = ["v", "c_v", "c~_v", "rho_v", "rho~_v"];
    let cells: Vec<[String; 5]> = rows
        .iter()
        .map(|r| [r.v.to_string(), r.c.clone(), r.c_tilde.clone(), r.rho.clone(), r.rho_tilde.clone()])
        .collect();
    let mut widths = header.map(str::len);
    for row in &cells {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cols: [&str; 5]| -> String {
        cols.iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(w, "{}", line(header))?;
    for row in &cells {
        writeln!(w, "{}", line([&row[0], &row[1], &row[2], &row[3], &row[4]].map(String::as_str)))?;
    }
    Ok(())
}

pub fn write_constants_csv(w: impl Write, rows: &[ConstantRow]) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()
}

fn csv_row(r: &CongruenceReport) -> [String; 6] {
    [
        r.claim.to_string(),
        r.params.compact(),
        r.status.to_string(),
        r.lhs.clone().unwrap_or_default(),
        r.rhs.clone().unwrap_or_default(),
        r.modulus.clone().unwrap_or_default(),
    ]
}

pub fn write_reports(w: &mut impl Write, reports: &[CongruenceReport], format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in reports {
                writeln!(w, "{}", serde_json::to_string(r)?)?;
            }
            Ok(())
        }
        Format::Csv => {
            let mut out = csv::Writer::from_writer(w);
            let with_time = reports.iter().any(|r| r.wall_time_us.is_some());
            let mut header = vec!["claim", "params", "status", "lhs", "rhs", "modulus"];
            if with_time {
                header.push("wall_time_us");
            }
            out.write_record(&header)?;
            for r in reports {
                let mut row = csv_row(r).to_vec();
                if with_time {
                    row.push(r.wall_time_us.map(|t| t.to_string()).unwrap_or_default());
                }
                out.write_record(&row)?;
            }
            out.flush()
        }
        Format::Text => {
            let mut per_claim: BTreeMap<ClaimId, Vec<CongruenceReport>> = BTreeMap::new();
            for r in reports {
                per_claim.entry(r.claim).or_default().push(r.clone());
            }
            let width = per_claim.keys().map(|c| c.name().len()).max().unwrap_or(0);
            for (claim, rs) in &per_claim {
                writeln!(w, "{:<width$}  {}", claim.name(), Summary::of(rs))?;
            }
            for r in reports.iter().filter(|r| r.status == Status::Failed) {
                let [claim, params, status, lhs, rhs, modulus] = csv_row(r);
                writeln!(w, "{status} {claim} {params}: lhs={lhs} rhs={rhs} mod {modulus}")?;
            }
            Ok(())
        }
    }
}

pub fn write_observations(w: &mut impl Write, obs: &[Observation], format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            for o in obs {
                writeln!(w, "{}", serde_json::to_string(o)?)?;
            }
            Ok(())
        }
        Format::Csv => {
            let mut out = csv::Writer::from_writer(w);
            for o in obs {
                out.serialize(o)?;
            }
            out.flush()
        }
        Format::Text => {
            for o in obs {
                let mark = if o.agrees { "same" } else { "differs" };
                writeln!(w, "n={} v={} eps={}  lhs={} rhs={} mod {}  {mark}", o.n, o.v, o.eps, o.lhs, o.rhs, o.modulus)?;
            }
            Ok(())
        }
    }
}
