use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One checkable statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClaimId {
    /// Even-power sums modulo `n` against `c_v` times the plain sum.
    #[serde(rename = "thm1.1")]
    EvenPowerModN,
    /// Even-power sums modulo a prime against `c_v` times a Legendre symbol.
    #[serde(rename = "thm1.2")]
    EvenPowerModP,
    /// Odd-power sums modulo `n^3` for `n = 2^a`.
    #[serde(rename = "thm1.3")]
    OddPowerSuper,
    /// `D_{2^a} ≡ 1 (mod 4^{a+1})`.
    #[serde(rename = "d2a")]
    DelannoyPow2,
    /// `S_{2^a} ≡ 2 - 2^{a+1} (mod 2^{2a+1})`.
    #[serde(rename = "s2a")]
    SchroderPow2,
    /// `D_{2^a+1} ≡ 3 + 2^{a+2} (mod 4^{a+1})`.
    #[serde(rename = "d2a+1")]
    DelannoyPow2Plus1,
    /// `D_{2^a-1} ≡ -1 (mod 4^{a+1})`.
    #[serde(rename = "d2a-1")]
    DelannoyPow2Minus1,
    /// `D_{2^a-1} = D_{2^a+1} - 2(2^{a+1}+1) S_{2^a}` exactly.
    #[serde(rename = "d2a-identity")]
    Pow2Identity,
    /// Trinomial sums weighted by `m^{-k}` modulo a prime.
    #[serde(rename = "sun")]
    TrinomialSum,
}

impl ClaimId {
    pub const ALL: [ClaimId; 9] = [
        ClaimId::EvenPowerModN,
        ClaimId::EvenPowerModP,
        ClaimId::OddPowerSuper,
        ClaimId::DelannoyPow2,
        ClaimId::SchroderPow2,
        ClaimId::DelannoyPow2Plus1,
        ClaimId::DelannoyPow2Minus1,
        ClaimId::Pow2Identity,
        ClaimId::TrinomialSum,
    ];

    pub const POW2: [ClaimId; 5] = [
        ClaimId::DelannoyPow2,
        ClaimId::SchroderPow2,
        ClaimId::DelannoyPow2Plus1,
        ClaimId::DelannoyPow2Minus1,
        ClaimId::Pow2Identity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClaimId::EvenPowerModN => "thm1.1",
            ClaimId::EvenPowerModP => "thm1.2",
            ClaimId::OddPowerSuper => "thm1.3",
            ClaimId::DelannoyPow2 => "d2a",
            ClaimId::SchroderPow2 => "s2a",
            ClaimId::DelannoyPow2Plus1 => "d2a+1",
            ClaimId::DelannoyPow2Minus1 => "d2a-1",
            ClaimId::Pow2Identity => "d2a-identity",
            ClaimId::TrinomialSum => "sun",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClaimId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown claim `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "verified")]
    Verified,
    #[serde(rename = "FAILED")]
    Failed,
    #[serde(rename = "not-applicable")]
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Failed => "FAILED",
            Status::NotApplicable => "not-applicable",
        })
    }
}

/// Parameter tuple of a report. Only the fields a claim uses are set; the
/// derived ordering is the report sort order.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub z: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub v: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eps: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<i64>,
}

impl Params {
    /// `key=value` pairs joined by `;`, for flat formats.
    pub fn compact(&self) -> String {
        let fields: [(&str, Option<String>); 9] = [
            ("n", self.n.map(|x| x.to_string())),
            ("p", self.p.map(|x| x.to_string())),
            ("a", self.a.map(|x| x.to_string())),
            ("z", self.z.map(|x| x.to_string())),
            ("v", self.v.map(|x| x.to_string())),
            ("eps", self.eps.map(|x| x.to_string())),
            ("b", self.b.map(|x| x.to_string())),
            ("c", self.c.map(|x| x.to_string())),
            ("m", self.m.map(|x| x.to_string())),
        ];
        fields
            .iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| format!("{k}={v}")))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Outcome of checking one parameter tuple.
///
/// Residues are decimal strings in `[0, modulus)`; a modulus of `0` means
/// the two sides were compared as exact integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub claim: ClaimId,
    pub params: Params,
    pub status: Status,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub modulus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_us: Option<u64>,
}

impl CongruenceReport {
    /// Compares two residues already reduced into the same range.
    pub fn compare(claim: ClaimId, params: Params, lhs: BigInt, rhs: BigInt, modulus: BigInt) -> Self {
        let status = if lhs == rhs { Status::Verified } else { Status::Failed };
        CongruenceReport {
            claim,
            params,
            status,
            lhs: Some(lhs.to_string()),
            rhs: Some(rhs.to_string()),
            modulus: Some(modulus.to_string()),
            wall_time_us: None,
        }
    }

    pub fn not_applicable(claim: ClaimId, params: Params) -> Self {
        CongruenceReport {
            claim,
            params,
            status: Status::NotApplicable,
            lhs: None,
            rhs: None,
            modulus: None,
            wall_time_us: None,
        }
    }

    pub fn sort_key(&self) -> (ClaimId, &Params) {
        (self.claim, &self.params)
    }
}

/// Counts by status.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub verified: usize,
    pub failed: usize,
    pub not_applicable: usize,
}

impl Summary {
    pub fn of(reports: &[CongruenceReport]) -> Self {
        reports.iter().fold(Summary::default(), |mut s, r| {
            match r.status {
                Status::Verified => s.verified += 1,
                Status::Failed => s.failed += 1,
                Status::NotApplicable => s.not_applicable += 1,
            }
            s
        })
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "verified={} failed={} na={}", self.verified, self.failed, self.not_applicable)
    }
}
