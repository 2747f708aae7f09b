//! Report documents and their JSON, CSV and text renderings.

use std::io::{self, Write};

use num_bigint::{BigInt, BigUint};
use num_traits::{pow, Signed};
use serde::Serialize;
use zetalab::audit::{ClaimReport, Params, Verdict, Witness};
use zetalab::certified::{format_error_bound, CertifiedReal};
use zetalab::exact::{Rational, Rounding};

use crate::config::{Format, RunConfig};

/// Significant digits printed for interval endpoints.
pub const SIG_DIGITS: usize = 32;
/// Integers with more digits than this are abbreviated.
pub const MAX_INLINE_DIGITS: usize = 96;

/// A number or set in a report. Exact values keep their exact form unless
/// they are very long; intervals are outward rounded.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WitnessOut {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<String>,
    /// Decimal digit count of an abbreviated integer, or of numerator and
    /// denominator of an abbreviated fraction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub digits: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<String>>,
}

fn digit_count(v: &BigInt) -> usize {
    integer_parts(v).1.unwrap_or_else(|| v.magnitude().to_string().len())
}

/// Decimal rendering of a possibly huge integer: the exact digits when short,
/// else leading and trailing digits, the digit count and a rounded
/// `SIG_DIGITS`-digit approximation. Avoids a full decimal conversion.
fn integer_parts(v: &BigInt) -> (String, Option<usize>, Option<String>) {
    if v.bits() <= 256 {
        let s = v.to_string();
        if s.trim_start_matches('-').len() <= MAX_INLINE_DIGITS {
            return (s, None, None);
        }
    }
    let sign = if v.is_negative() { "-" } else { "" };
    let mag = v.magnitude();
    let ten = BigUint::from(10u32);
    let mut digits = ((mag.bits() - 1) as f64 * std::f64::consts::LOG10_2) as usize + 1;
    while *mag >= pow(ten.clone(), digits) {
        digits += 1;
    }
    while digits > 1 && *mag < pow(ten.clone(), digits - 1) {
        digits -= 1;
    }
    if digits <= MAX_INLINE_DIGITS {
        return (v.to_string(), None, None);
    }
    let head = (mag / pow(ten.clone(), digits - SIG_DIGITS - 1)).to_string();
    let tail = format!("{:0>24}", (mag % pow(ten, 24)).to_string());
    let mut lead: u128 = head[..SIG_DIGITS].parse().expect("decimal digits");
    let mut exp = digits - 1;
    if head.as_bytes()[SIG_DIGITS] >= b'5' {
        lead += 1;
        if lead == 10u128.pow(SIG_DIGITS as u32) {
            lead /= 10;
            exp += 1;
        }
    }
    let lead = lead.to_string();
    let approx = format!("{sign}{}.{}e+{exp}", &lead[..1], &lead[1..]);
    (format!("{sign}{}...{tail}", &head[..24]), Some(digits), Some(approx))
}

fn abbreviate_int(v: &BigInt) -> String {
    integer_parts(v).0
}

impl WitnessOut {
    pub fn certified(x: &CertifiedReal) -> Self {
        WitnessOut {
            kind: "certified",
            lower: Some(x.lower().to_scientific(SIG_DIGITS, Rounding::Floor)),
            upper: Some(x.upper().to_scientific(SIG_DIGITS, Rounding::Ceil)),
            error: Some(format_error_bound(&x.abs_error())),
            ..Default::default()
        }
    }

    pub fn rational(r: &Rational) -> Self {
        let (num, dn, _) = integer_parts(r.numer());
        let (den, dd, _) = integer_parts(r.denom());
        let long = dn.is_some() || dd.is_some();
        let value = if r.is_integer() { num } else { format!("{num}/{den}") };
        WitnessOut {
            kind: "rational",
            value: Some(value),
            approx: (!r.is_integer() || long).then(|| r.to_scientific(SIG_DIGITS, Rounding::Nearest)),
            digits: long.then(|| vec![digit_count(r.numer()), digit_count(r.denom())]),
            ..Default::default()
        }
    }

    pub fn integer(v: &BigInt) -> Self {
        let (value, digits, approx) = integer_parts(v);
        WitnessOut { kind: "integer", value: Some(value), approx, digits: digits.map(|d| vec![d]), ..Default::default() }
    }

    pub fn from_witness(w: &Witness) -> Option<Self> {
        Some(match w {
            Witness::None => return None,
            Witness::Integer(v) => WitnessOut::integer(v),
            Witness::Exact(r) => WitnessOut::rational(r),
            Witness::Certified(x) => WitnessOut::certified(x),
            Witness::Set(v) => {
                WitnessOut { kind: "set", values: Some(v.iter().map(abbreviate_int).collect()), ..Default::default() }
            }
            Witness::Text(t) => WitnessOut { kind: "text", value: Some(t.clone()), ..Default::default() },
        })
    }

    /// One-cell rendering for CSV and text.
    pub fn compact(&self) -> String {
        match self.kind {
            "certified" => format!(
                "[{}, {}]",
                self.lower.as_deref().unwrap_or_default(),
                self.upper.as_deref().unwrap_or_default()
            ),
            "set" => format!("{{{}}}", self.values.as_deref().unwrap_or_default().join(", ")),
            _ => self.value.clone().unwrap_or_default(),
        }
    }
}

pub fn compact(w: &Option<WitnessOut>) -> String {
    w.as_ref().map(WitnessOut::compact).unwrap_or_default()
}

/// Inputs of a row; absent fields were not used.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ParamsOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
}

impl From<&Params> for ParamsOut {
    fn from(p: &Params) -> Self {
        ParamsOut {
            n: p.n,
            m: p.m,
            rational: p.a.zip(p.b).map(|(a, b)| format!("{a}/{b}")),
            s: p.s,
        }
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

/// A row type with a fixed column layout.
pub trait Row: Serialize {
    const COLUMNS: &'static [&'static str];
    fn cells(&self) -> Vec<String>;
    fn verdict(&self) -> Verdict;
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimRow {
    pub key: &'static str,
    pub anchor: &'static str,
    pub basis: &'static str,
    pub params: ParamsOut,
    pub verdict: &'static str,
    pub lhs: Option<WitnessOut>,
    pub rhs: Option<WitnessOut>,
    pub provenance: &'static str,
    pub window: Option<[u64; 2]>,
    pub precision_bits: Option<u32>,
    pub escalated: bool,
    pub note: String,
    #[serde(skip)]
    raw_verdict: Verdict,
}

impl From<&ClaimReport> for ClaimRow {
    fn from(r: &ClaimReport) -> Self {
        ClaimRow {
            key: r.claim.key,
            anchor: r.claim.anchor,
            basis: r.claim.basis.as_str(),
            params: (&r.params).into(),
            verdict: r.verdict.as_str(),
            lhs: WitnessOut::from_witness(&r.lhs),
            rhs: WitnessOut::from_witness(&r.rhs),
            provenance: r.provenance.as_str(),
            window: r.window.map(|(lo, hi)| [lo, hi]),
            precision_bits: r.precision_bits,
            escalated: r.escalated,
            note: r.note.clone(),
            raw_verdict: r.verdict,
        }
    }
}

impl Row for ClaimRow {
    const COLUMNS: &'static [&'static str] = &[
        "key", "n", "m", "rational", "s", "verdict", "lhs", "rhs", "provenance", "basis", "window", "precision_bits", "escalated",
        "note", "anchor",
    ];

    fn cells(&self) -> Vec<String> {
        vec![
            self.key.to_string(),
            opt(&self.params.n),
            opt(&self.params.m),
            opt(&self.params.rational),
            opt(&self.params.s),
            self.verdict.to_string(),
            compact(&self.lhs),
            compact(&self.rhs),
            self.provenance.to_string(),
            self.basis.to_string(),
            self.window.map(|[lo, hi]| format!("{lo}..={hi}")).unwrap_or_default(),
            opt(&self.precision_bits),
            self.escalated.to_string(),
            self.note.clone(),
            self.anchor.to_string(),
        ]
    }

    fn verdict(&self) -> Verdict {
        self.raw_verdict
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub rows: usize,
    pub holds: usize,
    pub fails: usize,
    pub undecided: usize,
}

impl Summary {
    pub fn of<R: Row>(rows: &[R]) -> Self {
        let count = |v: Verdict| rows.iter().filter(|r| r.verdict() == v).count();
        Summary { rows: rows.len(), holds: count(Verdict::Holds), fails: count(Verdict::Fails), undecided: count(Verdict::Undecided) }
    }

    pub fn all_hold(&self) -> bool {
        self.holds == self.rows
    }
}

/// Earliest non-holding row of an audit for one `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FirstFailure {
    pub m: u32,
    /// Position in `rows`.
    pub row: usize,
    pub key: &'static str,
    pub n: Option<u64>,
    pub verdict: &'static str,
}

#[derive(Debug, Serialize)]
pub struct Document<R: Row> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: RunConfig,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Vec<FirstFailure>>,
    pub rows: Vec<R>,
}

impl<R: Row> Document<R> {
    pub fn new(command: &'static str, config: &RunConfig, rows: Vec<R>) -> Self {
        Document {
            tool: "zetalab",
            version: env!("CARGO_PKG_VERSION"),
            command,
            config: config.clone(),
            summary: Summary::of(&rows),
            first_failure: None,
            rows,
        }
    }

    fn header_lines(&self) -> Vec<String> {
        let c = &self.config;
        let m: Vec<String> = c.m_list.iter().map(u32::to_string).collect();
        let mut lines = vec![
            format!("{} {} {}", self.tool, self.version, self.command),
            format!(
                "precision_bits={} max_precision_bits={} n_max={} m_list={} rational={} max_level={} seed={} format={}",
                c.precision_bits,
                c.max_precision_bits,
                c.n_max,
                m.join(","),
                opt(&c.rational),
                c.max_level,
                opt(&c.seed),
                c.output_format
            ),
            format!(
                "rows={} holds={} fails={} undecided={}",
                self.summary.rows, self.summary.holds, self.summary.fails, self.summary.undecided
            ),
        ];
        for f in self.first_failure.iter().flatten() {
            lines.push(format!("first_failure m={} row={} key={} n={} verdict={}", f.m, f.row, f.key, opt(&f.n), f.verdict));
        }
        lines
    }

    pub fn write(&self, out: &mut impl Write) -> io::Result<()> {
        match self.config.output_format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                out.write_all(b"\n")
            }
            Format::Csv => {
                for line in self.header_lines() {
                    writeln!(out, "# {line}")?;
                }
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(R::COLUMNS)?;
                for row in &self.rows {
                    w.write_record(row.cells())?;
                }
                w.flush()
            }
            Format::Text => {
                for line in self.header_lines() {
                    writeln!(out, "# {line}")?;
                }
                for row in &self.rows {
                    let cells = row.cells();
                    let parts: Vec<String> = R::COLUMNS
                        .iter()
                        .zip(&cells)
                        .filter(|(_, v)| !v.is_empty())
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect();
                    writeln!(out, "{}", parts.join("  "))?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(s: &str) -> (String, Option<usize>, Option<String>) {
        let body = s.trim_start_matches('-');
        if body.len() <= MAX_INLINE_DIGITS {
            return (s.to_string(), None, None);
        }
        let sign = if s.starts_with('-') { "-" } else { "" };
        let r: Rational = s.parse().unwrap();
        let short = format!("{sign}{}...{}", &body[..24], &body[body.len() - 24..]);
        (short, Some(body.len()), Some(r.to_scientific(SIG_DIGITS, Rounding::Nearest)))
    }

    #[test]
    fn integer_parts_match_decimal_string() {
        let cases = [
            "7".repeat(200),
            format!("-{}", "9".repeat(150)),
            format!("1{}5{}", "0".repeat(31), "0".repeat(80)),
            format!("1{}", "0".repeat(96)),
            "9".repeat(96),
            "31415926535".repeat(12),
            "-12".to_string(),
        ];
        for s in cases {
            let v: BigInt = s.parse().unwrap();
            assert_eq!(integer_parts(&v), naive(&s), "{s}");
        }
        let v = pow(BigInt::from(8), 10000);
        assert_eq!(integer_parts(&v), naive(&v.to_string()));
    }

    #[test]
    fn fractions_stay_exact() {
        let w = WitnessOut::rational(&Rational::frac(-15, 8));
        assert_eq!(w.value.as_deref(), Some("-15/8"));
        assert_eq!(w.approx.as_deref().map(|s| s.starts_with("-1.875")), Some(true));
    }

    #[test]
    fn intervals_enclose() {
        let x = CertifiedReal::from_rational(&Rational::frac(1, 3), 128);
        let w = WitnessOut::certified(&x);
        assert_eq!(w.lower.as_deref(), Some("3.3333333333333333333333333333333e-1"));
        assert_eq!(w.upper.as_deref(), Some("3.3333333333333333333333333333334e-1"));
    }
}
