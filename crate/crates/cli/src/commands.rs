//! The subcommands. Each returns a document ready to write plus its exit code.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use zetalab::audit::{
    check_dn_growth, check_floor_claims, check_integral_bounds, full_chain_audit, AuditConfig, ClaimReport, Verdict,
};
use zetalab::certified::{format_error_bound, CertifiedReal};
use zetalab::exact::Rational;
use zetalab::forms::{closed_form_i, eta_value, zeta_value};
use zetalab::quad::{oracle_i_quadrature, oracle_i_series, QuadratureConfig, QuadratureResult};
use zetalab::Error;

use crate::config::RunConfig;
use crate::emit::{compact, ClaimRow, Document, FirstFailure, Row, WitnessOut};

pub enum CliError {
    /// Bad flags or inputs; exit status 2.
    Usage(String),
    /// The computation itself broke; exit status 1.
    Runtime(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::OutOfRange { .. } | Error::InvalidArgument(_) | Error::Parse(_) => CliError::Usage(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

pub struct Outcome {
    pub output: Vec<u8>,
    pub exit: i32,
}

impl Outcome {
    fn new<R: Row>(doc: Document<R>, exit: i32) -> Result<Self, CliError> {
        let mut output = Vec::new();
        doc.write(&mut output).map_err(|e| CliError::Runtime(e.to_string()))?;
        Ok(Outcome { output, exit })
    }

    /// Exit 0 iff every row holds.
    fn strict<R: Row>(doc: Document<R>) -> Result<Self, CliError> {
        let exit = if doc.summary.all_hold() { 0 } else { 1 };
        Outcome::new(doc, exit)
    }
}

fn audit_config(config: &RunConfig) -> AuditConfig {
    AuditConfig {
        precision_bits: config.precision_bits,
        max_precision_bits: config.max_precision_bits,
        quadrature: QuadratureConfig { max_level: config.max_level },
    }
}

fn grid(config: &RunConfig) -> Vec<(u64, u32)> {
    config.m_list.iter().flat_map(|&m| (1..=config.n_max).map(move |n| (n, m))).collect()
}

/// Upper bound on `|x - y|` next to the summed radii of `x` and `y`.
fn discrepancy(x: &CertifiedReal, y: &CertifiedReal) -> (String, String) {
    let gap = (x.value() - y.value()).abs();
    let bound = x.abs_error() + y.abs_error();
    (format_error_bound(&gap), format_error_bound(&bound))
}

#[derive(Serialize)]
pub struct LemmaRow {
    n: u64,
    m: u32,
    alpha: String,
    beta: String,
    closed_form: WitnessOut,
    quadrature: Option<WitnessOut>,
    quadrature_levels: Option<u32>,
    series: WitnessOut,
    discrepancy_quadrature: Option<String>,
    bound_quadrature: Option<String>,
    discrepancy_series: String,
    bound_series: String,
    /// Combined quadrature-side error relative to the closed-form value.
    relative_bound: Option<String>,
    verdict: &'static str,
    note: String,
    #[serde(skip)]
    raw: Verdict,
}

impl Row for LemmaRow {
    const COLUMNS: &'static [&'static str] = &[
        "n",
        "m",
        "alpha",
        "beta",
        "closed_form",
        "quadrature",
        "quadrature_levels",
        "series",
        "discrepancy_quadrature",
        "bound_quadrature",
        "discrepancy_series",
        "bound_series",
        "relative_bound",
        "verdict",
        "note",
    ];

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.m.to_string(),
            self.alpha.clone(),
            self.beta.clone(),
            self.closed_form.compact(),
            compact(&self.quadrature),
            self.quadrature_levels.map(|l| l.to_string()).unwrap_or_default(),
            self.series.compact(),
            self.discrepancy_quadrature.clone().unwrap_or_default(),
            self.bound_quadrature.clone().unwrap_or_default(),
            self.discrepancy_series.clone(),
            self.bound_series.clone(),
            self.relative_bound.clone().unwrap_or_default(),
            self.verdict.to_string(),
            self.note.clone(),
        ]
    }

    fn verdict(&self) -> Verdict {
        self.raw
    }
}

fn lemma_row(n: u64, m: u32, config: &RunConfig) -> LemmaRow {
    let bits = config.precision_bits;
    let form = closed_form_i(n, m);
    let cf = form.eval(bits);
    let quad = oracle_i_quadrature(n, m, bits, QuadratureConfig { max_level: config.max_level });
    let series = oracle_i_series(n, m, bits);
    let series_ok = cf.overlaps(&series);
    let (ds, bs) = discrepancy(&cf, &series);
    let mut note = String::new();
    let (quadrature, levels, dq, bq, rel, quad_ok) = match &quad {
        Ok(QuadratureResult { estimate, levels_used, .. }) => {
            let (d, b) = discrepancy(&cf, estimate);
            let combined = cf.abs_error() + estimate.abs_error();
            let rel = (!cf.value().is_zero()).then(|| format_error_bound(&(combined / cf.value().abs())));
            (Some(WitnessOut::certified(estimate)), Some(*levels_used), Some(d), Some(b), rel, Some(cf.overlaps(estimate)))
        }
        Err(e) => {
            note = e.to_string();
            (None, None, None, None, None, None)
        }
    };
    let raw = match (quad_ok, series_ok) {
        (_, false) | (Some(false), _) => Verdict::Fails,
        (None, true) => Verdict::Undecided,
        (Some(true), true) => Verdict::Holds,
    };
    LemmaRow {
        n,
        m,
        alpha: form.alpha.to_string(),
        beta: form.beta.to_string(),
        closed_form: WitnessOut::certified(&cf),
        quadrature,
        quadrature_levels: levels,
        series: WitnessOut::certified(&series),
        discrepancy_quadrature: dq,
        bound_quadrature: bq,
        discrepancy_series: ds,
        bound_series: bs,
        relative_bound: rel,
        verdict: raw.as_str(),
        note,
        raw,
    }
}

pub fn lemma(config: &RunConfig) -> Result<Outcome, CliError> {
    let rows: Vec<LemmaRow> = grid(config).into_par_iter().map(|(n, m)| lemma_row(n, m, config)).collect();
    Outcome::strict(Document::new("lemma", config, rows))
}

fn claim_rows(reports: &[ClaimReport]) -> Vec<ClaimRow> {
    reports.iter().map(ClaimRow::from).collect()
}

pub fn bounds(config: &RunConfig) -> Result<Outcome, CliError> {
    let cfg = audit_config(config);
    let mut reports = check_dn_growth(config.n_max, &cfg)?;
    for &m in &config.m_list {
        reports.extend(check_integral_bounds(config.n_max, m, &cfg)?);
        reports.extend(check_floor_claims(config.n_max, m, &cfg)?);
    }
    Outcome::strict(Document::new("bounds", config, claim_rows(&reports)))
}

pub fn audit(config: &RunConfig) -> Result<Outcome, CliError> {
    let r = config.rational.ok_or_else(|| CliError::Usage("audit needs --rational a/b".into()))?;
    let cfg = audit_config(config);
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for &m in &config.m_list {
        let trace = full_chain_audit(r.a, r.b, m, config.n_max, &cfg)?;
        if let Some((i, claim)) = trace.first_failure {
            let rep = &trace.reports[i];
            failures.push(FirstFailure { m, row: rows.len() + i, key: claim.key, n: rep.params.n, verdict: rep.verdict.as_str() });
        }
        rows.extend(claim_rows(&trace.reports));
    }
    let mut doc = Document::new("audit", config, rows);
    doc.first_failure = Some(failures);
    Outcome::new(doc, 0)
}

#[derive(Serialize)]
pub struct ZetaRow {
    m: u32,
    s: u32,
    zeta: WitnessOut,
    eta: WitnessOut,
    fractional: Option<WitnessOut>,
    /// `1 < zeta(2m+1) <= 1 + 1/(2m)`
    in_range: Option<bool>,
    fractional_exceeds_1_63: Option<bool>,
    precision_bits: u32,
    verdict: &'static str,
    #[serde(skip)]
    raw: Verdict,
}

impl Row for ZetaRow {
    const COLUMNS: &'static [&'static str] =
        &["m", "s", "zeta", "zeta_error", "eta", "fractional", "in_range", "fractional_exceeds_1_63", "precision_bits", "verdict"];

    fn cells(&self) -> Vec<String> {
        let flag = |b: Option<bool>| b.map(|b| b.to_string()).unwrap_or_else(|| "undecided".into());
        vec![
            self.m.to_string(),
            self.s.to_string(),
            self.zeta.compact(),
            self.zeta.error.clone().unwrap_or_default(),
            self.eta.compact(),
            compact(&self.fractional),
            flag(self.in_range),
            flag(self.fractional_exceeds_1_63),
            self.precision_bits.to_string(),
            self.verdict.to_string(),
        ]
    }

    fn verdict(&self) -> Verdict {
        self.raw
    }
}

fn zeta_row(m: u32, config: &RunConfig) -> ZetaRow {
    let upper = Rational::one() + Rational::frac(1, 2 * m as i64);
    let threshold = Rational::frac(1, 63);
    let mut bits = config.precision_bits;
    loop {
        let z = zeta_value(m, bits);
        let in_range = match (z.cmp_rational(&Rational::one()), z.cmp_rational(&upper)) {
            (Some(std::cmp::Ordering::Greater), Some(o)) if o != std::cmp::Ordering::Greater => Some(true),
            (Some(o), _) if o != std::cmp::Ordering::Greater => Some(false),
            (_, Some(std::cmp::Ordering::Greater)) => Some(false),
            _ => None,
        };
        let fractional = z.floor().map(|f| z.add_rational(&-Rational::from_integer(f)));
        let exceeds = fractional.as_ref().and_then(|f| f.cmp_rational(&threshold)).map(|o| o == std::cmp::Ordering::Greater);
        if (in_range.is_some() && exceeds.is_some()) || bits >= config.max_precision_bits {
            let raw = Verdict::from_decision(in_range);
            return ZetaRow {
                m,
                s: 2 * m + 1,
                zeta: WitnessOut::certified(&z),
                eta: WitnessOut::certified(&eta_value(m, bits)),
                fractional: fractional.as_ref().map(WitnessOut::certified),
                in_range,
                fractional_exceeds_1_63: exceeds,
                precision_bits: bits,
                verdict: raw.as_str(),
                raw,
            };
        }
        bits = (bits * 2).min(config.max_precision_bits);
    }
}

pub fn zeta(config: &RunConfig) -> Result<Outcome, CliError> {
    let rows: Vec<ZetaRow> = config.m_list.par_iter().map(|&m| zeta_row(m, config)).collect();
    Outcome::strict(Document::new("zeta", config, rows))
}

#[derive(Serialize)]
pub struct OracleRow {
    n: u64,
    m: u32,
    quadrature: Option<WitnessOut>,
    quadrature_levels: Option<u32>,
    series: WitnessOut,
    discrepancy: Option<String>,
    bound: Option<String>,
    verdict: &'static str,
    note: String,
    #[serde(skip)]
    raw: Verdict,
}

impl Row for OracleRow {
    const COLUMNS: &'static [&'static str] =
        &["n", "m", "quadrature", "quadrature_levels", "series", "discrepancy", "bound", "verdict", "note"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.m.to_string(),
            compact(&self.quadrature),
            self.quadrature_levels.map(|l| l.to_string()).unwrap_or_default(),
            self.series.compact(),
            self.discrepancy.clone().unwrap_or_default(),
            self.bound.clone().unwrap_or_default(),
            self.verdict.to_string(),
            self.note.clone(),
        ]
    }

    fn verdict(&self) -> Verdict {
        self.raw
    }
}

fn oracle_row(n: u64, m: u32, config: &RunConfig) -> OracleRow {
    let bits = config.precision_bits;
    let series = oracle_i_series(n, m, bits);
    let quad = oracle_i_quadrature(n, m, bits, QuadratureConfig { max_level: config.max_level });
    let (quadrature, levels, disc, bound, raw, note) = match quad {
        Ok(q) => {
            let (d, b) = discrepancy(&q.estimate, &series);
            let raw = if q.estimate.overlaps(&series) { Verdict::Holds } else { Verdict::Fails };
            (Some(WitnessOut::certified(&q.estimate)), Some(q.levels_used), Some(d), Some(b), raw, String::new())
        }
        Err(e) => (None, None, None, None, Verdict::Undecided, e.to_string()),
    };
    OracleRow {
        n,
        m,
        quadrature,
        quadrature_levels: levels,
        series: WitnessOut::certified(&series),
        discrepancy: disc,
        bound,
        verdict: raw.as_str(),
        note,
        raw,
    }
}

/// The `(n, m)` grid, or with a seed `n_max` points drawn from it.
fn oracle_points(config: &RunConfig) -> Vec<(u64, u32)> {
    match config.seed {
        None => grid(config),
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..config.n_max)
                .map(|_| {
                    let n = rng.gen_range(1..=config.n_max);
                    let m = config.m_list[rng.gen_range(0..config.m_list.len())];
                    (n, m)
                })
                .collect()
        }
    }
}

pub fn oracle(config: &RunConfig) -> Result<Outcome, CliError> {
    let rows: Vec<OracleRow> = oracle_points(config).into_par_iter().map(|(n, m)| oracle_row(n, m, config)).collect();
    Outcome::strict(Document::new("oracle", config, rows))
}
