//! Deciding claims: exact reports, certified reports with precision escalation,
//! and interval comparison helpers.

use std::cmp::Ordering;

use crate::certified::CertifiedReal;
use crate::error::Result;
use crate::exact::Rational;

use super::report::{ClaimId, ClaimReport, Params, Provenance, Verdict, Witness};
use super::AuditConfig;

/// One evaluation attempt at a fixed precision.
pub(crate) struct Outcome {
    pub decision: Option<bool>,
    pub lhs: Witness,
    pub rhs: Witness,
    pub note: String,
}

impl Outcome {
    pub fn new(decision: Option<bool>, lhs: impl Into<Witness>, rhs: impl Into<Witness>) -> Self {
        Outcome { decision, lhs: lhs.into(), rhs: rhs.into(), note: String::new() }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

pub(crate) fn exact_report(
    claim: ClaimId,
    params: Params,
    holds: bool,
    lhs: impl Into<Witness>,
    rhs: impl Into<Witness>,
    note: impl Into<String>,
) -> ClaimReport {
    ClaimReport {
        claim,
        params,
        verdict: if holds { Verdict::Holds } else { Verdict::Fails },
        lhs: lhs.into(),
        rhs: rhs.into(),
        note: note.into(),
        provenance: Provenance::Exact,
        window: None,
        precision_bits: None,
        escalated: false,
    }
}

/// Runs `attempt` at the starting precision and doubles it, up to the cap,
/// until the claim is decided. Errors (quadrature non-convergence) count as
/// undecided attempts.
pub(crate) fn certified_report(
    claim: ClaimId,
    params: Params,
    config: &AuditConfig,
    attempt: impl Fn(u32) -> Result<Outcome>,
) -> ClaimReport {
    let start = config.precision_bits;
    let mut bits = start;
    loop {
        let outcome = attempt(bits).unwrap_or_else(|e| Outcome::new(None, Witness::None, Witness::None).note(e.to_string()));
        let at_cap = bits >= config.max_precision_bits;
        if outcome.decision.is_some() || at_cap {
            let mut note = outcome.note;
            if outcome.decision.is_none() {
                push_note(&mut note, &format!("undecided at the {bits}-bit cap"));
            } else if bits > start {
                push_note(&mut note, &format!("precision escalated from {start} to {bits} bits"));
            }
            return ClaimReport {
                claim,
                params,
                verdict: Verdict::from_decision(outcome.decision),
                lhs: outcome.lhs,
                rhs: outcome.rhs,
                note,
                provenance: Provenance::Certified,
                window: None,
                precision_bits: Some(bits),
                escalated: bits > start,
            };
        }
        bits = (bits * 2).min(config.max_precision_bits);
    }
}

pub(crate) fn push_note(note: &mut String, extra: &str) {
    if !note.is_empty() {
        note.push_str("; ");
    }
    note.push_str(extra);
}

/// `x < r`
pub(crate) fn lt(x: &CertifiedReal, r: &Rational) -> Option<bool> {
    if x.upper() < *r {
        Some(true)
    } else if x.lower() >= *r {
        Some(false)
    } else {
        None
    }
}

/// `x <= r`
pub(crate) fn le(x: &CertifiedReal, r: &Rational) -> Option<bool> {
    if x.upper() <= *r {
        Some(true)
    } else if x.lower() > *r {
        Some(false)
    } else {
        None
    }
}

/// `x > r`
pub(crate) fn gt(x: &CertifiedReal, r: &Rational) -> Option<bool> {
    if x.lower() > *r {
        Some(true)
    } else if x.upper() <= *r {
        Some(false)
    } else {
        None
    }
}

/// `x < y`
pub(crate) fn lt_c(x: &CertifiedReal, y: &CertifiedReal) -> Option<bool> {
    if x.cmp_certified(y) == Some(Ordering::Less) {
        Some(true)
    } else if x.lower() >= y.upper() {
        Some(false)
    } else {
        None
    }
}

/// `x <= y`
pub(crate) fn le_c(x: &CertifiedReal, y: &CertifiedReal) -> Option<bool> {
    if x.upper() <= y.lower() {
        Some(true)
    } else if x.lower() > y.upper() {
        Some(false)
    } else {
        None
    }
}

/// Conjunction: false if any part is false, true if all are true.
pub(crate) fn all(parts: &[Option<bool>]) -> Option<bool> {
    if parts.contains(&Some(false)) {
        Some(false)
    } else if parts.iter().all(|p| *p == Some(true)) {
        Some(true)
    } else {
        None
    }
}

/// Two enclosures of quantities claimed equal: they must intersect.
pub(crate) fn agree(x: &CertifiedReal, y: &CertifiedReal) -> Option<bool> {
    Some(x.overlaps(y))
}

/// `x^2 * 2^n < bound^2` for `x > 0`, deciding `x < bound * 2^(-n/2)` without
/// square roots. `bound` is given by a lower and an upper enclosure.
pub(crate) fn below_sqrt2_scaled(x: &CertifiedReal, n: u64, bound_lo: &Rational, bound_hi: &Rational) -> Option<bool> {
    let scale = Rational::pow2(n as i64);
    if !x.is_positive() {
        return None;
    }
    if x.upper().pow(2) * &scale < bound_lo.pow(2) {
        Some(true)
    } else if x.lower().pow(2) * &scale >= bound_hi.pow(2) {
        Some(false)
    } else {
        None
    }
}

/// `{x}` when the floor of `x` is decided.
pub(crate) fn fractional(x: &CertifiedReal) -> Option<(num_bigint::BigInt, CertifiedReal)> {
    let f = x.floor()?;
    Some((f.clone(), x.add_rational(&-Rational::from_integer(f))))
}
