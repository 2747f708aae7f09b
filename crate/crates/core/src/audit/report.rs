//! Claim identifiers, per-claim reports and traces.

use num_bigint::BigInt;

use crate::certified::CertifiedReal;
use crate::exact::Rational;

/// Which integral family a claim belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Independent of `m`.
    Shared,
    /// Statements about `zeta(5)` and `I_n`; audited only at `m = 2`.
    Fifth,
    /// Statements about `zeta(2m+1)` and `I_{n,m}`, any `m >= 2`.
    General,
}

/// What `zeta(2m+1)` means while the claim is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// The certified true value.
    TrueValue,
    /// The supplied rational `a/b`.
    Hypothesis,
    /// No zeta value involved.
    Arithmetic,
}

impl Basis {
    pub fn as_str(&self) -> &'static str {
        match self {
            Basis::TrueValue => "true-value",
            Basis::Hypothesis => "hypothesis",
            Basis::Arithmetic => "arithmetic",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Exact,
    Certified,
    FiniteRange,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Exact => "exact",
            Provenance::Certified => "certified",
            Provenance::FiniteRange => "finite-range",
        }
    }
}

/// A registered claim: a stable key plus the formula snippet it is anchored to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClaimId {
    pub key: &'static str,
    pub anchor: &'static str,
    pub family: Family,
    pub basis: Basis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails,
    /// Still undecided at the precision cap.
    Undecided,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Undecided => "undecided",
        }
    }

    pub fn from_decision(d: Option<bool>) -> Self {
        match d {
            Some(true) => Verdict::Holds,
            Some(false) => Verdict::Fails,
            None => Verdict::Undecided,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    None,
    Integer(BigInt),
    Exact(Rational),
    Certified(CertifiedReal),
    Set(Vec<BigInt>),
    Text(String),
}

impl From<Rational> for Witness {
    fn from(r: Rational) -> Self {
        Witness::Exact(r)
    }
}

impl From<CertifiedReal> for Witness {
    fn from(x: CertifiedReal) -> Self {
        Witness::Certified(x)
    }
}

impl From<BigInt> for Witness {
    fn from(x: BigInt) -> Self {
        Witness::Integer(x)
    }
}

/// Inputs a report was evaluated at; absent fields were not used.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub n: Option<u64>,
    pub m: Option<u32>,
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub s: Option<u32>,
}

impl Params {
    pub fn n(n: u64) -> Self {
        Params { n: Some(n), ..Default::default() }
    }

    pub fn with_m(mut self, m: u32) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_rational(mut self, a: u64, b: u64) -> Self {
        self.a = Some(a);
        self.b = Some(b);
        self
    }

    pub fn with_s(mut self, s: u32) -> Self {
        self.s = Some(s);
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClaimReport {
    pub claim: ClaimId,
    pub params: Params,
    pub verdict: Verdict,
    pub lhs: Witness,
    pub rhs: Witness,
    pub note: String,
    pub provenance: Provenance,
    /// For statements quantified over `n`: the window `[lo, hi]` actually checked.
    pub window: Option<(u64, u64)>,
    /// Precision at which the verdict was reached; `None` for exact claims.
    pub precision_bits: Option<u32>,
    /// The first precision did not decide the claim.
    pub escalated: bool,
}

impl ClaimReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditTrace {
    pub reports: Vec<ClaimReport>,
    /// Position and claim of the earliest report that does not hold.
    pub first_failure: Option<(usize, ClaimId)>,
}

impl AuditTrace {
    pub fn new(reports: Vec<ClaimReport>) -> Self {
        let first_failure = reports.iter().enumerate().find(|(_, r)| !r.holds()).map(|(i, r)| (i, r.claim));
        AuditTrace { reports, first_failure }
    }
}
