//! Literal evaluation of every numbered claim, with per-claim verdicts and
//! witnesses.

mod chain;
mod checks;
mod diophantine;
mod eval;
mod registry;
mod report;

pub use chain::{check_admissible, full_chain_audit};
pub use checks::{check_dn_growth, check_floor_claims, check_identities, check_integral_bounds};
pub use diophantine::{
    brute_force_solutions, diophantine_enumerate, diophantine_solve, induction_step_audit, scan_cases, DiophantineCase,
    ENUMERATION_LIMIT, SCAN_LIMIT,
};
pub use registry::{claim, claim_index, in_scope, REGISTRY};
pub use report::{AuditTrace, Basis, ClaimId, ClaimReport, Family, Params, Provenance, Verdict, Witness};

use crate::quad::QuadratureConfig;

/// Precision schedule and quadrature settings shared by all checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditConfig {
    /// First precision tried for certified claims.
    pub precision_bits: u32,
    /// Undecided claims are retried at doubled precision up to this cap.
    pub max_precision_bits: u32,
    pub quadrature: QuadratureConfig,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig { precision_bits: 192, max_precision_bits: 4096, quadrature: QuadratureConfig::default() }
    }
}
