//! Rigorous enclosures of real numbers and the elementary functions and series
//! accelerators built on them.

mod accel;
mod ball;
mod functions;

pub use accel::{alternating_sum, alternating_weights, AlternatingSum};
pub use ball::{format_error_bound, CertifiedReal, GUARD_BITS};
pub use functions::{exp, ln, ln1p, ln2, ln_int, pi};
