//! Exact and certified computations around Beukers-type log-kernel integrals
//! `I_{n,m}`, odd zeta values and `d_n = lcm(1..n)`.

pub mod audit;
pub mod certified;
pub mod error;
pub mod exact;
pub mod forms;
pub mod quad;

pub use error::{Error, Result};
