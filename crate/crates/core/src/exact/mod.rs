//! Exact integer and rational arithmetic, combinatorial primitives and the
//! `d_n` table.

mod combinatorics;
mod lcm;
mod rational;

pub use combinatorics::{binomial, binomial_row, factorial};
pub use lcm::{is_prime, is_prime_power, lcm_table, smallest_prime_factor, LcmTable, PrimePower};
pub use rational::{Rational, Rounding};
pub(crate) use rational::format_scaled;
