use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `binomial(n, r)` with `r > n`.
    #[error("binomial coefficient C({n}, {r}) requested with r > n")]
    BinomialDomain { n: u64, r: u64 },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Tanh-sinh refinement ran out of levels before successive sums agreed.
    #[error("quadrature did not converge by level {max_level} (last difference {last_difference})")]
    NonConvergence { max_level: u32, last_difference: String },
    /// The audited rational lies outside the range admitted by the zeta bounds.
    #[error("rational {a}/{b} is outside the admissible range: {reason}")]
    OutOfRange { a: u64, b: u64, reason: String },
    #[error("lcm table holds d_1..d_{max_n}, but d_{n} was requested")]
    TableTooShort { n: u64, max_n: u64 },
    /// Full enumeration of `k in [0, d_n]` would exceed the scan limit.
    #[error("d_{n} = {d_n} is too large to enumerate (limit {limit})")]
    EnumerationTooLarge { n: u64, d_n: String, limit: u64 },
    /// Two independent computations of the same exact object differ.
    #[error("internal cross-check failed: {0}")]
    Inconsistent(String),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}
