use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// `k!` exactly.
pub fn factorial(k: u64) -> BigUint {
    (2..=k).fold(BigUint::one(), |acc, j| acc * j)
}

/// `C(n, r)` exactly; `r > n` is a domain error.
pub fn binomial(n: u64, r: u64) -> Result<BigUint> {
    if r > n {
        return Err(Error::BinomialDomain { n, r });
    }
    let r = r.min(n - r);
    // Each partial product C(n, j) is an integer, so the division is exact.
    Ok((0..r).fold(BigUint::one(), |acc, j| acc * (n - j) / (j + 1)))
}

/// Row `C(n, 0), ..., C(n, n)` built by the multiplicative recurrence.
pub fn binomial_row(n: u64) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for j in 0..n {
        c = c * (n - j) / (j + 1);
        row.push(c.clone());
    }
    row
}
