//! `d_n = lcm(1, ..., n)` and the prime-power structure of its growth.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// `n = p^gamma` with `p` prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimePower {
    pub p: u64,
    pub gamma: u32,
}

impl PrimePower {
    pub fn value(&self) -> u64 {
        self.p.pow(self.gamma)
    }
}

/// Smallest prime factor of `n >= 2` by trial division. Deterministic; intended
/// for `n` up to about `10^12`.
pub fn smallest_prime_factor(n: u64) -> u64 {
    debug_assert!(n >= 2);
    if n % 2 == 0 {
        return 2;
    }
    let mut f = 3u64;
    while f.saturating_mul(f) <= n {
        if n % f == 0 {
            return f;
        }
        f += 2;
    }
    n
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

/// `Some((p, gamma))` when `n = p^gamma` for a prime `p`, `None` otherwise
/// (including `n < 2`).
pub fn is_prime_power(n: u64) -> Option<PrimePower> {
    if n < 2 {
        return None;
    }
    let p = smallest_prime_factor(n);
    let mut rest = n;
    let mut gamma = 0;
    while rest % p == 0 {
        rest /= p;
        gamma += 1;
    }
    (rest == 1).then_some(PrimePower { p, gamma })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcmTable {
    values: Vec<BigUint>,
}

impl LcmTable {
    /// Builds `d_1..d_max_n` by multiplying in `p` exactly when `n = p^gamma`.
    pub fn new(max_n: u64) -> Result<Self> {
        if max_n == 0 {
            return Err(Error::InvalidArgument("lcm table needs max_n >= 1".into()));
        }
        let mut values = Vec::with_capacity(max_n as usize);
        let mut d = BigUint::one();
        values.push(d.clone());
        for n in 2..=max_n {
            if let Some(pp) = is_prime_power(n) {
                d *= pp.p;
            }
            values.push(d.clone());
        }
        Ok(LcmTable { values })
    }

    pub fn max_n(&self) -> u64 {
        self.values.len() as u64
    }

    /// `d_n` for `1 <= n <= max_n`.
    pub fn get(&self, n: u64) -> Result<&BigUint> {
        if n == 0 || n > self.max_n() {
            return Err(Error::TableTooShort { n, max_n: self.max_n() });
        }
        Ok(&self.values[n as usize - 1])
    }

    /// `d_n` for `n` known to be in range.
    pub fn d(&self, n: u64) -> &BigUint {
        &self.values[n as usize - 1]
    }

    /// `(n, d_n)` in increasing `n`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigUint)> {
        self.values.iter().enumerate().map(|(i, d)| (i as u64 + 1, d))
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }
}

pub fn lcm_table(max_n: u64) -> Result<LcmTable> {
    LcmTable::new(max_n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    /// Independent route: fold `lcm(acc, k) = acc * k / gcd(acc mod k, k)`.
    fn direct_fold(max_n: u64) -> Vec<BigUint> {
        let mut acc = BigUint::one();
        let mut out = Vec::new();
        for k in 1..=max_n {
            let r = (&acc % k).iter_u64_digits().next().unwrap_or(0);
            let g = r.gcd(&k);
            acc *= k / g;
            out.push(acc.clone());
        }
        out
    }

    #[test]
    fn small_values() {
        let t = lcm_table(12).unwrap();
        assert_eq!(lcm_table(1).unwrap().values(), &[BigUint::one()]);
        assert_eq!(*t.d(4), BigUint::from(12u32));
        assert_eq!(*t.d(9), BigUint::from(2520u32));
        assert_eq!(*t.d(12), BigUint::from(27720u32));
        assert!(t.get(13).is_err());
        assert!(t.get(0).is_err());
        assert!(lcm_table(0).is_err());
    }

    #[test]
    fn matches_direct_fold() {
        let t = lcm_table(3000).unwrap();
        assert_eq!(t.values(), direct_fold(3000).as_slice());
    }

    #[test]
    fn every_k_divides_d_n() {
        let t = lcm_table(200).unwrap();
        for (n, d) in t.iter() {
            for k in 1..=n {
                assert!((d % k) == BigUint::from(0u32), "{k} does not divide d_{n}");
            }
        }
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(is_prime_power(8), Some(PrimePower { p: 2, gamma: 3 }));
        assert_eq!(is_prime_power(12), None);
        assert_eq!(is_prime_power(9), Some(PrimePower { p: 3, gamma: 2 }));
        assert_eq!(is_prime_power(2), Some(PrimePower { p: 2, gamma: 1 }));
        assert_eq!(is_prime_power(1), None);
        assert_eq!(is_prime_power(999_983), Some(PrimePower { p: 999_983, gamma: 1 }));
        assert_eq!(is_prime_power(1 << 19), Some(PrimePower { p: 2, gamma: 19 }));
        assert_eq!(is_prime_power(999_983 * 3), None);
    }

    #[test]
    fn prime_power_reconstructs() {
        for n in 2..5000u64 {
            if let Some(pp) = is_prime_power(n) {
                assert_eq!(pp.value(), n);
                assert!(is_prime(pp.p));
            }
        }
    }

    #[test]
    fn ratio_is_one_or_the_prime() {
        let t = lcm_table(2000).unwrap();
        for n in 1..2000u64 {
            let (q, r) = t.d(n + 1).div_rem(t.d(n));
            assert_eq!(r, BigUint::from(0u32));
            match is_prime_power(n + 1) {
                Some(pp) => assert_eq!(q, BigUint::from(pp.p)),
                None => assert!(q.is_one()),
            }
        }
    }
}
