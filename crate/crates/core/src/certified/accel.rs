//! Accelerated summation of alternating series `sum_k (-1)^k a_k`.
//!
//! The weights are the Chebyshev-derived integers
//! `d_k = N sum_{i<=k} (N+i-1)! 4^i / ((N-i)! (2i)!)`, and the estimate is
//! `sum_{k<N} (-1)^k (d_N - d_k) / d_N * a_k`. When `a_k` is the moment sequence
//! of a positive measure, the error is at most `2 a_0 / (3 + sqrt 8)^N`; the
//! bound used here is the weaker `3 a_0 (5/29)^N`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;

use super::CertifiedReal;
use crate::exact::Rational;

type WeightCache = RwLock<HashMap<(usize, u32), Arc<Vec<CertifiedReal>>>>;

/// Terms needed so that `3 (5/29)^N <= 2^-bits`.
pub fn terms_for_bits(bits: u32) -> usize {
    ((bits as f64 + 2.0) / (29.0f64 / 5.0).log2()).ceil() as usize + 1
}

/// Exact weights `(d_N - d_k) / d_N` for `k = 0..N`.
fn exact_weights(n: usize) -> Vec<Rational> {
    let nn = n as i64;
    let mut t = Rational::one();
    let mut partial = Vec::with_capacity(n + 1);
    let mut acc = Rational::zero();
    for i in 0..=nn {
        if i > 0 {
            let num = 4 * (nn + i - 1) * (nn - i + 1);
            let den = (2 * i) * (2 * i - 1);
            t = t * Rational::frac(num, den);
        }
        acc += &t;
        partial.push(acc.clone());
    }
    let d_n = partial[n].clone();
    partial[..n].iter().map(|d_k| (&d_n - d_k) / &d_n).collect()
}

pub fn alternating_weights(n: usize, bits: u32) -> Arc<Vec<CertifiedReal>> {
    static CACHE: OnceLock<WeightCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(w) = cache.read().unwrap().get(&(n, bits)) {
        return w.clone();
    }
    let w: Arc<Vec<CertifiedReal>> =
        Arc::new(exact_weights(n).iter().map(|r| CertifiedReal::from_rational_at(r, bits, bits)).collect());
    cache.write().unwrap().insert((n, bits), w.clone());
    w
}

/// How the tail of an alternating series is handled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlternatingSum {
    /// Weighted acceleration with its a-priori bound.
    Accelerated,
    /// The first `K` terms; the first omitted term bounds the remainder.
    Truncated(usize),
}

/// Encloses `sum_{k>=0} (-1)^k a(k)` for a completely monotone sequence
/// (moments of a positive measure, e.g. `a(k) = (c + k)^-s`).
pub fn alternating_sum(
    mode: AlternatingSum,
    bits: u32,
    precision_bits: u32,
    a: impl Fn(usize) -> CertifiedReal,
) -> CertifiedReal {
    let mut sum = CertifiedReal::zero_at(bits, precision_bits);
    match mode {
        AlternatingSum::Truncated(k) => {
            for i in 0..k {
                let t = a(i);
                sum = if i % 2 == 0 { &sum + &t } else { &sum - &t };
            }
            sum.add_ulps(a(k).mag_ulps());
            sum
        }
        AlternatingSum::Accelerated => {
            let n = terms_for_bits(bits);
            let w = alternating_weights(n, bits);
            let mut a0 = BigUint::default();
            for (i, wi) in w.iter().enumerate() {
                let t = a(i);
                if i == 0 {
                    a0 = t.mag_ulps();
                }
                let t = wi * &t;
                sum = if i % 2 == 0 { &sum + &t } else { &sum - &t };
            }
            // 3 a_0 (5/29)^N, rounded up, in ulps
            let bound = Rational::from(a0 * 3u32) * Rational::frac(5, 29).pow(n as u32);
            sum.add_ulps(BigUint::try_from(bound.ceil()).expect("non-negative"));
            sum
        }
    }
}
