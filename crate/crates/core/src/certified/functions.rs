//! Elementary functions on [`CertifiedReal`] enclosures.
//!
//! Series are evaluated in ball arithmetic, so rounding and the propagation of
//! input radii are tracked automatically; each routine adds an explicit bound
//! for the truncated tail.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::One;

use super::CertifiedReal;
use crate::exact::Rational;

type ConstCache = Mutex<HashMap<u32, CertifiedReal>>;

fn cached(cache: &'static OnceLock<ConstCache>, bits: u32, make: impl FnOnce(u32) -> CertifiedReal) -> CertifiedReal {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&bits) {
        return v.clone();
    }
    let v = make(bits);
    map.lock().unwrap().insert(bits, v.clone());
    v
}

/// `sum_{j>=0} u^(2j+1) / (2j+1)` for an enclosure with `|u| <= 1/2`.
fn atanh_series(u: &CertifiedReal) -> CertifiedReal {
    let u2 = u.square();
    let mut power = u.clone();
    let mut sum = CertifiedReal::zero_at(u.bits(), u.precision_bits());
    let mut j = 0u64;
    loop {
        let term = power.div_int(2 * j + 1);
        if term.mag_ulps() <= BigUint::one() {
            // remaining terms are bounded by |u|^(2j+1) / (1 - u^2) <= (4/3) |u|^(2j+1)
            let tail = power.mag_ulps() * 4u32 / 3u32 + 1u32;
            sum.add_ulps(tail);
            return sum;
        }
        sum = &sum + &term;
        power = &power * &u2;
        j += 1;
    }
}

/// `sum_{j>=0} (-1)^j u^(2j+1) / (2j+1)` for `0 <= u <= 1/2`; alternating tail
/// bounded by the first omitted term.
fn atan_series(u: &CertifiedReal) -> CertifiedReal {
    let u2 = u.square();
    let mut power = u.clone();
    let mut sum = CertifiedReal::zero_at(u.bits(), u.precision_bits());
    let mut j = 0u64;
    loop {
        let term = power.div_int(2 * j + 1);
        if term.mag_ulps() <= BigUint::one() {
            sum.add_ulps(term.mag_ulps());
            return sum;
        }
        sum = if j % 2 == 0 { &sum + &term } else { &sum - &term };
        power = &power * &u2;
        j += 1;
    }
}

/// `ln 2` on a grid of `bits` fractional bits.
pub(crate) fn ln2_at(bits: u32, precision_bits: u32) -> CertifiedReal {
    static CACHE: OnceLock<ConstCache> = OnceLock::new();
    let v = cached(&CACHE, bits, |b| {
        let third = CertifiedReal::from_rational_at(&Rational::frac(1, 3), b + 16, precision_bits);
        atanh_series(&third).mul_int(&2.into()).to_bits(b)
    });
    relabel(v, precision_bits)
}

/// `pi` by Machin's formula.
pub(crate) fn pi_at(bits: u32, precision_bits: u32) -> CertifiedReal {
    static CACHE: OnceLock<ConstCache> = OnceLock::new();
    let v = cached(&CACHE, bits, |b| {
        let w = b + 16;
        let a5 = atan_series(&CertifiedReal::from_rational_at(&Rational::frac(1, 5), w, precision_bits));
        let a239 = atan_series(&CertifiedReal::from_rational_at(&Rational::frac(1, 239), w, precision_bits));
        (&a5.mul_int(&16.into()) - &a239.mul_int(&4.into())).to_bits(b)
    });
    relabel(v, precision_bits)
}

fn relabel(v: CertifiedReal, precision_bits: u32) -> CertifiedReal {
    CertifiedReal::from_parts(v.mid_raw().clone(), v.rad_raw().clone(), v.bits(), precision_bits)
}

pub fn ln2(precision_bits: u32) -> CertifiedReal {
    ln2_at(CertifiedReal::working_bits(precision_bits), precision_bits)
}

pub fn pi(precision_bits: u32) -> CertifiedReal {
    pi_at(CertifiedReal::working_bits(precision_bits), precision_bits)
}

/// `exp(x)`.
pub fn exp(x: &CertifiedReal) -> CertifiedReal {
    let bits = x.bits();
    let ln2 = ln2_at(bits, x.precision_bits());
    let k = (x.to_f64() / std::f64::consts::LN_2).round();
    let cutoff = -(bits as f64) - 64.0;
    if k < cutoff {
        // exp(x) <= 2^(k + 1) is far below one unit of the grid
        let mut z = CertifiedReal::zero_at(bits, x.precision_bits());
        z.add_ulps(1u32);
        return z;
    }
    let k = k as i64;
    let r = x - &ln2.mul_int(&k.into());
    debug_assert!(r.upper() <= Rational::one() && r.lower() >= -Rational::one());
    let mut term = CertifiedReal::int_at(1, bits, x.precision_bits());
    let mut sum = CertifiedReal::zero_at(bits, x.precision_bits());
    let mut j = 1u64;
    loop {
        sum = &sum + &term;
        term = (&term * &r).div_int(j);
        if term.mag_ulps() <= BigUint::one() {
            // for |r| <= 1 the tail from index j is at most twice its first term
            sum.add_ulps(term.mag_ulps() * 2u32 + 1u32);
            break;
        }
        j += 1;
    }
    sum.mul_pow2(k)
}

/// `ln(1 + q)` for an enclosure of `q` inside `[0, 1]`.
pub fn ln1p(q: &CertifiedReal) -> CertifiedReal {
    let two = CertifiedReal::int_at(2, q.bits(), q.precision_bits());
    let u = q.checked_div(&(&two + q)).expect("1 + q bounded away from zero");
    atanh_series(&u).mul_int(&2.into())
}

/// Natural logarithm of a strictly positive enclosure.
pub fn ln(x: &CertifiedReal) -> CertifiedReal {
    assert!(x.is_positive(), "logarithm of a non-positive enclosure");
    let bits = x.bits();
    let e = x.mid_raw().bits() as i64 - 1 - bits as i64;
    let y = x.mul_pow2(-e);
    let one = CertifiedReal::int_at(1, bits, x.precision_bits());
    let u = (&y - &one).checked_div(&(&y + &one)).expect("y + 1 > 0");
    let ln_y = atanh_series(&u).mul_int(&2.into());
    if e == 0 {
        ln_y
    } else {
        &ln_y + &ln2_at(bits, x.precision_bits()).mul_int(&e.into())
    }
}

/// `ln(n)` for a positive integer.
pub fn ln_int(n: u64, precision_bits: u32) -> CertifiedReal {
    assert!(n > 0);
    if n == 1 {
        return CertifiedReal::zero(precision_bits);
    }
    let bits = CertifiedReal::working_bits(precision_bits);
    ln(&CertifiedReal::int_at(n as i64, bits + 8, precision_bits)).to_bits(bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    // reference digits (mpmath, 60 digits)
    const LN2: &str = "0.693147180559945309417232121458176568075500134360255254120680";
    const PI: &str = "3.141592653589793238462643383279502884197169399375105820974944";
    const E: &str = "2.718281828459045235360287471352662497757247093699959574966967";

    fn dec(s: &str) -> Rational {
        let (i, f) = s.split_once('.').unwrap();
        let den = num_traits::pow(num_bigint::BigInt::from(10), f.len());
        Rational::new(format!("{i}{f}").parse::<num_bigint::BigInt>().unwrap(), den).unwrap()
    }

    fn close(x: &CertifiedReal, reference: &str) {
        let r = dec(reference);
        // reference is truncated to 60 digits
        let mut widened = x.clone();
        widened.add_error(&Rational::new(1, num_traits::pow(num_bigint::BigInt::from(10), 59)).unwrap());
        assert!(widened.contains(&r), "{x} vs {reference}");
        assert!(x.abs_error() < Rational::pow2(-150));
    }

    #[test]
    fn constants() {
        close(&ln2(192), LN2);
        close(&pi(192), PI);
    }

    #[test]
    fn exp_and_log() {
        let one = CertifiedReal::from_integer(1, 192);
        close(&exp(&one), E);
        close(&ln(&exp(&one)), "1.000000000000000000000000000000000000000000000000000000000000");
        close(&ln_int(2, 192), LN2);
        let minus = exp(&CertifiedReal::from_integer(-30, 192));
        let back = ln(&minus);
        assert!(back.contains(&Rational::from(-30)));
    }

    #[test]
    fn ln1p_matches_ln() {
        let q = CertifiedReal::from_rational(&Rational::frac(3, 7), 128);
        let a = ln1p(&q);
        let b = ln(&CertifiedReal::from_rational(&Rational::frac(10, 7), 128));
        assert!(a.overlaps(&b));
    }

    #[test]
    fn exp_of_large_negative_is_tiny() {
        let x = exp(&CertifiedReal::from_integer(-100_000, 64));
        assert!(x.contains(&Rational::zero()));
        assert!(x.abs_error() <= Rational::pow2(-90));
    }
}
