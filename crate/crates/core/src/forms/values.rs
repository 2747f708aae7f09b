//! Certified values of `zeta(s)` and `eta(s)` at integers `s >= 2`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock, RwLock};

use num_bigint::BigInt;

use crate::certified::{alternating_sum, AlternatingSum, CertifiedReal};
use crate::exact::{binomial, Rational};

/// `B_0, B_1, ...` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Rational {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let mut table = CACHE.get_or_init(|| Mutex::new(vec![Rational::one()])).lock().unwrap();
    while table.len() <= n {
        let k = table.len() as u64;
        // sum_{j=0..k} C(k+1, j) B_j = 0
        let s: Rational = (0..k)
            .map(|j| table[j as usize].mul_int(&BigInt::from(binomial(k + 1, j).expect("j <= k + 1"))))
            .sum();
        table.push(-s / Rational::from(k as i64 + 1));
    }
    table[n].clone()
}

/// `zeta(s)` for an integer `s >= 2`.
///
/// Direct sum over `k < K`, then the Euler-Maclaurin tail
/// `K^(1-s)/(s-1) + K^(-s)/2 + sum_j B_2j/(2j)! (s)_(2j-1) K^(-s-2j+1)`, with the
/// remainder bounded by twice the first omitted correction.
pub fn zeta_at_exponent(s: u32, precision_bits: u32) -> CertifiedReal {
    assert!(s >= 2, "zeta needs s >= 2");
    type Cache = RwLock<HashMap<(u32, u32), CertifiedReal>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = cache.read().unwrap().get(&(s, precision_bits)) {
        return v.clone();
    }
    let v = euler_maclaurin(s, precision_bits);
    cache.write().unwrap().insert((s, precision_bits), v.clone());
    v
}

fn euler_maclaurin(s: u32, precision_bits: u32) -> CertifiedReal {
    let out_bits = CertifiedReal::working_bits(precision_bits);
    let bits = out_bits + 16;
    let big_k = (bits / 4 + 10) as i64;
    let mut sum = CertifiedReal::zero_at(bits, precision_bits);
    for k in 1..big_k {
        let term = Rational::new(1, num_traits::pow(BigInt::from(k), s as usize)).expect("k >= 1");
        sum = &sum + &CertifiedReal::from_rational_at(&term, bits, precision_bits);
    }
    let k_pow_s = Rational::from_integer(num_traits::pow(BigInt::from(big_k), s as usize));
    let head = Rational::from(big_k) / (&k_pow_s * Rational::from(s as i64 - 1)) + Rational::frac(1, 2) / &k_pow_s;
    sum = sum.add_rational(&head);

    // corrections are exact rationals, rounded once each
    let inv_k2 = Rational::frac(1, big_k * big_k);
    let mut power = Rational::one() / (&k_pow_s * Rational::from(big_k));
    // (s)_(2j-1) / (2j)!
    let mut coeff = Rational::frac(s as i64, 2);
    let mut j: u64 = 1;
    loop {
        let term = bernoulli(2 * j as usize) * &coeff * &power;
        sum = sum.add_rational(&term);
        coeff = &coeff
            * Rational::new((s as u64 + 2 * j - 1) * (s as u64 + 2 * j), (2 * j + 1) * (2 * j + 2)).expect("nonzero");
        power = &power * &inv_k2;
        let next = (bernoulli(2 * j as usize + 2) * &coeff * &power).abs();
        if next < Rational::pow2(-(bits as i64)) || j > bits as u64 {
            sum.add_error(&(next * Rational::from(2)));
            break;
        }
        j += 1;
    }
    sum.to_bits(out_bits)
}

/// `zeta(2m+1)`.
pub fn zeta_value(m: u32, precision_bits: u32) -> CertifiedReal {
    zeta_at_exponent(2 * m + 1, precision_bits)
}

/// `eta(2m+1) = sum_{k>=1} (-1)^(k-1) / k^(2m+1)` by accelerated alternating
/// summation; independent of the zeta routine.
pub fn eta_value(m: u32, precision_bits: u32) -> CertifiedReal {
    let s = (2 * m + 1) as usize;
    let out_bits = CertifiedReal::working_bits(precision_bits);
    let bits = out_bits + 8;
    alternating_sum(AlternatingSum::Accelerated, bits, precision_bits, |k| {
        let den = num_traits::pow(BigInt::from(k as u64 + 1), s);
        CertifiedReal::from_rational_at(&Rational::new(1, den).expect("nonzero"), bits, precision_bits)
    })
    .to_bits(out_bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::eta_zeta_factor;

    fn dec(s: &str) -> Rational {
        let (i, f) = s.split_once('.').unwrap();
        Rational::new(format!("{i}{f}").parse::<BigInt>().unwrap(), num_traits::pow(BigInt::from(10), f.len())).unwrap()
    }

    // mpmath, 58-60 digits, truncated
    const ZETA: [(u32, &str); 6] = [
        (1, "1.20205690315959428539973816151144999076498629234049888179227"),
        (2, "1.03692775514336992633136548645703416805708091950191281197419"),
        (3, "1.00834927738192282683979754984979675959986356056523870641728"),
        (4, "1.0020083928260822144178527692324120604856058513948887565486"),
        (5, "1.00049418860411946455870228252646993646860643575820861711914"),
        (6, "1.0001227133475784891467518365263573957142751058955098451367"),
    ];

    #[test]
    fn bernoulli_numbers() {
        assert_eq!(bernoulli(1), Rational::frac(-1, 2));
        assert_eq!(bernoulli(2), Rational::frac(1, 6));
        assert_eq!(bernoulli(3), Rational::zero());
        assert_eq!(bernoulli(4), Rational::frac(-1, 30));
        assert_eq!(bernoulli(12), Rational::frac(-691, 2730));
    }

    #[test]
    fn zeta_reference_digits() {
        for (m, digits) in ZETA {
            let z = zeta_at_exponent(2 * m + 1, 192);
            let mut widened = z.clone();
            widened.add_error(&Rational::new(1, num_traits::pow(BigInt::from(10), 57)).unwrap());
            assert!(widened.contains(&dec(digits)), "m={m}: {z}");
            assert!(z.abs_error() < Rational::pow2(-192));
        }
    }

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let pi = crate::certified::pi(128);
        let z2 = zeta_at_exponent(2, 128);
        let ref_ = pi.square().div_int(6);
        assert!(z2.overlaps(&ref_));
    }

    #[test]
    fn eta_route_agrees() {
        for m in 2..7 {
            let z = zeta_value(m, 192);
            let e = eta_value(m, 192);
            let via = z.mul_rational(&eta_zeta_factor(m));
            assert!(via.overlaps(&e), "m={m}");
            assert!(e.abs_error() < Rational::pow2(-190));
        }
    }

    #[test]
    fn higher_precision_nests() {
        let lo = zeta_value(2, 128);
        let hi = zeta_value(2, 512);
        assert!(hi.to_bits(lo.bits()).is_within(&lo) || hi.overlaps(&lo));
        assert!(lo.contains(&hi.value()));
    }
}
