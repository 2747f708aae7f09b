//! Fixed-point midpoint-radius arithmetic.
//!
//! A [`CertifiedReal`] stores a midpoint `mid * 2^-bits` and a radius
//! `rad * 2^-bits`; the represented quantity is guaranteed to lie in the closed
//! interval `[mid - rad, mid + rad]`. Every operation rounds the midpoint and
//! grows the radius by enough to keep that guarantee.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::{format_scaled, Rational};

/// Extra fractional bits carried beyond the requested precision.
pub const GUARD_BITS: u32 = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedReal {
    mid: BigInt,
    rad: BigUint,
    bits: u32,
    precision_bits: u32,
}

/// `x / 2^s` rounded to nearest (ties up).
fn round_shift(x: &BigInt, s: u32) -> BigInt {
    if s == 0 {
        return x.clone();
    }
    (x + (BigInt::one() << (s - 1))) >> s
}

fn ceil_shift(x: &BigUint, s: u32) -> BigUint {
    if s == 0 {
        return x.clone();
    }
    let q = x >> s;
    if (&q << s) == *x {
        q
    } else {
        q + 1u32
    }
}

fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

/// `round(num / den)` for `den > 0`.
fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    debug_assert!(den.is_positive());
    (num * BigInt::from(2) + den).div_floor(&(den * BigInt::from(2)))
}

impl CertifiedReal {
    /// Working fractional bits used for a requested precision.
    pub fn working_bits(precision_bits: u32) -> u32 {
        precision_bits + GUARD_BITS
    }

    pub(crate) fn from_parts(mid: BigInt, rad: BigUint, bits: u32, precision_bits: u32) -> Self {
        CertifiedReal { mid, rad, bits, precision_bits }
    }

    pub fn zero(precision_bits: u32) -> Self {
        Self::zero_at(Self::working_bits(precision_bits), precision_bits)
    }

    pub(crate) fn zero_at(bits: u32, precision_bits: u32) -> Self {
        CertifiedReal { mid: BigInt::zero(), rad: BigUint::zero(), bits, precision_bits }
    }

    /// Encloses an exact rational at the working precision for `precision_bits`.
    pub fn from_rational(value: &Rational, precision_bits: u32) -> Self {
        Self::from_rational_at(value, Self::working_bits(precision_bits), precision_bits)
    }

    pub(crate) fn from_rational_at(value: &Rational, bits: u32, precision_bits: u32) -> Self {
        let scaled = value.numer() << bits;
        let (mid, exact) = if value.denom().is_one() {
            (scaled, true)
        } else {
            let (q, r) = scaled.div_rem(value.denom());
            if r.is_zero() {
                (q, true)
            } else {
                (round_div(&scaled, value.denom()), false)
            }
        };
        let rad = if exact { BigUint::zero() } else { BigUint::one() };
        CertifiedReal { mid, rad, bits, precision_bits }
    }

    pub fn from_integer(value: impl Into<BigInt>, precision_bits: u32) -> Self {
        let bits = Self::working_bits(precision_bits);
        CertifiedReal { mid: value.into() << bits, rad: BigUint::zero(), bits, precision_bits }
    }

    /// An interval `[center - radius, center + radius]` with exact rational data,
    /// rounded outward to the working grid.
    pub fn from_center_radius(center: &Rational, radius: &Rational, precision_bits: u32) -> Self {
        let mut out = Self::from_rational(center, precision_bits);
        out.add_error(radius);
        out
    }

    pub(crate) fn int_at(value: i64, bits: u32, precision_bits: u32) -> Self {
        CertifiedReal { mid: BigInt::from(value) << bits, rad: BigUint::zero(), bits, precision_bits }
    }

    /// Widens the radius by a non-negative rational amount (rounded up).
    pub fn add_error(&mut self, err: &Rational) {
        let err = err.abs();
        if err.is_zero() {
            return;
        }
        let scaled = err.numer().magnitude() << self.bits;
        self.rad += ceil_div(&scaled, err.denom().magnitude());
    }

    pub(crate) fn add_ulps(&mut self, ulps: impl Into<BigUint>) {
        self.rad += ulps.into();
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// Fractional bits of the internal fixed-point grid.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub(crate) fn mid_raw(&self) -> &BigInt {
        &self.mid
    }

    pub(crate) fn rad_raw(&self) -> &BigUint {
        &self.rad
    }

    /// Midpoint as an exact dyadic rational.
    pub fn value(&self) -> Rational {
        Rational::new(self.mid.clone(), BigInt::one() << self.bits).expect("nonzero")
    }

    /// Radius as an exact dyadic rational.
    pub fn abs_error(&self) -> Rational {
        Rational::new(BigInt::from(self.rad.clone()), BigInt::one() << self.bits).expect("nonzero")
    }

    pub fn lower(&self) -> Rational {
        Rational::new(&self.mid - BigInt::from(self.rad.clone()), BigInt::one() << self.bits).expect("nonzero")
    }

    pub fn upper(&self) -> Rational {
        Rational::new(&self.mid + BigInt::from(self.rad.clone()), BigInt::one() << self.bits).expect("nonzero")
    }

    /// Upper bound on `|x|` in units of `2^-bits`.
    pub(crate) fn mag_ulps(&self) -> BigUint {
        self.mid.magnitude() + &self.rad
    }

    /// `abs_error <= 2^(-precision_bits / 2)`.
    pub fn is_accepted(&self) -> bool {
        self.abs_error() <= Rational::pow2(-(self.precision_bits as i64 / 2))
    }

    pub fn to_f64(&self) -> f64 {
        self.value().to_f64()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lower() <= *x && *x <= self.upper()
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.magnitude() <= &self.rad
    }

    /// Whole interval `> 0`.
    pub fn is_positive(&self) -> bool {
        self.mid.is_positive() && self.mid.magnitude() > &self.rad
    }

    /// Whole interval `< 0`.
    pub fn is_negative(&self) -> bool {
        self.mid.is_negative() && self.mid.magnitude() > &self.rad
    }

    /// `Some(Less)` when the whole interval is `< x`, `Some(Greater)` when it is
    /// `> x`; `None` when the comparison cannot be decided.
    pub fn cmp_rational(&self, x: &Rational) -> Option<Ordering> {
        if self.upper() < *x {
            Some(Ordering::Less)
        } else if self.lower() > *x {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    /// Certified ordering of two intervals; `None` when they overlap.
    pub fn cmp_certified(&self, other: &CertifiedReal) -> Option<Ordering> {
        if self.upper() < other.lower() {
            Some(Ordering::Less)
        } else if self.lower() > other.upper() {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    /// True when the two enclosures share at least one point.
    pub fn overlaps(&self, other: &CertifiedReal) -> bool {
        !(self.upper() < other.lower() || other.upper() < self.lower())
    }

    /// `self` lies entirely inside `other`.
    pub fn is_within(&self, other: &CertifiedReal) -> bool {
        other.lower() <= self.lower() && self.upper() <= other.upper()
    }

    /// The floor, when every point of the interval has the same floor.
    pub fn floor(&self) -> Option<BigInt> {
        let lo = self.lower().floor();
        (self.upper().floor() == lo).then_some(lo)
    }

    /// Moves the value onto a grid with `bits` fractional bits.
    pub fn to_bits(&self, bits: u32) -> Self {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = bits - self.bits;
                CertifiedReal { mid: &self.mid << s, rad: &self.rad << s, bits, precision_bits: self.precision_bits }
            }
            Ordering::Less => {
                let s = self.bits - bits;
                CertifiedReal {
                    mid: round_shift(&self.mid, s),
                    rad: ceil_shift(&self.rad, s) + 1u32,
                    bits,
                    precision_bits: self.precision_bits,
                }
            }
        }
    }

    /// Re-labels the nominal precision and moves to its working grid.
    pub fn with_precision(&self, precision_bits: u32) -> Self {
        let mut out = self.to_bits(Self::working_bits(precision_bits));
        out.precision_bits = precision_bits;
        out
    }

    fn align(&self, other: &CertifiedReal) -> (u32, u32) {
        assert_eq!(self.bits, other.bits, "mixed fixed-point grids: {} vs {}", self.bits, other.bits);
        (self.bits, self.precision_bits.min(other.precision_bits))
    }

    pub fn abs(&self) -> Self {
        CertifiedReal { mid: self.mid.abs(), ..self.clone() }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn powi(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CertifiedReal::int_at(1, self.bits, self.precision_bits);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Exact multiplication by an integer.
    pub fn mul_int(&self, k: &BigInt) -> Self {
        CertifiedReal { mid: &self.mid * k, rad: &self.rad * k.magnitude(), ..self.clone() }
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        if r.denom().is_one() {
            self.mul_int(r.numer())
        } else {
            self * &CertifiedReal::from_rational_at(r, self.bits, self.precision_bits)
        }
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        self + &CertifiedReal::from_rational_at(r, self.bits, self.precision_bits)
    }

    /// Division by a nonzero machine integer.
    pub fn div_int(&self, k: u64) -> Self {
        assert!(k != 0, "division by zero");
        let kb = BigInt::from(k);
        let exact = self.mid.is_multiple_of(&kb);
        let mid = round_div(&self.mid, &kb);
        let mut rad = ceil_div(&self.rad, &BigUint::from(k));
        if !exact {
            rad += 1u32;
        }
        CertifiedReal { mid, rad, ..self.clone() }
    }

    /// Multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if k >= 0 {
            let s = k as u32;
            CertifiedReal { mid: &self.mid << s, rad: &self.rad << s, ..self.clone() }
        } else {
            let s = k.unsigned_abs().min(u32::MAX as u64) as u32;
            let exact = self.mid.is_zero() || self.mid.trailing_zeros().unwrap_or(0) >= s as u64;
            let mid = round_shift(&self.mid, s);
            let mut rad = ceil_shift(&self.rad, s);
            if !exact {
                rad += 1u32;
            }
            CertifiedReal { mid, rad, ..self.clone() }
        }
    }

    /// Division; `None` when the divisor's interval contains zero.
    pub fn checked_div(&self, other: &CertifiedReal) -> Option<Self> {
        let (bits, precision_bits) = self.align(other);
        if other.contains_zero() {
            return None;
        }
        let (a, b) = if other.mid.is_negative() {
            (-&self.mid, -&other.mid)
        } else {
            (self.mid.clone(), other.mid.clone())
        };
        let scaled = &a << bits;
        let exact = scaled.is_multiple_of(&b);
        let mid = round_div(&scaled, &b);
        let bm = b.magnitude();
        let num = (&self.rad * bm + a.magnitude() * &other.rad) << bits;
        let den = bm * (bm - &other.rad);
        let mut rad = ceil_div(&num, &den);
        if !exact {
            rad += 1u32;
        }
        Some(CertifiedReal { mid, rad, bits, precision_bits })
    }

    pub fn recip(&self) -> Option<Self> {
        CertifiedReal::int_at(1, self.bits, self.precision_bits).checked_div(self)
    }

    /// Outward-rounded decimal endpoints with `digits` fractional digits.
    pub fn decimal_bounds(&self, digits: usize) -> (String, String) {
        let scale = num_traits::pow(BigInt::from(10u32), digits);
        let den = BigInt::one() << self.bits;
        let lo = (&self.mid - BigInt::from(self.rad.clone())) * &scale;
        let hi = (&self.mid + BigInt::from(self.rad.clone())) * &scale;
        let lo = lo.div_floor(&den);
        let hi = -((-hi).div_floor(&den));
        (signed_decimal(&lo, digits), signed_decimal(&hi, digits))
    }

    /// Midpoint rounded to `digits` fractional decimal digits.
    pub fn decimal_mid(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10u32), digits);
        let den = BigInt::one() << self.bits;
        let q = round_div(&(&self.mid * scale), &den);
        signed_decimal(&q, digits)
    }

    /// Decimal digits that are meaningful given the radius (at least 1, at most
    /// what the grid carries).
    pub fn meaningful_digits(&self) -> usize {
        let grid = (self.bits as f64 * std::f64::consts::LOG10_2) as usize;
        let err = self.rad.to_f64().unwrap_or(f64::INFINITY);
        if err <= 0.0 || !err.is_finite() {
            return grid.max(1);
        }
        let err_log10 = err.log10() - self.bits as f64 * std::f64::consts::LOG10_2;
        ((-err_log10).floor() as isize).clamp(1, grid as isize) as usize
    }
}

fn signed_decimal(x: &BigInt, digits: usize) -> String {
    format_scaled(x.sign() == Sign::Minus, x.magnitude(), digits)
}

/// Upper bound on a non-negative rational in two significant decimal digits,
/// e.g. `3.2e-58`.
pub fn format_error_bound(err: &Rational) -> String {
    if err.is_zero() {
        return "0".to_string();
    }
    let num = err.numer().magnitude().clone();
    let den = err.denom().magnitude().clone();
    // find e with 10 <= err * 10^(-e) * 10 < 100, i.e. two leading digits
    let digits_num = num.to_str_radix(10).len() as i64;
    let digits_den = den.to_str_radix(10).len() as i64;
    let mut e = digits_num - digits_den - 1;
    loop {
        let (n, d) = scale10(&num, &den, 1 - e);
        let q = ceil_div(&n, &d);
        if q >= BigUint::from(100u32) {
            e += 1;
            continue;
        }
        if q < BigUint::from(10u32) {
            e -= 1;
            continue;
        }
        let q = q.to_u32().unwrap();
        if q == 100 {
            e += 1;
            continue;
        }
        return format!("{}.{}e{}", q / 10, q % 10, e);
    }
}

fn scale10(num: &BigUint, den: &BigUint, e: i64) -> (BigUint, BigUint) {
    let p = num_traits::pow(BigUint::from(10u32), e.unsigned_abs() as usize);
    if e >= 0 {
        (num * p, den.clone())
    } else {
        (num.clone(), den * p)
    }
}

impl fmt::Display for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.meaningful_digits().min(80);
        write!(f, "{} ± {}", self.decimal_mid(digits), format_error_bound(&self.abs_error()))
    }
}

impl Add for &CertifiedReal {
    type Output = CertifiedReal;
    fn add(self, rhs: &CertifiedReal) -> CertifiedReal {
        let (bits, precision_bits) = self.align(rhs);
        CertifiedReal { mid: &self.mid + &rhs.mid, rad: &self.rad + &rhs.rad, bits, precision_bits }
    }
}

impl Sub for &CertifiedReal {
    type Output = CertifiedReal;
    fn sub(self, rhs: &CertifiedReal) -> CertifiedReal {
        let (bits, precision_bits) = self.align(rhs);
        CertifiedReal { mid: &self.mid - &rhs.mid, rad: &self.rad + &rhs.rad, bits, precision_bits }
    }
}

impl Mul for &CertifiedReal {
    type Output = CertifiedReal;
    fn mul(self, rhs: &CertifiedReal) -> CertifiedReal {
        let (bits, precision_bits) = self.align(rhs);
        let prod = &self.mid * &rhs.mid;
        let exact = prod.is_zero() || prod.trailing_zeros().unwrap_or(0) >= bits as u64;
        let mid = round_shift(&prod, bits);
        let spread = self.mid.magnitude() * &rhs.rad + rhs.mid.magnitude() * &self.rad + &self.rad * &rhs.rad;
        let mut rad = ceil_shift(&spread, bits);
        if !exact {
            rad += 1u32;
        }
        CertifiedReal { mid, rad, bits, precision_bits }
    }
}

impl Neg for &CertifiedReal {
    type Output = CertifiedReal;
    fn neg(self) -> CertifiedReal {
        CertifiedReal { mid: -&self.mid, ..self.clone() }
    }
}

macro_rules! owned_ops {
    ($trait:ident, $method:ident) => {
        impl $trait for CertifiedReal {
            type Output = CertifiedReal;
            fn $method(self, rhs: CertifiedReal) -> CertifiedReal {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CertifiedReal> for CertifiedReal {
            type Output = CertifiedReal;
            fn $method(self, rhs: &CertifiedReal) -> CertifiedReal {
                (&self).$method(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for CertifiedReal {
    type Output = CertifiedReal;
    fn neg(self) -> CertifiedReal {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn rational_enclosure() {
        let x = CertifiedReal::from_rational(&r(1, 3), 64);
        assert!(x.contains(&r(1, 3)));
        let y = CertifiedReal::from_rational(&r(3, 8), 64);
        assert!(y.abs_error().is_zero());
    }

    #[test]
    fn arithmetic_encloses_exact_results() {
        let a = r(-7, 3);
        let b = r(5, 11);
        let (x, y) = (CertifiedReal::from_rational(&a, 64), CertifiedReal::from_rational(&b, 64));
        assert!((&x + &y).contains(&(&a + &b)));
        assert!((&x - &y).contains(&(&a - &b)));
        assert!((&x * &y).contains(&(&a * &b)));
        assert!(x.checked_div(&y).unwrap().contains(&(&a / &b)));
        assert!(y.checked_div(&x).unwrap().contains(&(&b / &a)));
        assert!(x.div_int(7).contains(&(&a / &Rational::from(7))));
        assert!(x.powi(5).contains(&a.pow(5)));
        assert!(x.mul_pow2(-40).contains(&(&a * &Rational::pow2(-40))));
    }

    #[test]
    fn division_by_ball_containing_zero() {
        let mut z = CertifiedReal::zero(64);
        z.add_error(&r(1, 1000));
        assert!(CertifiedReal::from_integer(1, 64).checked_div(&z).is_none());
    }

    #[test]
    fn floor_refuses_straddle() {
        let mut x = CertifiedReal::from_rational(&r(1, 1), 64);
        x.add_error(&Rational::pow2(-70));
        assert_eq!(x.floor(), None);
        let y = CertifiedReal::from_rational(&r(3, 2), 64);
        assert_eq!(y.floor(), Some(BigInt::from(1)));
    }

    #[test]
    fn decimal_bounds_are_outward() {
        let x = CertifiedReal::from_rational(&r(2, 3), 64);
        let (lo, hi) = x.decimal_bounds(10);
        assert_eq!(lo, "0.6666666666");
        assert_eq!(hi, "0.6666666667");
        let n = CertifiedReal::from_rational(&r(-2, 3), 64);
        assert_eq!(n.decimal_bounds(4), ("-0.6667".to_string(), "-0.6666".to_string()));
    }

    #[test]
    fn error_formatting_rounds_up() {
        assert_eq!(format_error_bound(&r(1, 3)), "3.4e-1");
        assert_eq!(format_error_bound(&r(25, 1)), "2.5e1");
        assert_eq!(format_error_bound(&Rational::pow2(-10)), "9.8e-4");
        assert_eq!(format_error_bound(&r(99, 1000)), "9.9e-2");
        assert_eq!(format_error_bound(&r(991, 10000)), "1.0e-1");
    }

    #[test]
    fn rescale_keeps_enclosure() {
        let x = CertifiedReal::from_rational(&r(1, 7), 128);
        let lo = x.to_bits(40);
        assert!(x.is_within(&lo));
        assert!(lo.contains(&r(1, 7)));
    }
}
