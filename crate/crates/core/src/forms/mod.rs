//! Closed forms: alternating partial sums, the affine-in-zeta representation
//! of `I_{n,m}`, the rationals `P*_{n,m}`, and certified odd zeta values.

mod values;

pub use values::{bernoulli, eta_value, zeta_at_exponent, zeta_value};

use num_bigint::BigInt;

use crate::certified::CertifiedReal;
use crate::exact::{binomial_row, Rational};

/// `sum_{k=1..M} (-1)^(k-1) / k^(2m+1)`.
pub fn eta_partial(big_m: u64, m: u32) -> Rational {
    eta_partials(0, big_m, m).pop().unwrap_or_else(Rational::zero)
}

/// `eta_partial(M, m)` for `M = from..=to`, folded once.
pub fn eta_partials(from: u64, to: u64, m: u32) -> Vec<Rational> {
    let s = 2 * m + 1;
    let mut acc = Rational::zero();
    let mut out = Vec::with_capacity((to.saturating_sub(from) + 1) as usize);
    if from == 0 {
        out.push(acc.clone());
    }
    for k in 1..=to {
        let term = Rational::new(1, num_traits::pow(BigInt::from(k), s as usize)).expect("k >= 1");
        if k % 2 == 1 {
            acc += &term;
        } else {
            acc -= &term;
        }
        if k >= from {
            out.push(acc.clone());
        }
    }
    out
}

/// `1 - 2^(-2m)`, the factor in `eta(2m+1) = (1 - 2^(-2m)) zeta(2m+1)`.
pub fn eta_zeta_factor(m: u32) -> Rational {
    Rational::one() - Rational::pow2(-2 * m as i64)
}

/// `(2^(2m) - 1) 2^(n - 2m)`, up to the sign `(-1)^n`.
pub fn scale_factor(n: u64, m: u32) -> Rational {
    Rational::from_integer((BigInt::from(1) << (2 * m)) - 1) * Rational::pow2(n as i64 - 2 * m as i64)
}

/// `alpha * zeta(2m+1) + beta` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaAffine {
    pub m: u32,
    pub alpha: Rational,
    pub beta: Rational,
}

impl ZetaAffine {
    /// Certified value with absolute error near `2^-precision_bits`: zeta is
    /// evaluated with enough extra bits to absorb the size of `alpha`.
    pub fn eval(&self, precision_bits: u32) -> CertifiedReal {
        let extra = self.alpha.numer().bits() as u32;
        let z = zeta_value(self.m, precision_bits + extra);
        let v = z.mul_rational(&self.alpha).add_rational(&self.beta);
        v.with_precision(precision_bits)
    }

    /// Exact value after substituting `zeta(2m+1) := x`.
    pub fn eval_at(&self, x: &Rational) -> Rational {
        &self.alpha * x + &self.beta
    }
}

/// `I_{n,m} = (-1)^n (2^(2m)-1) 2^(n-2m) zeta(2m+1)
///   + (-1)^(n+1) sum_{s=0..n} C(n,s) eta_partial(n+s, m)`.
pub fn closed_form_i(n: u64, m: u32) -> ZetaAffine {
    assert!(n >= 1 && m >= 2, "closed form needs n >= 1, m >= 2");
    let sum = binomial_eta_sum(n, m);
    let mut alpha = scale_factor(n, m);
    let mut beta = sum;
    if n % 2 == 1 {
        alpha = -alpha;
    } else {
        beta = -beta;
    }
    ZetaAffine { m, alpha, beta }
}

/// `sum_{s=0..n} C(n,s) eta_partial(n+s, m)`.
fn binomial_eta_sum(n: u64, m: u32) -> Rational {
    let row = binomial_row(n);
    let partials = eta_partials(n, 2 * n, m);
    row.iter().zip(&partials).map(|(c, e)| e.mul_int(&BigInt::from(c.clone()))).sum()
}

/// `P*_{n,m} = sum_{s=0..2n} C(2n,s) eta_partial(2n+s, m) / ((2^(2m)-1) 2^(2n-2m))`.
pub fn p_star(n: u64, m: u32) -> Rational {
    assert!(n >= 1 && m >= 2, "P* needs n >= 1, m >= 2");
    binomial_eta_sum(2 * n, m) / scale_factor(2 * n, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Literal fold, term by term.
    fn eta_fold(big_m: u64, m: u32) -> Rational {
        (1..=big_m as i64)
            .map(|k| {
                let t = Rational::frac(1, k).pow(2 * m + 1);
                if k % 2 == 1 { t } else { -t }
            })
            .sum()
    }

    #[test]
    fn eta_partial_examples() {
        assert_eq!(eta_partial(0, 2), Rational::zero());
        assert_eq!(eta_partial(1, 2), Rational::one());
        assert_eq!(eta_partial(2, 2), Rational::frac(31, 32));
        assert_eq!(eta_partial(3, 2), Rational::frac(7565, 7776));
        for m in 2..5 {
            for big_m in 0..25 {
                assert_eq!(eta_partial(big_m, m), eta_fold(big_m, m));
            }
        }
    }

    #[test]
    fn partial_sums_nest() {
        let e = eta_partials(0, 40, 2);
        let eta = eta_value(2, 128);
        for k in 1..40 {
            let (lo, hi) = if e[k - 1] < e[k] { (&e[k - 1], &e[k]) } else { (&e[k], &e[k - 1]) };
            assert!(lo < &e[k + 1] && &e[k + 1] < hi);
            let (lo, hi) = if e[k] < e[k + 1] { (&e[k], &e[k + 1]) } else { (&e[k + 1], &e[k]) };
            assert!(eta.cmp_rational(lo) == Some(std::cmp::Ordering::Greater));
            assert!(eta.cmp_rational(hi) == Some(std::cmp::Ordering::Less));
        }
    }

    #[test]
    fn factor_values() {
        assert_eq!(eta_zeta_factor(2), Rational::frac(15, 16));
        assert_eq!(eta_zeta_factor(3), Rational::frac(63, 64));
        assert_eq!(eta_zeta_factor(4), Rational::frac(255, 256));
    }

    #[test]
    fn closed_form_examples() {
        let f = closed_form_i(1, 2);
        assert_eq!(f.alpha, Rational::frac(-15, 8));
        assert_eq!(f.beta, Rational::frac(63, 32));
        assert_eq!(closed_form_i(2, 2).alpha, Rational::frac(15, 4));
        assert_eq!(closed_form_i(1, 3).alpha, Rational::frac(-63, 32));
    }

    #[test]
    fn alpha_formula() {
        for m in 2..6u32 {
            for n in 1..15u64 {
                let sign = if n % 2 == 0 { 1 } else { -1 };
                let expected = Rational::from(sign * ((1i64 << (2 * m)) - 1)) * Rational::pow2(n as i64 - 2 * m as i64);
                assert_eq!(closed_form_i(n, m).alpha, expected);
            }
        }
    }

    #[test]
    fn p_star_first_value() {
        let expected = Rational::frac(4, 15)
            * (Rational::frac(31, 32) + Rational::frac(2 * 7565, 7776) + eta_fold(4, 2));
        assert_eq!(p_star(1, 2), expected);
        assert_eq!(p_star(1, 2).floor(), BigInt::from(1));
    }

    #[test]
    fn even_index_form_is_scaled_zeta_minus_p_star() {
        for m in 2..5u32 {
            for n in 1..8u64 {
                let f = closed_form_i(2 * n, m);
                let c = scale_factor(2 * n, m);
                assert_eq!(f.alpha, c);
                assert_eq!(f.beta, -(&c * p_star(n, m)));
            }
        }
    }

    #[test]
    fn first_integral_value() {
        // mpmath quadrature of the reduced integral, 60 digits
        let reference: Rational = "245104591061813881286897128930609348929732759339134775483887/10000000000000000000000000000000000000000000000000000000000000"
            .parse()
            .unwrap();
        let v = closed_form_i(1, 2).eval(192);
        let mut widened = v.clone();
        widened.add_error(&Rational::new(1, num_traits::pow(BigInt::from(10), 60)).unwrap());
        assert!(widened.contains(&reference), "{v}");
        assert!(v.abs_error() < Rational::pow2(-190));
    }
}
