//! Independent numerical oracles for `I_{n,m}` and the log-moment integrals.

mod tanh_sinh;

pub use tanh_sinh::{integrate, LogKernel, QuadratureConfig, QuadratureResult};

use num_bigint::BigInt;

use crate::certified::{alternating_sum, AlternatingSum, CertifiedReal};
use crate::error::Result;
use crate::exact::{binomial_row, factorial, Rational};

/// The one-dimensional form of `I_{n,m}`:
/// `(1/(2m)!) (-log z)^(2m) (z(1-z))^n / (1+z)`.
pub fn reduce_double_to_single(n: u64, m: u32) -> LogKernel {
    LogKernel {
        log_power: 2 * m,
        z_power: n as u32,
        one_minus_z_power: n as u32,
        denominator_one_plus_z: true,
        prefactor: Rational::one() / Rational::from(factorial(2 * m as u64)),
    }
}

/// `I_{n,m}` by tanh-sinh quadrature of the reduced integrand.
pub fn oracle_i_quadrature(n: u64, m: u32, precision_bits: u32, config: QuadratureConfig) -> Result<QuadratureResult> {
    integrate(&reduce_double_to_single(n, m), precision_bits, config)
}

/// `int_0^1 int_0^1 (-log xy)^s / (1 + xy) dx dy = int_0^1 (-log z)^(s+1) / (1 + z) dz`.
pub fn log_moment_integral(s: u32, precision_bits: u32, config: QuadratureConfig) -> Result<QuadratureResult> {
    let kernel = LogKernel {
        log_power: s + 1,
        z_power: 0,
        one_minus_z_power: 0,
        denominator_one_plus_z: true,
        prefactor: Rational::one(),
    };
    integrate(&kernel, precision_bits, config)
}

/// `int_0^1 (-log y)^(2m) y^big_n / (1 + y) dy`.
pub fn single_moment_quadrature(big_n: u64, m: u32, precision_bits: u32, config: QuadratureConfig) -> Result<QuadratureResult> {
    let kernel = LogKernel {
        log_power: 2 * m,
        z_power: big_n as u32,
        one_minus_z_power: 0,
        denominator_one_plus_z: true,
        prefactor: Rational::one(),
    };
    integrate(&kernel, precision_bits, config)
}

/// `sum_{k>=0} (-1)^k / (c + k)^(2m+1)` for `c >= 1`.
pub fn alternating_tail(c: u64, m: u32, bits: u32, precision_bits: u32, mode: AlternatingSum) -> CertifiedReal {
    let s = (2 * m + 1) as usize;
    alternating_sum(mode, bits, precision_bits, |k| {
        let den = num_traits::pow(BigInt::from(c + k as u64), s);
        CertifiedReal::from_rational_at(&Rational::new(1, den).expect("c >= 1"), bits, precision_bits)
    })
}

/// `Gamma(2m+1) sum_k (-1)^k / (big_n + k + 1)^(2m+1)`, the series side of the
/// single moment.
pub fn single_moment_series(big_n: u64, m: u32, precision_bits: u32) -> CertifiedReal {
    let out = CertifiedReal::working_bits(precision_bits);
    let bits = out + 8;
    alternating_tail(big_n + 1, m, bits, precision_bits, AlternatingSum::Accelerated)
        .mul_int(&BigInt::from(factorial(2 * m as u64)))
        .to_bits(out)
}

/// `I_{n,m} = sum_{s=0..n} (-1)^s C(n,s) sum_{k>=0} (-1)^k / (n+k+s+1)^(2m+1)`.
pub fn oracle_i_series(n: u64, m: u32, precision_bits: u32) -> CertifiedReal {
    oracle_i_series_with(n, m, precision_bits, AlternatingSum::Accelerated)
}

/// As [`oracle_i_series`], choosing how each inner alternating sum is cut.
pub fn oracle_i_series_with(n: u64, m: u32, precision_bits: u32, mode: AlternatingSum) -> CertifiedReal {
    let out = CertifiedReal::working_bits(precision_bits);
    // the outer sum cancels about 2n bits
    let bits = out + 2 * n as u32 + 16;
    let mut total = CertifiedReal::zero_at(bits, precision_bits);
    for (s, c) in binomial_row(n).into_iter().enumerate() {
        let inner = alternating_tail(n + s as u64 + 1, m, bits, precision_bits, mode);
        let term = inner.mul_int(&BigInt::from(c));
        total = if s % 2 == 0 { &total + &term } else { &total - &term };
    }
    total.to_bits(out)
}

/// The absolute-convergence majorant `Gamma(2m+1) sum_k 1/(big_n+k+1)^(2m+1)`
/// of the inner series, as `Gamma(2m+1) (zeta(2m+1) - H_big_n^(2m+1))`.
pub fn absolute_majorant(big_n: u64, m: u32, precision_bits: u32) -> CertifiedReal {
    let s = 2 * m + 1;
    let harmonic: Rational = (1..=big_n as i64).map(|k| Rational::frac(1, k).pow(s)).sum();
    let z = crate::forms::zeta_value(m, precision_bits);
    (z.add_rational(&-harmonic)).mul_int(&BigInt::from(factorial(2 * m as u64)))
}

/// Weights of the closed Newton-Cotes rule on `0, 1/d, ..., 1`, exact for
/// polynomials of degree `<= d`.
pub fn newton_cotes_weights(d: usize) -> Vec<Rational> {
    // solve sum_i w_i x_i^k = 1/(k+1), k = 0..d, by exact Gaussian elimination
    let nodes: Vec<Rational> = (0..=d).map(|i| Rational::frac(i as i64, d as i64)).collect();
    let mut rows: Vec<Vec<Rational>> = (0..=d)
        .map(|k| {
            let mut row: Vec<Rational> = nodes.iter().map(|x| x.pow(k as u32)).collect();
            row.push(Rational::frac(1, k as i64 + 1));
            row
        })
        .collect();
    for col in 0..=d {
        let pivot = (col..=d).find(|&r| !rows[r][col].is_zero()).expect("Vandermonde is invertible");
        rows.swap(col, pivot);
        let p = rows[col][col].clone();
        for x in rows[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..=d {
            if r != col && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..=d + 1 {
                    let sub = &f * &rows[col][c];
                    rows[r][c] -= &sub;
                }
            }
        }
    }
    rows.into_iter().map(|r| r[d + 1].clone()).collect()
}

/// `int_0^1 int_0^1 F(xy) dx dy` by the tensor-product Newton-Cotes rule of
/// degree `d`; exact for polynomial `F` of degree `<= d`.
pub fn product_rule_2d(d: usize, f: impl Fn(&Rational) -> Rational) -> Rational {
    let w = newton_cotes_weights(d);
    let x: Vec<Rational> = (0..=d).map(|i| Rational::frac(i as i64, d as i64)).collect();
    let mut total = Rational::zero();
    for (wi, xi) in w.iter().zip(&x) {
        for (wj, yj) in w.iter().zip(&x) {
            total += &(wi * wj * f(&(xi * yj)));
        }
    }
    total
}

/// `int_0^1 z^j (-log z) dz` by quadrature: the one-dimensional side of the
/// reduction identity for `F(t) = t^j`.
pub fn reduced_monomial(j: u32, precision_bits: u32, config: QuadratureConfig) -> Result<QuadratureResult> {
    let kernel = LogKernel {
        log_power: 1,
        z_power: j,
        one_minus_z_power: 0,
        denominator_one_plus_z: false,
        prefactor: Rational::one(),
    };
    integrate(&kernel, precision_bits, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::closed_form_i;

    #[test]
    fn reduced_kernels() {
        let k = reduce_double_to_single(1, 2);
        assert_eq!((k.log_power, k.z_power, k.one_minus_z_power), (4, 1, 1));
        assert!(k.denominator_one_plus_z);
        assert_eq!(k.prefactor, Rational::frac(1, 24));
        assert_eq!(reduce_double_to_single(2, 2).z_power, 2);
        assert_eq!(reduce_double_to_single(1, 3).prefactor, Rational::frac(1, 720));
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let q = oracle_i_quadrature(1, 2, 192, QuadratureConfig::default()).unwrap();
        assert!(q.converged);
        let cf = closed_form_i(1, 2).eval(192);
        assert!(q.estimate.overlaps(&cf), "{} vs {}", q.estimate, cf);
        assert!(q.estimate.abs_error() < Rational::pow2(-150));
    }

    #[test]
    fn series_matches_closed_form() {
        for n in [1, 4] {
            let s = oracle_i_series(n, 2, 192);
            let cf = closed_form_i(n, 2).eval(192);
            assert!(s.overlaps(&cf));
            assert!(s.abs_error() < Rational::pow2(-180));
        }
    }

    #[test]
    fn one_and_two_term_truncations_bracket() {
        let t1 = oracle_i_series_with(1, 2, 128, AlternatingSum::Truncated(1)).value();
        let t2 = oracle_i_series_with(1, 2, 128, AlternatingSum::Truncated(2)).value();
        let v = closed_form_i(1, 2).eval(128);
        let (lo, hi) = if t1 < t2 { (t1, t2) } else { (t2, t1) };
        assert!(v.cmp_rational(&lo) == Some(std::cmp::Ordering::Greater));
        assert!(v.cmp_rational(&hi) == Some(std::cmp::Ordering::Less));
    }

    #[test]
    fn newton_cotes_is_exact() {
        let w = newton_cotes_weights(8);
        assert_eq!(w.iter().sum::<Rational>(), Rational::one());
        for j in 0..=8u32 {
            let v = product_rule_2d(8, |t| t.pow(j));
            assert_eq!(v, Rational::frac(1, (j as i64 + 1).pow(2)));
        }
    }

    #[test]
    fn log_moment_three() {
        let q = log_moment_integral(3, 192, QuadratureConfig::default()).unwrap();
        let z = crate::forms::zeta_value(2, 192).mul_rational(&Rational::frac(45, 2));
        assert!(q.estimate.overlaps(&z));
    }

    #[test]
    fn too_few_levels_is_an_error() {
        let r = oracle_i_quadrature(3, 2, 192, QuadratureConfig { max_level: 3 });
        assert!(matches!(r, Err(crate::Error::NonConvergence { .. })));
    }
}
