//! Claims about the true values: growth of `d_n`, bounds on `I_{n,m}`, the
//! log-moment and series identities, and the floor claims for `P*_{n,m}`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::certified::{ln2, ln_int, CertifiedReal};
use crate::error::Result;
use crate::exact::{binomial_row, factorial, is_prime_power, LcmTable, Rational};
use crate::forms::{closed_form_i, eta_value, eta_zeta_factor, p_star, scale_factor, zeta_at_exponent, zeta_value};
use crate::quad::{
    absolute_majorant, log_moment_integral, oracle_i_quadrature, oracle_i_series, single_moment_quadrature, single_moment_series,
};

use super::eval::{
    agree, all, below_sqrt2_scaled, certified_report, exact_report, fractional, gt, le, le_c, lt, lt_c, push_note, Outcome,
};
use super::registry::reg;
use super::report::{ClaimReport, Params, Provenance, Witness};
use super::AuditConfig;

pub(crate) fn sort_canonical(reports: &mut [ClaimReport]) {
    reports.sort_by_key(|r| super::registry::claim_index(r.claim.key).unwrap_or(usize::MAX));
}

fn per_n<F>(n_max: u64, f: F) -> Result<Vec<ClaimReport>>
where
    F: Fn(u64) -> Result<Vec<ClaimReport>> + Sync + Send,
{
    let rows: Vec<Vec<ClaimReport>> = (1..=n_max).into_par_iter().map(f).collect::<Result<_>>()?;
    let mut rows: Vec<ClaimReport> = rows.into_iter().flatten().collect();
    for r in rows.iter_mut() {
        r.window = Some((1, n_max));
    }
    sort_canonical(&mut rows);
    Ok(rows)
}

/// `psi(n) = log d_n` for `n = 0..=n_max` at one precision.
fn psi_table(n_max: u64, precision_bits: u32) -> Vec<CertifiedReal> {
    let mut logs: HashMap<u64, CertifiedReal> = HashMap::new();
    let mut acc = CertifiedReal::zero(precision_bits);
    let mut out = vec![acc.clone(), acc.clone()];
    for n in 2..=n_max {
        if let Some(pp) = is_prime_power(n) {
            let lp = logs.entry(pp.p).or_insert_with(|| ln_int(pp.p, precision_bits));
            acc = &acc + lp;
        }
        out.push(acc.clone());
    }
    out
}

/// `log d_n < 1.03883 n < (3 log 2 / 2) n` and `d_n^2 < 8^n` for `n <= n_max`.
pub fn check_dn_growth(n_max: u64, config: &AuditConfig) -> Result<Vec<ClaimReport>> {
    let table = LcmTable::new(n_max)?;
    let base = psi_table(n_max, config.precision_bits);
    let c = Rational::new(103883, 100000)?;
    let rows = per_n(n_max, |n| {
        let params = Params::n(n);
        let eq6 = certified_report(reg("eq6"), params.clone(), config, |bits| {
            let psi = if bits == config.precision_bits { base[n as usize].clone() } else { psi_table(n, bits)[n as usize].clone() };
            let bound = &c * Rational::from(n as i64);
            let three_halves_ln2 = ln2(bits).mul_rational(&Rational::frac(3, 2));
            let decision = all(&[lt(&psi, &bound), gt(&three_halves_ln2, &c)]);
            Ok(Outcome::new(decision, psi, bound).note("log d_n as the sum of log p over prime powers p^k <= n; constant 1.03883 is externally sourced, checked on the window only"))
        });
        let d = BigInt::from(table.d(n).clone());
        let sq = &d * &d;
        let eight = num_traits::pow(BigInt::from(8), n as usize);
        let holds = sq < eight;
        let eq7 = exact_report(reg("eq7"), params.clone(), holds, sq.clone(), eight.clone(), "exp(3n log 2 / 2) = 2^(3n/2); compared as d_n^2 < 8^n");
        let eq8 = exact_report(reg("eq8"), params, holds, sq, eight, "compared as d_n^2 < 8^n");
        Ok(vec![eq6, eq7, eq8])
    })?;
    Ok(rows)
}

/// `zeta(2m+1)` against its elementary bounds; no `n`.
fn zeta_bound_rows(m: u32, config: &AuditConfig) -> Vec<ClaimReport> {
    let params = Params::default().with_m(m);
    let upper = Rational::one() + Rational::frac(1, 2 * m as i64);
    let check = |key: &'static str| {
        let upper = upper.clone();
        certified_report(reg(key), params.clone(), config, move |bits| {
            let z = zeta_value(m, bits);
            let decision = all(&[gt(&z, &Rational::one()), le(&z, &upper)]);
            Ok(Outcome::new(decision, z, upper.clone()).note("1 < zeta <= rhs"))
        })
    };
    let mut out = Vec::new();
    if m == 2 {
        out.push(check("eq9"));
        out.push(check("eq10"));
    }
    out.push(check("zeta_bound"));
    out
}

type Memo = RwLock<HashMap<(u32, u32, u32), CertifiedReal>>;

fn memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `int int (-log xy)^s / (1 + xy)` by quadrature, memoised per precision.
fn log_moment(s: u32, bits: u32, config: &AuditConfig) -> Result<CertifiedReal> {
    let key = (s, bits, config.quadrature.max_level);
    if let Some(v) = memo().read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = log_moment_integral(s, bits, config.quadrature)?.estimate;
    memo().write().unwrap().insert(key, v.clone());
    Ok(v)
}

/// Upper and lower bounds on `I_{n,m}` and `d_n I_{n,m}`.
pub fn check_integral_bounds(n_max: u64, m: u32, config: &AuditConfig) -> Result<Vec<ClaimReport>> {
    let table = LcmTable::new(n_max)?;
    let gamma = Rational::from(factorial(2 * m as u64));
    let factor = eta_zeta_factor(m);
    let one = Rational::one();
    let m_bound = Rational::one() + Rational::frac(1, 2 * m as i64);
    let mut rows = per_n(n_max, |n| {
        let params = Params::n(n).with_m(m);
        let d = BigInt::from(table.d(n).clone());
        let quarter_n = Rational::pow2(-2 * n as i64);
        let i_at = |bits: u32| closed_form_i(n, m).eval(bits);
        let di_at = |bits: u32| i_at(bits).mul_int(&d);
        let mut out = Vec::new();

        let prelim = |key: &'static str| {
            certified_report(reg(key), params.clone(), config, |bits| {
                let i = i_at(bits);
                let rhs = log_moment(2 * m - 1, bits, config)?.mul_rational(&(&quarter_n / &gamma));
                Ok(Outcome::new(all(&[gt(&i, &Rational::zero()), le_c(&i, &rhs)]), i, rhs))
            })
        };
        let refined = |key: &'static str| {
            certified_report(reg(key), params.clone(), config, |bits| {
                let i = i_at(bits);
                let rhs = zeta_value(m, bits).mul_rational(&(&quarter_n * &factor));
                Ok(Outcome::new(all(&[gt(&i, &Rational::zero()), le_c(&i, &rhs)]), i, rhs))
            })
        };
        let unit = |key: &'static str| {
            certified_report(reg(key), params.clone(), config, |bits| {
                let x = di_at(bits);
                Ok(Outcome::new(all(&[gt(&x, &Rational::zero()), lt(&x, &one)]), x, one.clone()))
            })
        };
        let scaled = |key: &'static str, bound: Option<Rational>| {
            certified_report(reg(key), params.clone(), config, |bits| {
                let x = di_at(bits);
                let (lo, hi, rhs): (Rational, Rational, Witness) = match &bound {
                    Some(r) => (r.clone(), r.clone(), r.pow(2).into()),
                    None => {
                        let z = zeta_value(m, bits);
                        (z.lower(), z.upper(), z.square().into())
                    }
                };
                let sq = x.square().mul_pow2(n as i64);
                let decision = all(&[gt(&x, &Rational::zero()), below_sqrt2_scaled(&x, n, &lo, &hi)]);
                Ok(Outcome { decision, lhs: sq.into(), rhs, note: "compared squared: (d_n I)^2 2^n against the squared bound".into() })
            })
        };

        if m == 2 {
            out.push(prelim("eq2"));
            out.push(refined("eq5"));
            out.push(scaled("eq11", Some(Rational::frac(75, 64))));
            out.push(unit("eq12"));
        }
        out.push(prelim("eq59"));
        out.push(refined("eq61"));
        out.push(scaled("eq62", None));
        out.push(scaled("eq63", Some(m_bound.clone())));
        let mut u = unit("eq63_unit");
        if m == 2 {
            push_note(&mut u.note, "stated for m >= 3; also checked at m = 2");
        }
        out.push(u);
        Ok(out)
    })?;
    rows.extend(zeta_bound_rows(m, config));
    sort_canonical(&mut rows);
    Ok(rows)
}

/// `sum_{k<=big_m} (-1)^(k-1) / k^(2m+1)` for `big_m = 0..=to`, by direct summation.
fn direct_partials(to: u64, m: u32) -> Vec<Rational> {
    let mut out = Vec::with_capacity(to as usize + 1);
    let mut acc = Rational::zero();
    out.push(acc.clone());
    for k in 1..=to as i64 {
        let t = Rational::new(1, num_traits::pow(BigInt::from(k), 2 * m as usize + 1)).expect("k >= 1");
        if k % 2 == 1 {
            acc += &t;
        } else {
            acc -= &t;
        }
        out.push(acc.clone());
    }
    out
}

/// The identities: log moments, the series and closed-form representations of
/// `I_{n,m}` against quadrature, and the exact even-index coefficients.
pub fn check_identities(n_max: u64, m: u32, config: &AuditConfig) -> Result<Vec<ClaimReport>> {
    let fifth = m == 2;
    let q = config.quadrature;
    let mut rows = per_n(n_max, |n| {
        let params = Params::n(n).with_m(m);
        let mut out = Vec::new();
        let majorant = |key| {
            // the first step differs by (2m)! sum_{j=2..n} j^-(2m+1) >= 0, exactly
            let gap: Rational = (2..=n as i64).map(|j| Rational::frac(1, j).pow(2 * m + 1)).sum();
            certified_report(reg(key), params.clone(), config, |bits| {
                let mn = absolute_majorant(n, m, bits);
                let m1 = absolute_majorant(1, m, bits);
                let top = zeta_value(m, bits).mul_int(&BigInt::from(factorial(2 * m as u64)));
                Ok(Outcome::new(all(&[Some(!gap.is_negative()), lt_c(&m1, &top)]), mn, top).note("r = 0"))
            })
        };
        let single = |key, r: u64| {
            let mut rep = certified_report(reg(key), params.clone().with_s(r as u32), config, |bits| {
                let quad = single_moment_quadrature(n + r, m, bits, q)?.estimate;
                let series = single_moment_series(n + r, m, bits);
                Ok(Outcome::new(agree(&quad, &series), quad, series))
            });
            push_note(&mut rep.note, &format!("r = {r}; quadrature against accelerated series"));
            rep
        };
        let series = |key| {
            certified_report(reg(key), params.clone(), config, |bits| {
                let s = oracle_i_series(n, m, bits);
                let quad = oracle_i_quadrature(n, m, bits, q)?.estimate;
                Ok(Outcome::new(agree(&s, &quad), s, quad).note("double series against quadrature"))
            })
        };
        let closed = |key| {
            certified_report(reg(key), params.clone(), config, |bits| {
                let cf = closed_form_i(n, m).eval(bits);
                let quad = oracle_i_quadrature(n, m, bits, q)?.estimate;
                Ok(Outcome::new(agree(&cf, &quad), cf, quad).note("closed form against quadrature"))
            })
        };
        let partials = direct_partials(4 * n, m);
        let c = scale_factor(2 * n, m);
        let sum: Rational = binomial_row(2 * n)
            .into_iter()
            .enumerate()
            .map(|(s, cb)| partials[2 * n as usize + s].mul_int(&BigInt::from(cb)))
            .sum();
        let even = |key| {
            let f = closed_form_i(2 * n, m);
            let holds = f.alpha == c && f.beta == -sum.clone();
            exact_report(reg(key), params.clone(), holds, f.alpha.clone(), c.clone(), "alpha of I_2n against the scale; beta against a direct sum")
        };
        let p_def = |key| {
            let p = p_star(n, m);
            let direct = &sum / &c;
            exact_report(reg(key), params.clone(), p == direct && p.is_positive(), p, direct, "against a direct sum over the binomial row")
        };
        if fifth {
            out.push(majorant("eq19"));
            out.push(single("eq21", 0));
            out.push(single("eq21", n));
            out.push(series("eq22"));
            out.push(closed("eq28"));
            out.push(even("eq29"));
            out.push(p_def("eq31"));
        }
        out.push(majorant("eq70"));
        out.push(single("eq72", 0));
        out.push(single("eq72", n));
        out.push(series("eq73"));
        out.push(closed("eq81"));
        out.push(even("eq82"));
        out.push(p_def("eq84"));
        Ok(out)
    })?;

    let mut fixed = Vec::new();
    for s in 1..=5.max(2 * m - 1) {
        let mut rep = certified_report(reg("eq3"), Params::default().with_s(s), config, |bits| {
            let lhs = log_moment(s, bits, config)?;
            let eta = zeta_at_exponent(s + 2, bits).mul_rational(&(Rational::one() - Rational::pow2(-(s as i64 + 1))));
            let rhs = eta.mul_int(&BigInt::from(factorial(s as u64 + 1)));
            Ok(Outcome::new(agree(&lhs, &rhs), lhs, rhs))
        });
        rep.note = format!("s = {s}; quadrature against (s+1)! eta(s+2)");
        fixed.push(rep);
    }
    let moment = |key| {
        certified_report(reg(key), Params::default().with_m(m), config, |bits| {
            let lhs = log_moment(2 * m - 1, bits, config)?;
            let rhs = zeta_value(m, bits).mul_rational(&(eta_zeta_factor(m) * Rational::from(factorial(2 * m as u64))));
            Ok(Outcome::new(agree(&lhs, &rhs), lhs, rhs))
        })
    };
    let eta = |key| {
        certified_report(reg(key), Params::default().with_m(m), config, |bits| {
            let lhs = eta_value(m, bits);
            let rhs = zeta_value(m, bits).mul_rational(&eta_zeta_factor(m));
            Ok(Outcome::new(agree(&lhs, &rhs), lhs, rhs).note("alternating sum against (1 - 2^-2m) zeta"))
        })
    };
    if fifth {
        fixed.push(moment("eq4"));
        fixed.push(eta("eq26"));
    }
    fixed.push(moment("eq60"));
    fixed.push(eta("eq79"));
    rows.extend(fixed);
    sort_canonical(&mut rows);
    Ok(rows)
}

/// Per-`n` pieces for the floor claims.
struct FloorData {
    /// `I_{2n,m} / c`
    ratio: CertifiedReal,
    zeta: CertifiedReal,
    frac: CertifiedReal,
}

fn floor_data(n: u64, m: u32, bits: u32) -> Option<FloorData> {
    let c = scale_factor(2 * n, m);
    let ratio = closed_form_i(2 * n, m).eval(bits).mul_rational(&c.recip().expect("c > 0"));
    let zeta = zeta_value(m, bits);
    let (_, frac) = fractional(&zeta)?;
    Some(FloorData { ratio, zeta, frac })
}

/// Floors of `P*_{n,m}` and the fractional-part claims, plus the smallest `n0`
/// from which `I_{2n,m} / c < {zeta(2m+1)}` holds throughout the window.
pub fn check_floor_claims(n_max: u64, m: u32, config: &AuditConfig) -> Result<Vec<ClaimReport>> {
    let fifth = m == 2;
    let q = config.quadrature;
    let zero = Rational::zero();
    let mut rows = per_n(n_max, |n| {
        let params = Params::n(n).with_m(m);
        let p = p_star(n, m);
        let fl = p.floor();
        let c = scale_factor(2 * n, m);
        let mut out = Vec::new();

        let via_quadrature = |key| {
            certified_report(reg(key), params.clone(), config, |bits| {
                let i2 = oracle_i_quadrature(2 * n, m, bits, q)?.estimate;
                let x = zeta_value(m, bits) - i2.mul_rational(&c.recip()?);
                let rhs = x.floor();
                let decision = rhs.as_ref().map(|r| *r == fl);
                let w = rhs.map(Witness::Integer).unwrap_or(Witness::Certified(x));
                Ok(Outcome { decision, lhs: fl.clone().into(), rhs: w, note: "rhs floor with I_2n by quadrature".into() })
            })
        };
        let one_plus = |key| {
            certified_report(reg(key), params.clone(), config, |bits| {
                let Some(f) = floor_data(n, m, bits) else { return Ok(Outcome::new(None, fl.clone(), Witness::None)) };
                let x = &f.frac - &f.ratio;
                let rhs = x.floor().map(|v| v + 1);
                let decision = rhs.as_ref().map(|r| *r == fl);
                let w = rhs.map(Witness::Integer).unwrap_or(Witness::Certified(x));
                Ok(Outcome { decision, lhs: fl.clone().into(), rhs: w, note: String::new() })
            })
        };
        let strip = |key| {
            certified_report(reg(key), params.clone(), config, |bits| {
                let Some(f) = floor_data(n, m, bits) else { return Ok(Outcome::new(None, Witness::None, Witness::None)) };
                let x = &f.frac - &f.ratio;
                let decision = all(&[gt(&f.ratio, &zero), lt_c(&f.ratio, &f.frac), lt(&f.frac, &Rational::one())]);
                Ok(Outcome::new(decision, x, f.frac).note("0 < {zeta} - I_2n/c < {zeta} < 1"))
            })
        };
        let exact_floor = |key| exact_report(reg(key), params.clone(), fl == BigInt::from(1), fl.clone(), BigInt::from(1), "");

        if fifth {
            out.push(via_quadrature("eq35"));
            out.push(one_plus("eq36"));
            out.push(certified_report(reg("eq37"), params.clone(), config, |bits| {
                let Some(f) = floor_data(n, m, bits) else { return Ok(Outcome::new(None, Witness::None, Witness::None)) };
                let rhs = f.zeta.div_int(64);
                Ok(Outcome::new(all(&[gt(&f.ratio, &zero), le_c(&f.ratio, &rhs)]), f.ratio, rhs))
            }));
            out.push(certified_report(reg("eq38"), params.clone(), config, |bits| {
                let Some(f) = floor_data(n, m, bits) else { return Ok(Outcome::new(None, Witness::None, Witness::None)) };
                let first = le_c(&f.ratio, &f.zeta.div_int(64));
                // {z} - z/64 = (63 {z} - 1)/64 exactly when [z] = 1
                let second = f.zeta.floor().map(|v| v == BigInt::from(1));
                let third = gt(&f.frac, &Rational::frac(1, 63));
                let lhs = f.frac.mul_int(&BigInt::from(63)).add_rational(&-Rational::one()).div_int(64);
                Ok(Outcome::new(all(&[first, second, third]), lhs, Rational::zero()).note("three-step chain; last step as {zeta} > 1/63"))
            }));
            out.push(strip("eq39"));
            out.push(exact_floor("eq40"));
        }
        out.push(via_quadrature("eq88"));
        out.push(one_plus("eq89"));
        let mut lim = certified_report(reg("eq90"), params.clone(), config, |bits| {
            let Some(f) = floor_data(n, m, bits) else { return Ok(Outcome::new(None, Witness::None, Witness::None)) };
            let bound = f.zeta.mul_rational(&(Rational::pow2(-4 * n as i64) * eta_zeta_factor(m) / &c));
            Ok(Outcome::new(all(&[gt(&f.ratio, &zero), le_c(&f.ratio, &bound)]), f.ratio, bound)
                .note("limit checked through the majorant 4^-2n (1 - 2^-2m) zeta / c, which decreases to 0"))
        });
        lim.provenance = Provenance::FiniteRange;
        out.push(lim);
        out.push(certified_report(reg("eq91"), params.clone(), config, |bits| {
            let Some(f) = floor_data(n, m, bits) else { return Ok(Outcome::new(None, Witness::None, Witness::None)) };
            Ok(Outcome::new(all(&[gt(&f.ratio, &zero), lt_c(&f.ratio, &f.frac)]), f.ratio, f.frac))
        }));
        out.push(strip("eq92"));
        out.push(exact_floor("eq93"));
        Ok(out)
    })?;

    let below: Vec<bool> = rows.iter().filter(|r| r.claim.key == "eq91").map(|r| r.holds()).collect();
    let n0 = threshold(&below);
    let mut t = exact_report(
        reg("threshold_N"),
        Params::default().with_m(m),
        n0.is_some(),
        n0.map(|v| Witness::Integer(BigInt::from(v))).unwrap_or(Witness::None),
        Witness::Integer(BigInt::from(n_max)),
        "smallest n0 with I_2n/c < {zeta} for every tested n in [n0, n_max]",
    );
    t.provenance = Provenance::FiniteRange;
    t.window = Some((1, n_max));
    rows.push(t);
    sort_canonical(&mut rows);
    Ok(rows)
}

/// Smallest `n0` (1-based) such that every entry from `n0` on is true.
pub(crate) fn threshold(flags: &[bool]) -> Option<u64> {
    let last_false = flags.iter().rposition(|f| !f);
    match last_false {
        None if flags.is_empty() => None,
        None => Some(1),
        Some(i) if i + 1 == flags.len() => None,
        Some(i) => Some(i as u64 + 2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::eta_partials;

    #[test]
    fn threshold_index() {
        assert_eq!(threshold(&[true, true]), Some(1));
        assert_eq!(threshold(&[false, true, true]), Some(2));
        assert_eq!(threshold(&[true, false]), None);
        assert_eq!(threshold(&[]), None);
    }

    #[test]
    fn direct_partials_match_forms() {
        let d = direct_partials(9, 2);
        assert_eq!(d, eta_partials(0, 9, 2));
    }
}
