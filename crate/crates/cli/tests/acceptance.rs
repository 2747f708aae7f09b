//! One PASS/FAIL line per acceptance criterion. Tolerances:
//! relative agreement 1e-30 at 192 bits, runtime limits 60 s (criteria 1, 2)
//! and 30 s (criterion 4).

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zetalab::audit::{check_dn_growth, check_floor_claims, check_integral_bounds, diophantine_enumerate, in_scope, AuditConfig};
use zetalab::certified::{format_error_bound, CertifiedReal};
use zetalab::exact::{LcmTable, Rational};
use zetalab::forms::{closed_form_i, p_star, zeta_value};
use zetalab::quad::{
    log_moment_integral, oracle_i_quadrature, oracle_i_series, product_rule_2d, reduced_monomial, QuadratureConfig,
};

const BITS: u32 = 192;
const CAP_BITS: u32 = 4096;

fn rel_tol() -> Rational {
    Rational::new(1, num_traits::pow(BigInt::from(10), 30)).unwrap()
}

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `|x - y|` is within the summed radii, and that sum is within 1e-30 of `|x|`.
fn identity_within(x: &CertifiedReal, y: &CertifiedReal) -> Result<Rational, String> {
    let gap = (x.value() - y.value()).abs();
    let combined = x.abs_error() + y.abs_error();
    ensure(gap <= combined, || format!("discrepancy {} exceeds bound {}", format_error_bound(&gap), format_error_bound(&combined)))?;
    let rel = combined / x.lower().abs().min(x.upper().abs());
    ensure(rel <= rel_tol(), || format!("relative error bound {} above 1e-30", format_error_bound(&rel)))?;
    Ok(rel)
}

/// Upper bound on `|x - y| / |y|` is at most 1e-30.
fn close_to(x: &CertifiedReal, y: &Rational) -> Result<Rational, String> {
    let worst = (x.upper() - y).abs().max((x.lower() - y).abs()) / y.abs();
    ensure(worst <= rel_tol(), || format!("relative gap {} above 1e-30", format_error_bound(&worst)))?;
    Ok(worst)
}

fn lemma_grid(ms: &[u32], n_max: u64, limit: Duration) -> Check {
    let start = Instant::now();
    let mut worst = Rational::zero();
    for &m in ms {
        for n in 1..=n_max {
            let cf = closed_form_i(n, m).eval(BITS);
            let q = oracle_i_quadrature(n, m, BITS, QuadratureConfig::default()).map_err(|e| format!("n={n} m={m}: {e}"))?;
            let rel = identity_within(&cf, &q.estimate).map_err(|e| format!("n={n} m={m}: {e}"))?;
            worst = worst.max(rel);
        }
    }
    let took = start.elapsed();
    ensure(took <= limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(format!("worst relative bound {}, {took:.1?}", format_error_bound(&worst)))
}

fn criterion_1() -> Check {
    lemma_grid(&[2], 12, Duration::from_secs(60))
}

fn criterion_2() -> Check {
    lemma_grid(&[3, 4], 8, Duration::from_secs(60))
}

fn criterion_3() -> Check {
    let q = log_moment_integral(3, BITS, QuadratureConfig::default()).map_err(|e| e.to_string())?;
    let target = zeta_value(2, BITS).mul_rational(&Rational::frac(45, 2));
    let rel = identity_within(&target, &q.estimate)?;
    Ok(format!("relative bound {}", format_error_bound(&rel)))
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let n_max = 10_000u64;
    let table = LcmTable::new(n_max).map_err(|e| e.to_string())?;
    let failures: Vec<u64> = (1..=n_max)
        .filter(|&n| {
            let d = table.d(n);
            d * d >= BigUint::one() << (3 * n as usize)
        })
        .collect();
    ensure(failures.is_empty(), || format!("d_n^2 >= 8^n at n = {failures:?}"))?;
    let rows = check_dn_growth(n_max, &AuditConfig::default()).map_err(|e| e.to_string())?;
    let eq8: Vec<_> = rows.iter().filter(|r| r.claim.key == "eq8").collect();
    ensure(eq8.len() == n_max as usize && eq8.iter().all(|r| r.holds()), || "eq8 rows missing or failing".into())?;
    let took = start.elapsed();
    ensure(took <= Duration::from_secs(30), || format!("took {took:?}"))?;
    Ok(format!("0 failures for n <= {n_max}, {took:.1?}"))
}

fn criterion_5() -> Check {
    let n_max = 100;
    let table = LcmTable::new(n_max).map_err(|e| e.to_string())?;
    let mut max_bits = BITS;
    for n in 1..=n_max {
        let d = BigInt::from(table.d(n).clone());
        let mut bits = BITS;
        loop {
            let x = oracle_i_series(n, 2, bits).mul_int(&d);
            if x.lower() > Rational::zero() && x.upper() < Rational::one() {
                break;
            }
            ensure(bits < CAP_BITS && x.upper() > Rational::zero() && x.lower() < Rational::one(), || {
                format!("d_n I_n not inside (0, 1) at n={n}")
            })?;
            bits *= 2;
        }
        max_bits = max_bits.max(bits);
    }
    let cfg = AuditConfig::default();
    let rows = check_integral_bounds(n_max, 2, &cfg).map_err(|e| e.to_string())?;
    let eq12: Vec<_> = rows.iter().filter(|r| r.claim.key == "eq12").collect();
    ensure(eq12.len() == n_max as usize && eq12.iter().all(|r| r.holds()), || "eq12 rows missing or not holding".into())?;
    Ok(format!("n = 1..{n_max} strictly inside, up to {max_bits} bits"))
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `P*` straight from its definition, with its own partial sums.
fn p_star_direct(n: u64, m: u32) -> Rational {
    let s = 2 * m as usize + 1;
    let mut partial = vec![Rational::zero()];
    for k in 1..=4 * n {
        let t = Rational::new(1, num_traits::pow(BigInt::from(k), s)).unwrap();
        let prev = partial.last().unwrap().clone();
        partial.push(if k % 2 == 1 { prev + t } else { prev - t });
    }
    let sum: Rational = (0..=2 * n).map(|j| Rational::from_integer(binomial(2 * n, j)) * &partial[(2 * n + j) as usize]).sum();
    let scale = Rational::from_integer((BigInt::one() << (2 * m)) - 1) * Rational::pow2(2 * n as i64 - 2 * m as i64);
    sum / scale
}

fn criterion_6() -> Check {
    let cfg = AuditConfig::default();
    for (m, n_max) in [(2u32, 50u64), (3, 20), (4, 20)] {
        for n in 1..=n_max {
            let p = p_star(n, m);
            ensure(p == p_star_direct(n, m), || format!("P* mismatch at n={n} m={m}"))?;
            ensure(p.floor() == BigInt::one(), || format!("floor P* = {} at n={n} m={m}", p.floor()))?;
        }
        let rows = check_floor_claims(n_max, m, &cfg).map_err(|e| e.to_string())?;
        let key = if m == 2 { "eq40" } else { "eq93" };
        let hits: Vec<_> = rows.iter().filter(|r| r.claim.key == key).collect();
        ensure(hits.len() == n_max as usize && hits.iter().all(|r| r.holds()), || format!("{key} rows at m={m} not all holding"))?;
    }
    Ok("floors equal 1 (m=2: n <= 50; m=3,4: n <= 20)".into())
}

/// `[S_N + 1/((s-1)(N+1)^(s-1)), S_N + 1/((s-1) N^(s-1))]` encloses `zeta(s)`.
fn zeta_bracket(s: u32, big_n: u64) -> (Rational, Rational) {
    let sum: Rational = (1..=big_n).map(|k| Rational::new(1, num_traits::pow(BigInt::from(k), s as usize)).unwrap()).sum();
    let tail = |k: u64| Rational::new(1, BigInt::from(s - 1) * num_traits::pow(BigInt::from(k), (s - 1) as usize)).unwrap();
    (&sum + tail(big_n + 1), sum + tail(big_n))
}

fn criterion_7() -> Check {
    for m in 2..=6u32 {
        let z = zeta_value(m, BITS);
        let upper = Rational::one() + Rational::frac(1, 2 * m as i64);
        ensure(z.lower() > Rational::one() && z.upper() <= upper, || format!("zeta({}) outside (1, {upper}]", 2 * m + 1))?;
        let (lo, hi) = zeta_bracket(2 * m + 1, 50);
        ensure(z.lower() <= hi && z.upper() >= lo, || format!("zeta({}) misses the elementary bracket", 2 * m + 1))?;
        ensure(lo > Rational::one() && hi <= upper, || format!("elementary bracket for zeta({}) not inside", 2 * m + 1))?;
    }
    let frac = zeta_value(2, BITS).add_rational(&-Rational::one());
    let threshold = Rational::frac(1, 63);
    ensure(frac.lower() > threshold, || "fractional part of zeta(5) not above 1/63".into())?;
    let (lo, _) = zeta_bracket(5, 50);
    ensure(lo - Rational::one() > threshold, || "bracket does not separate {zeta(5)} from 1/63".into())?;
    Ok(format!("m = 2..6 inside; {{zeta(5)}} >= {}", frac.lower().to_scientific(12, zetalab::exact::Rounding::Floor)))
}

fn criterion_8() -> Check {
    let mut points = 0;
    for m in 2..=5u32 {
        for n in 1..=5u64 {
            let q = oracle_i_quadrature(n, m, BITS, QuadratureConfig::default()).map_err(|e| format!("n={n} m={m}: {e}"))?;
            let s = oracle_i_series(n, m, BITS);
            let gap = (q.estimate.value() - s.value()).abs();
            ensure(gap <= q.estimate.abs_error() + s.abs_error(), || format!("oracles disagree at n={n} m={m}"))?;
            points += 1;
        }
    }
    for j in 0..=8u32 {
        let exact = Rational::new(1, (j + 1) * (j + 1)).unwrap();
        let two_d = product_rule_2d(j.max(1) as usize, |t| t.pow(j));
        ensure(two_d == exact, || format!("product rule gives {two_d} for j={j}"))?;
        let one_d = reduced_monomial(j, BITS, QuadratureConfig::default()).map_err(|e| format!("j={j}: {e}"))?;
        close_to(&one_d.estimate, &two_d).map_err(|e| format!("j={j}: {e}"))?;
    }
    Ok(format!("{points}-point grid agrees; reduction exact for j = 0..8"))
}

/// `d_n` by repeated gcd, then every `k` checked in `u128`.
fn scan(n: u64, a: u64, b: u64) -> Vec<(u64, bool, bool)> {
    let gcd = |mut x: u128, mut y: u128| {
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x
    };
    let d = (1..=n as u128).fold(1u128, |acc, k| acc / gcd(acc, k) * k);
    let (a, b) = (a as u128, b as u128);
    (0..=d).map(|k| (k as u64, (k * b) % d == 0, d * a + k * b == 2 * d * b)).collect()
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let table = LcmTable::new(15).map_err(|e| e.to_string())?;
    let mut satisfied = 0;
    for case in 0..200 {
        let n = rng.gen_range(1..=15u64);
        let b = rng.gen_range(4..=50u64);
        let a = loop {
            let a = rng.gen_range(b + 1..=5 * b / 4);
            if num_integer::gcd(a, b) == 1 {
                break a;
            }
        };
        let got: Vec<(u64, bool, bool)> = diophantine_enumerate(n, a, b, &table)
            .map_err(|e| format!("case {case}: {e}"))?
            .into_iter()
            .map(|c| (u64::try_from(&c.k).unwrap(), c.divisibility_holds, c.equality_holds))
            .collect();
        ensure(got == scan(n, a, b), || format!("case {case}: n={n} {a}/{b} differs from scan"))?;
        satisfied += got.iter().filter(|(_, x, y)| *x && *y).count();
    }
    Ok(format!("200 cases match, {satisfied} satisfied k in total"))
}

fn prime_power_base(q: u64) -> Option<u64> {
    let p = (2..=q).find(|p| q % p == 0)?;
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    (r == 1).then_some(p)
}

fn criterion_10() -> Check {
    let n_max = 10_000u64;
    let table = LcmTable::new(n_max).map_err(|e| e.to_string())?;
    let mut acc = BigUint::one();
    let (mut case1, mut case2) = (0, 0);
    for n in 1..=n_max {
        acc = num_integer::Integer::lcm(&acc, &BigUint::from(n));
        ensure(&acc == table.d(n), || format!("d_{n} differs from fold"))?;
        if n > 1 {
            let prev = table.d(n - 1);
            match prime_power_base(n) {
                Some(p) => {
                    ensure(*table.d(n) == prev * p, || format!("case 2 fails at n={n}"))?;
                    case2 += 1;
                }
                None => {
                    ensure(table.d(n) == prev, || format!("case 1 fails at n={n}"))?;
                    case1 += 1;
                }
            }
        }
    }
    Ok(format!("fold matches for n <= {n_max}; {case1} case-1 and {case2} case-2 steps"))
}

fn run_audit() -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_zetalab"))
        .args(["audit", "--rational", "83/80", "--m", "2", "--n-max", "20", "--format", "json"])
        .env_remove("ZETALAB_PREC_BITS")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("exit status {:?}", out.status.code()))?;
    Ok(out.stdout)
}

fn criterion_11() -> Check {
    let first = run_audit()?;
    let second = run_audit()?;
    ensure(first == second, || "outputs differ".into())?;
    ensure(first.ends_with(b"\n"), || "output not newline-terminated".into())?;
    let doc: serde_json::Value = serde_json::from_slice(&first).map_err(|e| e.to_string())?;
    let rows = doc["rows"].as_array().ok_or("no rows")?;
    let decided: BTreeSet<&str> = rows
        .iter()
        .filter(|r| matches!(r["verdict"].as_str(), Some("holds" | "fails" | "undecided")))
        .filter_map(|r| r["key"].as_str())
        .collect();
    let missing: Vec<&str> = in_scope(2).map(|c| c.key).filter(|k| !decided.contains(k)).collect();
    ensure(missing.is_empty(), || format!("keys without a verdict: {missing:?}"))?;
    Ok(format!("{} bytes identical across runs; {} rows cover all {} in-scope keys", first.len(), rows.len(), decided.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("closed form vs quadrature, m = 2, n = 1..12", criterion_1),
        ("closed form vs quadrature, m = 3, 4, n = 1..8", criterion_2),
        ("log-moment integral s = 3 vs 45/2 zeta(5)", criterion_3),
        ("d_n^2 < 8^n for n <= 10000", criterion_4),
        ("0 < d_n I_n < 1 for n = 1..100", criterion_5),
        ("floor of P* equals 1", criterion_6),
        ("zeta(2m+1) bounds and {zeta(5)} > 1/63", criterion_7),
        ("oracle independence and reduction identity", criterion_8),
        ("Diophantine enumeration vs brute force", criterion_9),
        ("lcm fold and case dichotomy", criterion_10),
        ("deterministic audit trace covering every key", criterion_11),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
