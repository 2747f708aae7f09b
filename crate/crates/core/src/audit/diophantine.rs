//! The case lists `d_n a - 2 d_n b = -k b`, `0 <= k <= d_n`, `d_n | k b`, and
//! the induction step between consecutive `n`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{is_prime_power, LcmTable};

use super::eval::exact_report;
use super::registry::reg;
use super::report::{ClaimReport, Params, Witness};

/// Largest `d_n` for which [`diophantine_enumerate`] materialises every `k`.
pub const ENUMERATION_LIMIT: u64 = 1 << 22;

/// Largest `d_n` scanned by brute force inside audits.
pub const SCAN_LIMIT: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiophantineCase {
    pub n: u64,
    pub k: BigUint,
    /// `d_n | k b`
    pub divisibility_holds: bool,
    /// `d_n a - 2 d_n b = -k b`
    pub equality_holds: bool,
}

impl DiophantineCase {
    pub fn satisfied(&self) -> bool {
        self.divisibility_holds && self.equality_holds
    }
}

pub(crate) fn check_coprime(a: u64, b: u64) -> Result<()> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument(format!("{a}/{b}: numerator and denominator must be positive")));
    }
    if a.gcd(&b) != 1 {
        return Err(Error::InvalidArgument(format!("{a}/{b} is not in lowest terms")));
    }
    Ok(())
}

/// Visits every `k` in `[0, d_n]` in increasing order. Machine integers only;
/// fails when `d_n > limit`.
pub fn scan_cases(n: u64, a: u64, b: u64, table: &LcmTable, limit: u64, mut visit: impl FnMut(u64, bool, bool)) -> Result<()> {
    check_coprime(a, b)?;
    let d_big = table.get(n)?;
    let d = match d_big.to_u64() {
        Some(d) if d <= limit => d,
        _ => return Err(Error::EnumerationTooLarge { n, d_n: d_big.to_string(), limit }),
    };
    let (d, a, b) = (d as i128, a as i128, b as i128);
    let lhs = d * a - 2 * d * b;
    for k in 0..=d {
        let kb = k * b;
        visit(k as u64, kb % d == 0, lhs == -kb);
    }
    Ok(())
}

/// Every `k` in `[0, d_n]` with both flags; exact integer arithmetic throughout.
pub fn diophantine_enumerate(n: u64, a: u64, b: u64, table: &LcmTable) -> Result<Vec<DiophantineCase>> {
    let mut out = Vec::new();
    scan_cases(n, a, b, table, ENUMERATION_LIMIT, |k, div, eq| {
        out.push(DiophantineCase { n, k: BigUint::from(k), divisibility_holds: div, equality_holds: eq })
    })?;
    Ok(out)
}

/// The `k` that satisfy both conditions, found by brute force.
pub fn brute_force_solutions(n: u64, a: u64, b: u64, table: &LcmTable, limit: u64) -> Result<Vec<BigUint>> {
    let mut out = Vec::new();
    scan_cases(n, a, b, table, limit, |k, div, eq| {
        if div && eq {
            out.push(BigUint::from(k));
        }
    })?;
    Ok(out)
}

/// The cases with at least one flag set, solved directly for any `d_n`:
/// divisibility holds exactly on multiples of `d_n / gcd(d_n, b)`, and equality
/// only at `k = d_n (2b - a) / b`.
pub fn diophantine_solve(n: u64, a: u64, b: u64, table: &LcmTable) -> Result<Vec<DiophantineCase>> {
    check_coprime(a, b)?;
    let d = table.get(n)?;
    let g = d.gcd(&BigUint::from(b));
    let step = d / &g;
    let num = BigInt::from(d.clone()) * (2 * b as i128 - a as i128);
    let eq_k = if num >= BigInt::zero() && (&num % b).is_zero() {
        let k = (num / b).to_biguint().expect("non-negative");
        (&k <= d).then_some(k)
    } else {
        None
    };
    let mut out = Vec::new();
    let mut j = BigUint::zero();
    while j <= g {
        let k = &j * &step;
        let eq = eq_k.as_ref() == Some(&k);
        out.push(DiophantineCase { n, k, divisibility_holds: true, equality_holds: eq });
        j += 1u32;
    }
    if let Some(k) = eq_k {
        if !out.iter().any(|c| c.k == k) {
            out.push(DiophantineCase { n, k, divisibility_holds: false, equality_holds: true });
            out.sort_by(|x, y| x.k.cmp(&y.k));
        }
    }
    Ok(out)
}

/// The satisfiable set `S_n`: brute force when `d_n` is small enough, the
/// direct solution otherwise. The flag reports which.
pub(crate) fn solution_set(n: u64, a: u64, b: u64, table: &LcmTable) -> Result<(Vec<BigUint>, bool)> {
    let solved: Vec<BigUint> = diophantine_solve(n, a, b, table)?.into_iter().filter(|c| c.satisfied()).map(|c| c.k).collect();
    match brute_force_solutions(n, a, b, table, SCAN_LIMIT) {
        Ok(brute) => {
            if brute != solved {
                return Err(Error::Inconsistent(format!("solver and scan disagree at n={n} for {a}/{b}")));
            }
            Ok((brute, true))
        }
        Err(Error::EnumerationTooLarge { .. }) => Ok((solved, false)),
        Err(e) => Err(e),
    }
}

pub(crate) fn to_set(v: &[BigUint]) -> Witness {
    Witness::Set(v.iter().map(|k| BigInt::from(k.clone())).collect())
}

/// Checks the step from `n` to `n + 1`: which case applies, the exact update of
/// `d`, and that every satisfiable `l` at `n + 1` lands in the satisfiable set at
/// `n` (as `l` itself in Case 1, as `l / p` in Case 2).
pub fn induction_step_audit(n: u64, a: u64, b: u64, table: &LcmTable) -> Result<ClaimReport> {
    let (d_n, d_next) = (table.get(n)?, table.get(n + 1)?);
    let (upper, brute_upper) = solution_set(n + 1, a, b, table)?;
    let (lower, brute_lower) = solution_set(n, a, b, table)?;
    let params = Params::n(n).with_rational(a, b);
    let method = if brute_upper && brute_lower { "sets by brute force" } else { "sets by direct solution" };
    let report = match is_prime_power(n + 1) {
        None => {
            let update = d_next == d_n;
            let maps = upper.iter().all(|l| lower.contains(l));
            let note = format!("case 1: d_{} = d_{} is {update}; {method}", n + 1, n);
            exact_report(reg("case1"), params, update && maps, to_set(&upper), to_set(&lower), note)
        }
        Some(pp) => {
            let p = BigUint::from(pp.p);
            let update = *d_next == d_n * &p;
            let unmapped: Vec<String> = upper
                .iter()
                .filter(|l| {
                    let (q, r) = l.div_rem(&p);
                    !r.is_zero() || !lower.contains(&q)
                })
                .map(|l| l.to_string())
                .collect();
            let mut note = format!("case 2 with p = {}: d_{} = p d_{} is {update}; {method}", pp.p, n + 1, n);
            if !unmapped.is_empty() {
                note.push_str(&format!("; l with no image l/p in the level-{n} set: {}", unmapped.join(", ")));
            }
            exact_report(reg("case2"), params, update && unmapped.is_empty(), to_set(&upper), to_set(&lower), note)
        }
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::lcm_table;

    #[test]
    fn base_case_two() {
        let t = lcm_table(4).unwrap();
        let cases = diophantine_enumerate(1, 2, 1, &t).unwrap();
        assert_eq!(cases.len(), 2);
        assert!(cases[0].satisfied());
        assert_eq!(cases[0].k, BigUint::zero());
        assert!(!cases[1].equality_holds);
    }

    #[test]
    fn twenty_one_twentieths_has_no_case() {
        let t = lcm_table(4).unwrap();
        let cases = diophantine_enumerate(3, 21, 20, &t).unwrap();
        assert_eq!(cases.len(), 7);
        assert!(cases.iter().all(|c| !c.equality_holds));
    }

    #[test]
    fn constructed_unit_solution() {
        // b = d_n, a = 2b - 1
        let t = lcm_table(8).unwrap();
        let b = t.d(6).to_u64().unwrap();
        let sol: Vec<_> = diophantine_enumerate(6, 2 * b - 1, b, &t).unwrap().into_iter().filter(|c| c.satisfied()).collect();
        assert_eq!(sol.len(), 1);
        assert_eq!(sol[0].k, BigUint::from(1u32));
    }

    #[test]
    fn solver_agrees_with_enumeration() {
        let t = lcm_table(12).unwrap();
        for (a, b) in [(21, 20), (83, 80), (2, 1), (1, 1), (9, 8), (41, 40)] {
            for n in 1..=12 {
                let all = diophantine_enumerate(n, a, b, &t).unwrap();
                let flagged: Vec<_> = all.into_iter().filter(|c| c.divisibility_holds || c.equality_holds).collect();
                assert_eq!(flagged, diophantine_solve(n, a, b, &t).unwrap(), "n={n} {a}/{b}");
            }
        }
    }

    #[test]
    fn steps() {
        let t = lcm_table(12).unwrap();
        let r = induction_step_audit(3, 83, 80, &t).unwrap();
        assert_eq!(r.claim.key, "case2");
        assert!(r.holds());
        let r = induction_step_audit(5, 83, 80, &t).unwrap();
        assert_eq!(r.claim.key, "case1");
        assert!(r.holds());
        let r = induction_step_audit(8, 83, 80, &t).unwrap();
        assert_eq!(r.claim.key, "case2");
    }

    #[test]
    fn rejects_non_reduced() {
        let t = lcm_table(4).unwrap();
        assert!(diophantine_enumerate(2, 4, 2, &t).is_err());
    }
}
