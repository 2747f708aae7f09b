//! Tanh-sinh quadrature on `[0, 1]` for integrands of the form
//! `(-log z)^a z^b (1 - z)^c / (1 + z)`.
//!
//! With `t = k h`, `v = (pi/2) sinh t` and `q = exp(-2|v|)`, the node is
//! `z = 1/(1+q)` for `t >= 0` and `z = q/(1+q)` for `t < 0`. Every factor of the
//! integrand is formed from `q` directly, so neither endpoint loses precision
//! to cancellation.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;

use crate::certified::{exp, ln1p, pi, CertifiedReal};
use crate::error::{Error, Result};
use crate::exact::{factorial, Rational};

/// One side of a node: everything the integrand needs at `z`.
#[derive(Clone, Debug)]
struct Side {
    z: CertifiedReal,
    one_minus_z: CertifiedReal,
    neg_log_z: CertifiedReal,
    inv_one_plus_z: CertifiedReal,
}

#[derive(Clone, Debug)]
struct Node {
    /// `dz/dt` at `|t|`
    weight: CertifiedReal,
    /// `t > 0` (z near 1)
    upper: Side,
    /// `t < 0` (z near 0)
    lower: Side,
}

/// Nodes added at one level: all `k >= 1` at level 0, odd `k` afterwards.
#[derive(Debug)]
struct LevelNodes {
    nodes: Vec<Node>,
}

type NodeCache = RwLock<HashMap<(u32, u32), Arc<LevelNodes>>>;

fn node_cache() -> &'static NodeCache {
    static CACHE: OnceLock<NodeCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn center(bits: u32) -> (CertifiedReal, Side) {
    let one = CertifiedReal::from_rational_at(&Rational::one(), bits, bits);
    let half = one.div_int(2);
    let weight = crate::certified::pi(bits).to_bits(bits).div_int(4);
    let ln2 = crate::certified::ln2(bits).to_bits(bits);
    let side = Side {
        z: half.clone(),
        one_minus_z: half,
        neg_log_z: ln2,
        inv_one_plus_z: CertifiedReal::from_rational_at(&Rational::frac(2, 3), bits, bits),
    };
    (weight, side)
}

fn make_node(t: &Rational, bits: u32, pi_half: &CertifiedReal) -> Option<Node> {
    let one = CertifiedReal::from_rational_at(&Rational::one(), bits, bits);
    let two = one.mul_int(&BigInt::from(2));
    let et = exp(&CertifiedReal::from_rational_at(t, bits, bits));
    let et_inv = et.recip().expect("exp(t) > 0");
    let sinh = (&et - &et_inv).div_int(2);
    let cosh = (&et + &et_inv).div_int(2);
    let v = pi_half * &sinh;
    let two_v = v.mul_int(&BigInt::from(2));
    // q < 2^-bits: the node and everything beyond it are left to the tail bound
    if two_v.lower() > Rational::from(bits as i64) * Rational::frac(7, 10) + Rational::from(2) {
        return None;
    }
    let q = exp(&-&two_v);
    let one_plus_q = &one + &q;
    let inv_one_plus_q = one_plus_q.recip().expect("1 + q > 0");
    let weight = (pi_half * &cosh) * (&(q.mul_int(&BigInt::from(2))) * &inv_one_plus_q.square());
    let l1p = ln1p(&q);
    let upper = Side {
        z: inv_one_plus_q.clone(),
        one_minus_z: &q * &inv_one_plus_q,
        neg_log_z: l1p.clone(),
        inv_one_plus_z: one_plus_q.checked_div(&(&two + &q)).expect("2 + q > 0"),
    };
    let lower = Side {
        z: &q * &inv_one_plus_q,
        one_minus_z: inv_one_plus_q,
        neg_log_z: &two_v + &l1p,
        inv_one_plus_z: one_plus_q.checked_div(&(&one + &q.mul_int(&BigInt::from(2)))).expect("1 + 2q > 0"),
    };
    Some(Node { weight, upper, lower })
}

fn level_nodes(bits: u32, level: u32) -> Arc<LevelNodes> {
    if let Some(v) = node_cache().read().unwrap().get(&(bits, level)) {
        return v.clone();
    }
    let pi_half = pi(bits).to_bits(bits).div_int(2);
    let mut nodes = Vec::new();
    let step = if level == 0 { 1 } else { 2 };
    let mut k: i64 = 1;
    let denom = 1i64 << level;
    while let Some(node) = make_node(&Rational::frac(k, denom), bits, &pi_half) {
        nodes.push(node);
        k += step;
    }
    let v = Arc::new(LevelNodes { nodes });
    node_cache().write().unwrap().insert((bits, level), v.clone());
    v
}

/// `P (-log z)^a z^b (1 - z)^c / (1 + z)^d` on `(0, 1)`, with `d` in `{0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogKernel {
    pub log_power: u32,
    pub z_power: u32,
    pub one_minus_z_power: u32,
    pub denominator_one_plus_z: bool,
    pub prefactor: Rational,
}

impl LogKernel {
    fn eval(&self, s: &Side) -> CertifiedReal {
        let mut v = s.neg_log_z.powi(self.log_power);
        if self.z_power > 0 {
            v = &v * &s.z.powi(self.z_power);
        }
        if self.one_minus_z_power > 0 {
            v = &v * &s.one_minus_z.powi(self.one_minus_z_power);
        }
        if self.denominator_one_plus_z {
            v = &v * &s.inv_one_plus_z;
        }
        v
    }

    /// Bound on the integral over the parts of `(0, 1)` that lie beyond the
    /// outermost nodes, where `q < 2^-e`, including the first dropped node.
    fn tail_bound(&self, e: u32) -> Rational {
        let a = self.log_power as u64;
        let big_e = Rational::from(e as i64);
        // int_0^eps (-log z)^a dz = eps sum_j a!/j! log(1/eps)^j, with log(1/eps) <= e
        let mut poly = Rational::zero();
        for j in 0..=a {
            poly += &(Rational::from(factorial(a) / factorial(j)) * big_e.pow(j as u32));
        }
        let eps = Rational::pow2(-(e as i64));
        let near_zero = eps.pow(self.z_power) * poly;
        (near_zero + Rational::one()) * &eps * (big_e + Rational::one()) * self.prefactor.abs()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureConfig {
    pub max_level: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { max_level: 10 }
    }
}

#[derive(Clone, Debug)]
pub struct QuadratureResult {
    pub estimate: CertifiedReal,
    pub levels_used: u32,
    pub converged: bool,
    /// `|S_level - S_(level-1)|` at the last level.
    pub last_difference: Rational,
}

/// Working grid for a kernel: guard bits scale with the log power because
/// `(-log z)^a` multiplies the absolute rounding error of tiny node values.
fn quad_bits(kernel: &LogKernel, precision_bits: u32) -> u32 {
    let base = CertifiedReal::working_bits(precision_bits);
    let lg = 32 - (base + 64).leading_zeros();
    base + kernel.log_power * lg + 24
}

/// Integrates `kernel` over `(0, 1)`; the level is doubled until two successive
/// sums differ by at most `2^-precision_bits`. The error is `2 |difference|` plus
/// rounding plus the tail bound.
pub fn integrate(kernel: &LogKernel, precision_bits: u32, config: QuadratureConfig) -> Result<QuadratureResult> {
    let bits = quad_bits(kernel, precision_bits);
    let (w0, c0) = center(bits);
    let mut raw = &w0 * &kernel.eval(&c0);
    let mut previous: Option<CertifiedReal> = None;
    let target = Rational::pow2(-(precision_bits as i64));
    let mut last_difference = Rational::zero();
    for level in 0..=config.max_level {
        let nodes = level_nodes(bits, level);
        for node in &nodes.nodes {
            let g = &kernel.eval(&node.upper) + &kernel.eval(&node.lower);
            raw = &raw + &(&node.weight * &g);
        }
        let sum = raw.mul_pow2(-(level as i64)).mul_rational(&kernel.prefactor);
        if let Some(prev) = &previous {
            last_difference = (sum.value() - prev.value()).abs();
            if level >= 3 && last_difference <= target {
                let mut estimate = sum.clone();
                estimate.add_error(&(&last_difference * Rational::from(2)));
                estimate.add_error(&kernel.tail_bound(bits));
                return Ok(QuadratureResult {
                    estimate: estimate.with_precision(precision_bits),
                    levels_used: level,
                    converged: true,
                    last_difference,
                });
            }
        }
        previous = Some(sum);
    }
    Err(Error::NonConvergence {
        max_level: config.max_level,
        last_difference: crate::certified::format_error_bound(&last_difference),
    })
}
