//! Every audited claim, in canonical order.

use super::report::{Basis, ClaimId, Family};

use Basis::{Arithmetic as A, Hypothesis as H, TrueValue as T};
use Family::{Fifth as F, General as G, Shared as S};

const fn c(key: &'static str, family: Family, basis: Basis, anchor: &'static str) -> ClaimId {
    ClaimId { key, anchor, family, basis }
}

pub static REGISTRY: &[ClaimId] = &[
    // shared
    c("eq3", S, T, r"\Gamma(s+2)\eta(s+2)"),
    c("eq6", S, A, r"1.03883\ n"),
    c("eq7", S, A, r"d_n<e^{\left(\frac{3 n\log 2}{2}\right)}"),
    c("eq8", S, A, r"d_n<(2\sqrt{2})^n"),
    // zeta(5)
    c("eq2", F, T, r"0<I_n\leq \frac{1}{24} \left(\frac{1}{4^n}\right)"),
    c("eq4", F, T, r"\frac{45 \ \zeta(5)}{2}"),
    c("eq5", F, T, r"0<I_n\leq \frac{15}{16} \left(\frac{1}{4^n}\right) \zeta(5)"),
    c("eq9", F, T, r"1+\int_{1}^{\infty}\frac{1}{x^5}\ dx"),
    c("eq10", F, T, r"1<\zeta(5)\leq \frac{5}{4}"),
    c("eq11", F, T, r"0<d_n I_n<\frac{75}{64}"),
    c("eq12", F, T, r"0<d_n I_n<1"),
    c("eq19", F, T, r"< 24\ \zeta(5)"),
    c("eq21", F, T, r"\Gamma(5) \sum_{k=0}^{\infty} \frac{(-1)^k}{(n+k+r+1)^5}"),
    c("eq22", F, T, r"I_n=\sum_{r=0}^{n} (-1)^r \binom{n}{r}\sum_{k=0}^{\infty}"),
    c("eq26", F, T, r"\frac{15\ \zeta(5)}{16}"),
    c("eq28", F, T, r"15 (-1)^n 2^{n-4}  \zeta(5)"),
    c("eq29", F, A, r"I_{2n}= 15 \ 2^{2n-4} \zeta(5)"),
    c("eq31", F, A, r"P_n="),
    c("eq32", F, H, r"d_n \zeta(5)- d_n P_n"),
    c("eq33", F, H, r"\{d_n \zeta(5)\}+[d_n \zeta(5)]"),
    c("eq34", F, H, r"d_n \zeta(5)- d_n [P_n]"),
    c("eq35", F, T, r"[P_n]= \left[\zeta(5)-\frac{I_{2n}}{15 \ 2^{2n-4}} \right]"),
    c("eq36", F, T, r"[P_n]= 1+\left[\{\zeta(5)\}"),
    c("eq37", F, T, r"0<\frac{I_{2n}}{15 \ 2^{2n-4}}\leq \frac{\zeta(5)}{64}"),
    c("eq38", F, T, r"\frac{63 \{\zeta(5)\}-1}{64}>0"),
    c("eq39", F, T, r"<\{\zeta(5)\}<1"),
    c("eq40", F, A, r"[P_n]= 1"),
    c("eq41", F, H, r"= d_n \zeta(5)- d_n \in \mathbb{Z}"),
    c("eq42", F, H, r"+d_n\{P_n\}\in\mathbb{Z}"),
    c("eq43", F, T, r"+d_n\{P_n\} <d_n+1"),
    c("eq44", F, H, r"d_n,\ d_n-1, \ d_n-2,..., \ 3, \ 2, \ 1"),
    c("eq45", F, H, r"d_n \zeta(5)- d_n= d_n-k_i"),
    c("eq46", F, H, r"d_n a- 2 d_n b =-k_i b"),
    c("eq47", F, H, r"d_n|k_i b"),
    c("eq48", F, H, r"0\leq k_i\leq d_n"),
    c("eq49", F, H, r"d_n a- 2 d_n b =-k_i b,\ \ 0\leq k_i\leq d_n"),
    c("eq50", F, H, r"d_{n+1} a- 2 d_{n+1} b =-l_i b"),
    c("eq51", F, H, r"d_n a- 2 d_n b =-l_i b"),
    c("eq52", F, H, r"pd_{n} a- 2 pd_{n} b =-l_i b"),
    c("eq53", F, H, r"\frac{-l_i b}{p}"),
    c("eq54", F, H, r"\frac{l_i b}{p}= d_n, 2d_n,...,d_n b"),
    c("eq55", F, H, r"-d_n, -2d_n,...,-d_n b"),
    c("eq56", F, H, r"= -d_n,-2d_n,...,-d_n b"),
    c("eq57", F, H, r"d_{n+1} a- 2 d_{n+1} b =-l_i b,\ \ 0\leq l_i\leq d_{n+1}"),
    c("case1", S, H, r"d_{n+1}=d_{n}"),
    c("case2", S, H, r"d_{n+1}=p d_n"),
    // zeta(2m+1)
    c("eq59", G, T, r"0<I_{n,m}\leq \frac{1}{\Gamma(2m+1)} \left(\frac{1}{4^n}\right)"),
    c("eq60", G, T, r"\left(\frac{2^{2m}-1}{2^{2m}}\right)\Gamma(2m+1)\zeta(2m+1)"),
    c("eq61", G, T, r"0<I_{n,m}\leq \left(\frac{1}{4^n}\right) \left(\frac{2^{2m}-1}{2^{2m}}\right)\zeta(2m+1)"),
    c("eq62", G, T, r"0<d_n I_{n,m}< \left(\frac{1}{2^{n/2}}\right) \zeta(2m+1)"),
    c("zeta_bound", G, T, r"1<\zeta(2m+1)\leq 1+\frac{1}{2m}"),
    c("eq63", G, T, r"\left(\frac{1}{2^{n/2}}\right) \left(1+\frac{1}{2m}\right)"),
    c("eq63_unit", G, T, r"0<d_n I_{n,m}<1"),
    c("eq70", G, T, r"<\Gamma(2m+1)\ \zeta(2m+1)"),
    c("eq72", G, T, r"\Gamma(2m+1) \sum_{k=0}^{\infty} \frac{(-1)^k}{(n+k+s+1)^{2m+1}}"),
    c("eq73", G, T, r"I_{n,m}=\sum_{s=0}^{n} (-1)^s \binom{n}{s}\sum_{k=0}^{\infty}"),
    c("eq79", G, T, r"\left(1-\frac{1}{2^{2m}}\right)\zeta(2m+1)"),
    c("eq81", G, T, r"(-1)^n (2^{2m}-1) 2^{n-2m} \zeta(2m+1)"),
    c("eq82", G, A, r"I_{2n,m}= (2^{2m}-1) 2^{2n-2m} \zeta(2m+1)"),
    c("eq84", G, A, r"P^*_{n,m}="),
    c("eq85", G, H, r"d_n \zeta(2m+1)- d_n P^*_{n,m}"),
    c("eq86", G, H, r"\{d_n \zeta(2m+1)\}+[d_n \zeta(2m+1)]"),
    c("eq87", G, H, r"d_n \zeta(2m+1)- d_n [P^*_{n,m}]"),
    c("eq88", G, T, r"[P^*_{n,m}]= \left[ \zeta(2m+1)-"),
    c("eq89", G, T, r"[P^*_{n,m}]= 1+"),
    c("eq90", G, T, r"\lim_{n\to\infty}"),
    c("eq91", G, T, r"<\{\zeta(2m+1)\}"),
    c("threshold_N", G, T, r"N\in\mathbb{N}"),
    c("eq92", G, T, r"<\{\zeta(2m+1)\}<1"),
    c("eq93", G, A, r"[P^*_{n,m}]= 1"),
    c("eq94", G, H, r"= d_n \zeta(2m+1)- d_n \in \mathbb{Z}"),
    c("eq95", G, H, r"+d_n\{P^*_{n,m}\}\in\mathbb{Z}"),
    c("eq96", G, T, r"+d_n\{P^*_{n,m}\} <d_n+1"),
    c("eq97", G, H, r"d_n \zeta(2m+1)- d_n= d_n,\ d_n-1"),
    c("eq98", G, H, r"1\leq k^*_i\leq d_n-1"),
    c("eq99", G, H, r"d_n|k^*_i b"),
    c("eq100", G, H, r"0\leq k^*_i\leq d_n"),
    c("eq101", G, H, r"d_n a- 2 d_n b =-k^*_i b,\ \ 0\leq k^*_i\leq d_n"),
    c("eq102", G, H, r"d_{n+1} a- 2 d_{n+1} b =-l^*_i b"),
    c("eq103", G, H, r"d_n a- 2 d_n b =-l^*_i b"),
    c("eq104", G, H, r"pd_{n} a- 2 pd_{n} b =-l^*_i b"),
    c("eq105", G, H, r"\frac{-l^*_i b}{p}"),
    c("eq106", G, H, r"\frac{l^*_i b}{p}= d_n, 2d_n,...,d_n b"),
    c("eq107", G, H, r"-d_n, -2d_n,...,-d_n b"),
    c("eq108", G, H, r"= -d_n,-2d_n,...,-d_n b"),
    c("eq109", G, H, r"d_{n+1} a- 2 d_{n+1} b =-l^*_i b,\ \ 0\leq l^*_i\leq d_{n+1}"),
];

/// The registered claim with this key.
pub fn claim(key: &str) -> Option<ClaimId> {
    REGISTRY.iter().find(|c| c.key == key).copied()
}

pub(crate) fn reg(key: &str) -> ClaimId {
    claim(key).unwrap_or_else(|| panic!("unregistered claim {key}"))
}

/// Canonical position of a claim.
pub fn claim_index(key: &str) -> Option<usize> {
    REGISTRY.iter().position(|c| c.key == key)
}

/// Claims audited for a given `m`: the zeta(5) family only at `m = 2`.
pub fn in_scope(m: u32) -> impl Iterator<Item = ClaimId> {
    REGISTRY.iter().copied().filter(move |c| c.family != Family::Fifth || m == 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn keys_are_unique() {
        let keys: HashSet<_> = REGISTRY.iter().map(|c| c.key).collect();
        assert_eq!(keys.len(), REGISTRY.len());
    }

    #[test]
    fn scope_by_m() {
        assert_eq!(in_scope(2).count(), REGISTRY.len());
        assert!(in_scope(3).all(|c| c.family != Family::Fifth));
        assert!(in_scope(3).any(|c| c.key == "eq93"));
        assert!(in_scope(3).any(|c| c.key == "case2"));
    }
}
