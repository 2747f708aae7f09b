use num_bigint::BigInt;
use proptest::prelude::*;
use zetalab::exact::Rational;
use zetalab::forms::{closed_form_i, eta_partial, p_star, scale_factor, zeta_value};

proptest! {
    #[test]
    fn alpha_has_sign_pattern(n in 1u64..60, m in 2u32..7) {
        let f = closed_form_i(n, m);
        prop_assert_eq!(f.alpha.signum(), if n % 2 == 0 { 1 } else { -1 });
        prop_assert_eq!(f.alpha.abs(), scale_factor(n, m));
    }

    #[test]
    fn partial_sums_alternate_around_limit(big_m in 1u64..40, m in 2u32..5) {
        let z = zeta_value(m, 128).mul_rational(&(Rational::one() - Rational::pow2(-2 * m as i64)));
        let e = eta_partial(big_m, m);
        let above = z.cmp_rational(&e) == Some(std::cmp::Ordering::Less);
        prop_assert_eq!(above, big_m % 2 == 1);
    }

    #[test]
    fn closed_form_is_positive(n in 1u64..40, m in 2u32..5) {
        prop_assert!(closed_form_i(n, m).eval(256).is_positive());
    }
}

#[test]
fn p_star_floor_is_one() {
    for m in 2..=4 {
        for n in 1..=20 {
            assert_eq!(p_star(n, m).floor(), BigInt::from(1), "n={n} m={m}");
        }
    }
}

#[test]
fn worked_values() {
    let f = closed_form_i(1, 2);
    assert_eq!(f.alpha, Rational::frac(-15, 8));
    assert_eq!(f.beta, Rational::frac(63, 32));
}
