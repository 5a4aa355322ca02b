//! Property-based tests for the algebraic core.

use entsym::exact::{dual_bracket, factorize, parse_rat, star_action, DualNumber, Rat};
use entsym::symbols::{beta_to_j, chi, d_map, j_symbol, j_to_beta};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-200i64..=200, 1i64..=200).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    small_rat().prop_filter("nonzero", |r| !r.is_zero())
}

fn unit_avoiding_rat() -> impl Strategy<Value = Rat> {
    small_rat().prop_filter("not 0 or 1", |r| !r.is_zero() && !r.is_one())
}

fn dual() -> impl Strategy<Value = DualNumber> {
    (small_rat(), small_rat()).prop_map(|(re, eps)| DualNumber::new(re, eps))
}

proptest! {
    #[test]
    fn dual_mul_distributes(x in dual(), y in dual(), z in dual()) {
        let lhs = (x.clone() + y.clone()) * z.clone();
        let rhs = x * z.clone() + y * z;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dual_mul_associates(x in dual(), y in dual(), z in dual()) {
        prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x * (y * z));
    }

    #[test]
    fn dual_inverse_roundtrip(x in dual().prop_filter("invertible", |d| !d.re.is_zero())) {
        prop_assert_eq!(x.clone() * x.inv().unwrap(), DualNumber::one());
    }

    #[test]
    fn star_action_is_group_action(
        l in nonzero_rat(), m in nonzero_rat(), x in dual()
    ) {
        let lhs = star_action(&(&l * &m), &x).unwrap();
        let rhs = star_action(&l, &star_action(&m, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_respects_star_quotient(a in unit_avoiding_rat(), b in unit_avoiding_rat()) {
        // <b>/<a> = a * <b/a>, whenever b/a avoids {0,1}
        prop_assume!(a != b);
        let q = &b / &a;
        prop_assume!(!q.is_zero() && !q.is_one());
        let lhs = dual_bracket(&b).unwrap().div(&dual_bracket(&a).unwrap()).unwrap();
        let rhs = star_action(&a, &dual_bracket(&q).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn factorize_reconstruct_roundtrip(r in nonzero_rat()) {
        let sig = factorize(&r).unwrap();
        prop_assert_eq!(sig.reconstruct(), r);
    }

    #[test]
    fn rational_display_parse_roundtrip(r in small_rat()) {
        prop_assert_eq!(parse_rat(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn beta_j_roundtrip_in_canonical_form(
        a in nonzero_rat(), b in nonzero_rat()
    ) {
        prop_assume!((&a + &b) != Rat::zero());
        // j -> beta -> j loses nothing visible to the canonical form
        let e = j_symbol(a, b);
        let round = beta_to_j(&j_to_beta(&e));
        prop_assert_eq!(chi(&round).unwrap(), chi(&e).unwrap());
    }

    #[test]
    fn beta_chi_commutes_with_d(a in unit_avoiding_rat(), c in nonzero_rat()) {
        let e = entsym::symbols::beta_term(c, a).unwrap();
        prop_assert_eq!(chi(&beta_to_j(&e)).unwrap(), d_map(&e).unwrap());
    }
}
