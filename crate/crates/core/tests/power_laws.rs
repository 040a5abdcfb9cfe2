mod common;

use std::f64::consts::PI;

use artseries::power::{pow, pow_iterate_branch, pow_multiset_oracle, pow_product_branch};
use artseries::scalar::{cpow, iterate_branch, product_branch};
use artseries::{Coeff, Orientation, Series};
use common::*;
use proptest::prelude::*;
use rand::Rng;

const EPS: f64 = 1e-9;

fn any_exponent() -> impl Strategy<Value = artseries::Exponent> {
    (-12i64..=12, 1i64..=4).prop_map(|(p, d)| q(p, d))
}

fn any_nonzero() -> impl Strategy<Value = Coeff> {
    (0.2f64..3.0, -PI..PI).prop_map(|(r, t)| Coeff::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scalar_powers_add_exponents(z in any_nonzero(), s in any_exponent(), t in any_exponent(), n in -2i64..=2) {
        let lhs = cpow(z, &(&s + &t), n).unwrap();
        let rhs = cpow(z, &s, n).unwrap() * cpow(z, &t, n).unwrap();
        prop_assert!(close_c(lhs, rhs, rhs.norm(), EPS));
    }

    #[test]
    fn scalar_product_rule(a in any_nonzero(), b in any_nonzero(), t in any_exponent(), n in -2i64..=2, m in -2i64..=2) {
        let k = product_branch(a, b, n, m).unwrap();
        let lhs = cpow(a * b, &t, k).unwrap();
        let rhs = cpow(a, &t, n).unwrap() * cpow(b, &t, m).unwrap();
        prop_assert!(close_c(lhs, rhs, rhs.norm(), EPS));
    }

    #[test]
    fn scalar_iterate_rule(z in any_nonzero(), s in any_exponent(), t in any_exponent(), n in -2i64..=2) {
        let m = iterate_branch(z, &s, n).unwrap();
        let lhs = cpow(z, &(&s * &t), n).unwrap();
        let rhs = cpow(cpow(z, &s, n).unwrap(), &t, m).unwrap();
        prop_assert!(close_c(lhs, rhs, rhs.norm(), EPS));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn power_degree_is_exact(seed in any::<u64>(), t in any_exponent(), n in -2i64..=2) {
        let mut r = rng(seed);
        let g = series(&mut r, Orientation::Noetherian, 5, &z(8));
        let d = g.leading().unwrap().0.clone();
        let p = pow(&g, &t, n).unwrap();
        prop_assert_eq!(p.degree(), artseries::Degree::Finite(d * t));
    }

    #[test]
    fn product_of_powers(seed in any::<u64>(), t in any_exponent(), j in -1i64..=1, k in -1i64..=1) {
        let mut r = rng(seed);
        let f = unit_series(&mut r, Orientation::Noetherian, 4, &z(6));
        let g = series(&mut r, Orientation::Noetherian, 4, &z(6));
        let n = pow_product_branch(&f, &g, j, k).unwrap();
        let lhs = pow(&f.mul(&g).unwrap(), &t, n).unwrap();
        let fp = pow(&f, &t, j).unwrap();
        let gp = pow(&g, &t, k).unwrap();
        let rhs = fp.mul(&gp).unwrap();
        prop_assert!(close(&lhs, &rhs, l1(&fp) * l1(&gp), EPS));
    }

    #[test]
    fn iterated_powers(seed in any::<u64>(), s in any_exponent(), t in any_exponent(), n in -1i64..=1) {
        let mut r = rng(seed);
        let f = unit_series(&mut r, Orientation::Noetherian, 4, &z(6));
        let m = pow_iterate_branch(&f, &s, n).unwrap();
        let lhs = pow(&f, &(&s * &t), n).unwrap();
        let inner = pow(&f, &s, n).unwrap();
        let rhs = pow(&inner, &t, m).unwrap();
        let scale = l1(&lhs).max(l1(&rhs)) + power_sensitivity(&inner, &t, m);
        prop_assert!(close(&lhs, &rhs, scale, EPS));
    }

    #[test]
    fn power_matches_multiset_oracle(seed in any::<u64>(), t in any_exponent(), n in -1i64..=1) {
        let mut r = rng(seed);
        let g = series(&mut r, Orientation::Noetherian, 5, &z(6));
        let fast = pow(&g, &t, n).unwrap();
        let slow = pow_multiset_oracle(&g, &t, n).unwrap();
        prop_assert_eq!(fast.bound(), slow.bound());
        prop_assert!(close(&fast, &slow, l1(&slow), EPS));
    }

    #[test]
    fn minus_one_power_is_inverse(seed in any::<u64>(), noeth in any::<bool>(), n in -2i64..=2) {
        let o = if noeth { Orientation::Noetherian } else { Orientation::Artinian };
        let b = if noeth { z(8) } else { z(-8) };
        let mut r = rng(seed);
        let g = series(&mut r, o, 5, &b);
        let inv = g.invert().unwrap();
        prop_assert!(close(&pow(&g, &z(-1), n).unwrap(), &inv, l1(&inv), EPS));
    }

    #[test]
    fn duality_commutes_with_powers(seed in any::<u64>(), t in any_exponent(), n in -1i64..=1) {
        let mut r = rng(seed);
        let g = series(&mut r, Orientation::Noetherian, 5, &z(8));
        let p = pow(&g, &t, n).unwrap();
        prop_assert!(close(&p.dualize(), &pow(&g.dualize(), &t, n).unwrap(), l1(&p), EPS));
    }

    #[test]
    fn integer_powers_are_repeated_products(seed in any::<u64>(), k in 0u32..5) {
        let mut r = rng(seed);
        let g = series(&mut r, Orientation::Noetherian, 4, &z(8));
        let mut acc = Series::one(Orientation::Noetherian, g.bound().clone()).unwrap();
        for _ in 0..k {
            acc = acc.mul(&g).unwrap();
        }
        let p = pow(&g, &z(k as i64), r.gen_range(-3..=3)).unwrap();
        prop_assert!(close(&p, &acc, l1(&acc), EPS));
    }
}
