mod common;

use artseries::calculus::derivative;
use artseries::compose::compose;
use artseries::power::pow;
use artseries::{Coeff, Orientation, Series};
use common::*;
use proptest::prelude::*;

const EPS: f64 = 1e-9;

fn any_exponent() -> impl Strategy<Value = artseries::Exponent> {
    (-9i64..=9, 1i64..=3).prop_map(|(p, d)| q(p, d))
}

// D scales a pruned coefficient (at most ε) by its exponent, bounded by 16 here
proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn product_rule(seed in any::<u64>(), noeth in any::<bool>()) {
        let (o, b) = if noeth { (Orientation::Noetherian, z(8)) } else { (Orientation::Artinian, z(-8)) };
        let mut r = rng(seed);
        let f = series(&mut r, o, 5, &b);
        let g = series(&mut r, o, 5, &b);
        let lhs = derivative(&f.mul(&g).unwrap());
        let rhs = derivative(&f).mul(&g).unwrap().add(&f.mul(&derivative(&g)).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs, 16.0 * (1.0 + l1(&f) * l1(&g)), EPS));
    }

    #[test]
    fn power_rule(seed in any::<u64>(), t in any_exponent(), n in -2i64..=2) {
        let mut r = rng(seed);
        let g = series(&mut r, Orientation::Noetherian, 4, &z(8));
        let lhs = derivative(&pow(&g, &t, n).unwrap());
        let lower = pow(&g, &(&t - z(1)), n).unwrap();
        let rhs = lower.mul(&derivative(&g)).unwrap().scalar_mul(Coeff::new(t.to_f64(), 0.0));
        prop_assert!(close(&lhs, &rhs, 16.0 * (1.0 + l1(&lower) * l1(&g)), EPS));
    }

    #[test]
    fn chain_rule(seed in any::<u64>(), n in -1i64..=1) {
        let mut r = rng(seed);
        let f = series(&mut r, Orientation::Noetherian, 4, &z(6));
        let lead = unit_coeff(&mut r);
        let g = positive_degree_series(&mut r, 3, &z(6), lead);
        let lhs = derivative(&compose(&f, &g, n).unwrap());
        let outer = compose(&derivative(&f), &g, n).unwrap();
        let rhs = outer.mul(&derivative(&g)).unwrap();
        prop_assert!(close(&lhs, &rhs, 16.0 * (1.0 + l1(&outer) * l1(&g)), EPS));
    }

    #[test]
    fn derivatives_have_no_residue(seed in any::<u64>()) {
        let mut r = rng(seed);
        let lead = unit_coeff(&mut r);
        let mut g = series_with_lead(&mut r, Orientation::Noetherian, z(-3), lead, 6, 4, &z(6));
        g = g.add(&Series::make(Orientation::Noetherian, [(z(0), re(1.0))], z(6)).unwrap()).unwrap();
        prop_assert_eq!(derivative(&g).coefficient_at(&z(-1)).unwrap(), Coeff::new(0.0, 0.0));
    }
}
