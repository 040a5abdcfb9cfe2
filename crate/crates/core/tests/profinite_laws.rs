use artseries::profinite::{
    crt_representative, embed, factorial_sum_element, lcm_up_to, is_integral, pi_add, pi_mul, pi_neg, Pseudointeger,
};
use num::BigInt;
use proptest::prelude::*;

const M: u64 = 24;

/// Compatible systems: integers, the factorial sum, and ring combinations.
fn element() -> impl Strategy<Value = Pseudointeger> {
    let leaf = prop_oneof![
        (-1_000_000i64..=1_000_000).prop_map(|k| embed(k, M)),
        Just(factorial_sum_element(M)),
    ];
    leaf.prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| pi_add(&a, &b).unwrap()),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| pi_mul(&a, &b).unwrap()),
            inner.prop_map(|a| pi_neg(&a)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn embedding_is_a_ring_homomorphism(a in -50i64..=50, b in -50i64..=50, bound in 1u64..=M) {
        prop_assert_eq!(pi_add(&embed(a, bound), &embed(b, bound)).unwrap(), embed(a + b, bound));
        prop_assert_eq!(pi_mul(&embed(a, bound), &embed(b, bound)).unwrap(), embed(a * b, bound));
        prop_assert_eq!(pi_neg(&embed(a, bound)), embed(-a, bound));
    }

    #[test]
    fn ring_laws_hold_componentwise(a in element(), b in element(), c in element()) {
        let zero = embed(0, M);
        let one = embed(1, M);
        prop_assert_eq!(pi_add(&a, &b).unwrap(), pi_add(&b, &a).unwrap());
        prop_assert_eq!(pi_mul(&a, &b).unwrap(), pi_mul(&b, &a).unwrap());
        prop_assert_eq!(
            pi_add(&pi_add(&a, &b).unwrap(), &c).unwrap(),
            pi_add(&a, &pi_add(&b, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            pi_mul(&pi_mul(&a, &b).unwrap(), &c).unwrap(),
            pi_mul(&a, &pi_mul(&b, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            pi_mul(&a, &pi_add(&b, &c).unwrap()).unwrap(),
            pi_add(&pi_mul(&a, &b).unwrap(), &pi_mul(&a, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(pi_add(&a, &zero).unwrap(), a.clone());
        prop_assert_eq!(pi_mul(&a, &one).unwrap(), a.clone());
        prop_assert_eq!(pi_add(&a, &pi_neg(&a)).unwrap(), zero);
    }

    #[test]
    fn operations_preserve_compatibility(a in element(), b in element()) {
        prop_assert!(a.is_compatible());
        prop_assert!(pi_add(&a, &b).unwrap().is_compatible());
        prop_assert!(pi_mul(&a, &b).unwrap().is_compatible());
        prop_assert!(pi_neg(&a).is_compatible());
        prop_assert!(Pseudointeger::new(a.residues().to_vec()).is_ok());
    }

    #[test]
    fn small_integers_are_recognized(k in -1000i64..=1000, bound in 1u64..=M) {
        // recognized, as its centered class representative r mod L, exactly when r² ≤ L
        let l = lcm_up_to(bound);
        let mut r = ((BigInt::from(k) % &l) + &l) % &l;
        if &r * 2 > l {
            r -= &l;
        }
        let expected = (&r * &r <= l).then_some(r);
        prop_assert_eq!(is_integral(&embed(k, bound)), expected);
    }

    #[test]
    fn crt_reproduces_every_residue(a in element()) {
        let k = crt_representative(&a).expect("compatible systems have a representative");
        let residues: Vec<u64> = (1..=M).map(|n| {
            let n = BigInt::from(n);
            u64::try_from(((&k % &n) + &n) % &n).unwrap()
        }).collect();
        prop_assert_eq!(residues.as_slice(), a.residues());
    }
}

#[test]
fn factorial_sum_is_compatible_but_not_an_integer() {
    let f = factorial_sum_element(M);
    assert!(f.is_compatible());
    assert_eq!(f.residue(3), Some(0));
    assert_eq!(is_integral(&f), None);
}

#[test]
fn incompatible_residues_are_rejected() {
    // k_4 = 1 forces k_2 = 1
    assert!(Pseudointeger::new(vec![0, 0, 0, 1]).is_err());
    assert!(Pseudointeger::new(vec![0, 2]).is_err());
}
