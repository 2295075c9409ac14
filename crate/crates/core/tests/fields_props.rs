mod common;

use common::*;
use prodbasis::fields::is_prime;
use proptest::prelude::*;
use std::collections::BTreeSet;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(a in entry(), b in entry(), c in entry()) {
        for f in fields() {
            let (a, b, c) = (scalar(f, a.0, a.1), scalar(f, b.0, b.1), scalar(f, c.0, c.1));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a + &(-&a)).is_zero());
            prop_assert_eq!(&a - &b, &a + &(-&b));
            prop_assert!((&a * &f.one()) == a && (&a + &f.zero()) == a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
                prop_assert_eq!(b.div(&a).unwrap() * a.clone(), b.clone());
            } else {
                prop_assert!(a.inv().is_err());
            }
        }
    }

    #[test]
    fn canonical_form_is_idempotent(a in entry()) {
        for f in fields() {
            let x = scalar(f, a.0, a.1);
            prop_assert_eq!(x.canonical().canonical(), x.canonical());
            prop_assert_eq!(f.parse_scalar(&x.to_string()).unwrap(), x);
        }
    }

    #[test]
    fn primality_matches_trial_division(n in 0u64..5000) {
        let naive = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        prop_assert_eq!(is_prime(n), naive);
    }
}

#[test]
fn enumeration_has_p_distinct_elements() {
    for p in (2u64..200).filter(|&p| is_prime(p)) {
        let f = gf(p);
        let elems = f.enumerate_elements().unwrap();
        assert_eq!(elems.len() as u64, p);
        let residues: BTreeSet<u64> = elems.iter().map(|x| x.residue().unwrap()).collect();
        assert_eq!(residues.len() as u64, p);
    }
    assert!(Q.enumerate_elements().is_err());
}
