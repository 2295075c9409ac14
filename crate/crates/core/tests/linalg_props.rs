mod common;

use common::*;
use prodbasis::linalg::dot;
use prodbasis::{FieldSpec, Matrix};
use proptest::prelude::*;

fn small_fields() -> Vec<FieldSpec> {
    vec![gf(2), gf(3), gf(5), Q]
}

fn dims_and_entries() -> impl Strategy<Value = (usize, usize, Vec<(i64, i64)>)> {
    (1usize..=6, 1usize..=6, entries(36))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn elimination_invariants((rows, cols, raw) in dims_and_entries()) {
        for f in small_fields() {
            let a = matrix(f, rows, cols, &raw);
            let rref = a.rref();
            prop_assert_eq!(a.rank(), rref.reduced.rank());
            prop_assert_eq!(rref.pivots.len(), a.rank());
            prop_assert_eq!(rref.transform.mul(&a).unwrap(), rref.reduced.clone());
            let kernel = a.kernel();
            prop_assert_eq!(kernel.len() + a.rank(), cols);
            for k in &kernel {
                prop_assert!(a.mul_vec(k).unwrap().iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn inverse_and_determinant(n in 1usize..=6, raw in entries(36)) {
        for f in small_fields() {
            let a = matrix(f, n, n, &raw);
            let det = a.det().unwrap();
            prop_assert_eq!(det.is_zero(), a.rank() < n);
            if let Ok(inv) = a.inverse() {
                prop_assert!((det * inv.det().unwrap()).is_one());
                prop_assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(f, n));
            } else {
                prop_assert!(det.is_zero());
            }
        }
    }

    #[test]
    fn rank_normal_form_reconstructs((rows, cols, raw) in dims_and_entries()) {
        for f in small_fields() {
            let a = matrix(f, rows, cols, &raw);
            let rnf = a.rank_normal_form();
            prop_assert_eq!(rnf.rank, a.rank());
            prop_assert!(!rnf.p.det().unwrap().is_zero());
            prop_assert!(!rnf.q.det().unwrap().is_zero());
            let b = Matrix::rank_normal(f, rows, cols, rnf.rank);
            prop_assert_eq!(rnf.p.transpose().mul(&b).unwrap().mul(&rnf.q).unwrap(), a);
        }
    }

    #[test]
    fn integer_determinant_is_integer(n in 1usize..=6, raw in proptest::collection::vec(-9i64..=9, 36)) {
        let a = Matrix::new(Q, n, n, ints(Q, &raw[..n * n])).unwrap();
        prop_assert!(a.det().unwrap().as_rational().unwrap().is_integer());
    }

    #[test]
    fn transpose_reverses_products(n in 1usize..=5, raw in entries(50)) {
        for f in small_fields() {
            let a = matrix(f, n, n, &raw[..25]);
            let b = matrix(f, n, n, &raw[25..]);
            prop_assert_eq!(a.mul(&b).unwrap().transpose(), b.transpose().mul(&a.transpose()).unwrap());
            let v = a.row(0).to_vec();
            prop_assert_eq!(dot(&v, &v), (0..n).fold(f.zero(), |acc, j| &acc + &(&a[(0, j)] * &a[(0, j)])));
        }
    }

    #[test]
    fn text_round_trip((rows, cols, raw) in dims_and_entries()) {
        for f in small_fields() {
            let a = matrix(f, rows, cols, &raw);
            prop_assert_eq!(Matrix::parse(&a.to_string()).unwrap(), a);
        }
    }
}
