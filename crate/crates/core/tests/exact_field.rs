use proptest::prelude::*;
use spencer_core::exactlinalg::{nullspace, rref, ExactMatrix};
use spencer_core::GaussianRational;

fn scalar() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| {
        &GaussianRational::from_ratio(a, b) + &(&GaussianRational::from_ratio(c, d) * &GaussianRational::i())
    })
}

fn matrix() -> impl Strategy<Value = ExactMatrix> {
    (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| {
        // Sparse integer entries make rank deficiency common.
        proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -2i64..=2], r * c).prop_map(move |v| {
            let rows = v
                .chunks(c)
                .map(|row| row.iter().map(|&x| GaussianRational::from_int(x)).collect())
                .collect();
            ExactMatrix::from_rows(c, rows).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, GaussianRational::zero());
        prop_assert_eq!(&a * &GaussianRational::one(), a.clone());
    }

    #[test]
    fn inverses(a in scalar(), b in scalar()) {
        match a.checked_inv() {
            Some(inv) => prop_assert!((&a * &inv).is_one()),
            None => prop_assert!(a.is_zero()),
        }
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        } else {
            prop_assert!(a.checked_div(&b).is_err());
        }
    }

    #[test]
    fn string_round_trip(a in scalar()) {
        let back: GaussianRational = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn conjugate_norm(a in scalar()) {
        let n = &a * &a.conj();
        prop_assert!(n.is_real());
        prop_assert_eq!(n.re().clone(), a.norm_sqr());
    }

    #[test]
    fn rank_plus_nullity(m in matrix()) {
        let ns = nullspace(&m);
        prop_assert_eq!(m.rank() + ns.len(), m.cols());
        for v in &ns {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(GaussianRational::is_zero));
        }
    }

    #[test]
    fn rref_is_idempotent(m in matrix()) {
        let once = rref(&m);
        let twice = rref(&once.reduced);
        prop_assert_eq!(&once.reduced, &twice.reduced);
        prop_assert_eq!(once.rank, twice.rank);
        prop_assert_eq!(once.rank, m.transpose().rank());
    }
}
