use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spencer_core::formcomplex::{exterior_d, random_form, random_tensor, spencer_d_with, FormMode, SpencerElement};
use spencer_core::liealg::builtin;
use spencer_core::spencer::{LeibnizConvention, Prolongation};
use spencer_core::DualFunctional;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_squared_vanishes(seed in any::<u64>(), vars in 1usize..=3) {
        let f = random_form(&mut rng(seed), FormMode::Real, vars, 4, 2, 4);
        prop_assert!(exterior_d(&exterior_d(&f)).is_zero());
    }

    #[test]
    fn dolbeault_identities(seed in any::<u64>(), vars in 1usize..=2) {
        let f = random_form(&mut rng(seed), FormMode::Complex, vars, 3, 2, 4);
        let (del, delbar) = f.del_delbar().unwrap();
        prop_assert_eq!(del.add(&delbar).unwrap(), exterior_d(&f));
        prop_assert!(del.del_delbar().unwrap().0.is_zero());
        prop_assert!(delbar.del_delbar().unwrap().1.is_zero());
        let anti = del.del_delbar().unwrap().1.add(&delbar.del_delbar().unwrap().0).unwrap();
        prop_assert!(anti.is_zero());
    }

    #[test]
    fn d_is_a_graded_derivation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_form(&mut r, FormMode::Real, 2, 3, 1, 3);
        let b = random_form(&mut r, FormMode::Real, 2, 3, 1, 3);
        // Only homogeneous α has a well-defined sign.
        let lhs = exterior_d(&a.wedge(&b).unwrap());
        let degrees = a.degrees();
        if degrees.len() == 1 {
            let sign = if degrees[0] % 2 == 1 { -1 } else { 1 };
            let rhs = exterior_d(&a)
                .wedge(&b)
                .unwrap()
                .add(&a.wedge(&exterior_d(&b)).unwrap().scale(&sign.into()))
                .unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn coupled_square_is_pure_tensor_defect(
        seed in any::<u64>(), l in proptest::collection::vec(-3i64..=3, 3), k in 1usize..=2, graded in any::<bool>(),
    ) {
        let g = builtin::sl2();
        let conv = if graded { LeibnizConvention::Graded } else { LeibnizConvention::Ungraded };
        let lambda = DualFunctional::from_ints(&l);
        let op = Prolongation::new(&g, &lambda, conv).unwrap();
        let mut r = rng(seed);
        let alpha = random_form(&mut r, FormMode::Real, 2, 3, 2, 3);
        let s = random_tensor(&mut r, 3, k, 3);
        let e = SpencerElement::pure(&alpha, &s);
        let dd = spencer_d_with(&spencer_d_with(&e, &op), &op);
        let expected = SpencerElement::pure(&alpha, &op.apply(&op.apply(&s)));
        prop_assert_eq!(dd, expected);
    }
}
