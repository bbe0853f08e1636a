//! Property-based invariants of the exact arithmetic layer.

use proptest::prelude::*;

use gorbit::exactmath::{ExactMatrix, Scalar, ScalarField};

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    // Rational coordinates over the monomial basis 1, √2, √3, √5, √6, …
    (proptest::collection::vec((-20i64..=20, 1i64..=6), 8)).prop_map(|coords| {
        let field = ScalarField::default_tower();
        let mut x = Scalar::zero(&field);
        for (mask, (n, d)) in coords.into_iter().enumerate() {
            let term = Scalar::monomial(
                &field,
                mask,
                num::rational::BigRational::new(n.into(), d.into()),
            )
            .unwrap();
            x = x.add(&term);
        }
        x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        // Commutativity and associativity.
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        // Distributivity.
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        // Additive inverse.
        prop_assert!(a.add(&a.neg()).is_zero());
        // Multiplicative inverse.
        if !a.is_zero() {
            let field = ScalarField::default_tower();
            prop_assert_eq!(a.mul(&a.inverse().unwrap()), Scalar::one(&field));
        }
    }

    #[test]
    fn sign_is_odd_and_consistent(a in arb_scalar()) {
        if a.is_zero() {
            prop_assert_eq!(a.sign(), 0);
        } else {
            prop_assert_eq!(a.sign() * a.neg().sign(), -1);
            // sign agrees with the float embedding up to rounding noise.
            let f = a.to_f64();
            if f.abs() > 1e-9 {
                prop_assert_eq!(a.sign(), if f > 0.0 { 1 } else { -1 });
            }
            // x² is positive.
            prop_assert_eq!(a.mul(&a).sign(), 1);
        }
    }

    #[test]
    fn serialization_round_trips(a in arb_scalar()) {
        let field = ScalarField::default_tower();
        prop_assert_eq!(Scalar::parse(&field, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn rank_plus_nullity_is_cols(
        entries in proptest::collection::vec(-9i64..=9, 1..=36),
        cols in 1usize..=6,
    ) {
        let field = ScalarField::rationals();
        let rows = entries.len().div_ceil(cols);
        let mut data = vec![vec![Scalar::zero(&field); cols]; rows];
        for (i, e) in entries.iter().enumerate() {
            data[i / cols][i % cols] = Scalar::from_int(&field, *e);
        }
        let m = ExactMatrix::from_rows(&field, data);
        let (rank, nullspace) = m.rank_nullspace();
        prop_assert_eq!(rank + nullspace.len(), cols);
        // Every nullspace vector really is annihilated.
        for v in &nullspace {
            prop_assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
    }
}
