//! Property suite for the expression kernel: canonical forms, field axioms,
//! the derivation law, evaluation, and the parser round-trip.

mod common;

use common::{arb_scalar, arb_poly};
use num::{BigRational, Zero};
use proptest::prelude::*;

use algcalc_core::expr::{parse_expr, Coords, ScalarExpr};

const NVARS: usize = 3;

fn coords() -> Coords {
    Coords::standard(NVARS)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonicalization_is_idempotent(e in arb_scalar(NVARS)) {
        let again = ScalarExpr::new(e.numerator().clone(), e.denominator().clone());
        prop_assert_eq!(&again, &e);
    }

    #[test]
    fn addition_commutes_and_associates(
        a in arb_scalar(NVARS),
        b in arb_scalar(NVARS),
        c in arb_scalar(NVARS),
    ) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn multiplication_commutes_associates_distributes(
        a in arb_scalar(NVARS),
        b in arb_scalar(NVARS),
        c in arb_scalar(NVARS),
    ) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn inverses_cancel(a in arb_scalar(NVARS)) {
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.div(&a).unwrap().is_one());
        }
    }

    #[test]
    fn partial_satisfies_leibniz(
        a in arb_scalar(NVARS),
        b in arb_scalar(NVARS),
        i in 1usize..=NVARS,
    ) {
        let lhs = a.mul(&b).partial(i).unwrap();
        let rhs = a.partial(i).unwrap().mul(&b).add(&a.mul(&b.partial(i).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_homomorphism(
        a in arb_scalar(NVARS),
        b in arb_scalar(NVARS),
        pt in prop::collection::vec(-4i64..=4, NVARS),
    ) {
        let point: Vec<BigRational> = pt.into_iter().map(|k| BigRational::from_integer(k.into())).collect();
        let (va, vb) = match (a.eval(&point), b.eval(&point)) {
            (Ok(va), Ok(vb)) => (va, vb),
            _ => return Ok(()), // pole: resample
        };
        if let Ok(vs) = a.add(&b).eval(&point) {
            prop_assert_eq!(vs, va.clone() + vb.clone());
        }
        if let Ok(vp) = a.mul(&b).eval(&point) {
            prop_assert_eq!(vp, va * vb);
        }
    }

    #[test]
    fn printed_form_parses_back(e in arb_scalar(NVARS)) {
        let text = e.to_text(&coords());
        let reparsed = parse_expr(&text, &coords()).expect("printer output is grammatical");
        prop_assert_eq!(reparsed, e);
    }

    #[test]
    fn zero_test_matches_polynomial_numerator(num in arb_poly(NVARS)) {
        let e = ScalarExpr::from_poly(num.clone());
        prop_assert_eq!(e.is_zero(), num.is_zero());
        // Spot-check against evaluation at a random-ish point.
        if !e.is_zero() {
            let point: Vec<BigRational> = (1..=NVARS as i64)
                .map(|k| BigRational::from_integer((k + 7).into()))
                .collect();
            // A nonzero rational function can still vanish at one point,
            // but a zero one must vanish everywhere.
            let _ = e.eval(&point);
        } else {
            for k in 0..3i64 {
                let point: Vec<BigRational> = (0..NVARS as i64)
                    .map(|j| BigRational::from_integer((j + k).into()))
                    .collect();
                prop_assert_eq!(e.eval(&point).unwrap(), BigRational::zero());
            }
        }
    }
}
