//! Shared proptest strategies for the property suites.
#![allow(dead_code)] // each test binary uses its own subset

use num::BigRational;
use proptest::prelude::*;

use algcalc_core::algebroid::Section;
use algcalc_core::calculus::{increasing_tuples, DifferentialForm};
use algcalc_core::expr::{Monomial, Poly, ScalarExpr};

pub fn arb_poly(nvars: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (prop::collection::vec(0u32..=2, nvars), -5i64..=5),
        0..4,
    )
    .prop_map(move |terms| {
        Poly::from_terms(
            nvars,
            terms.into_iter().map(|(exps, c)| {
                (
                    Monomial::from_exps(exps),
                    BigRational::from_integer(c.into()),
                )
            }),
        )
    })
}

pub fn arb_nonzero_poly(nvars: usize) -> impl Strategy<Value = Poly> {
    arb_poly(nvars).prop_map(move |p| {
        if p.is_zero() {
            Poly::one(nvars)
        } else {
            p
        }
    })
}

/// A full rational function: random numerator over a small nonzero
/// denominator (1, a variable, or a shifted variable) so that repeated
/// quotient-rule cascades stay tractable.
pub fn arb_scalar(nvars: usize) -> impl Strategy<Value = ScalarExpr> {
    let den = prop_oneof![
        Just(None),
        (0..nvars, 0i64..=2).prop_map(Some),
    ];
    (arb_poly(nvars), den).prop_map(move |(num, den)| {
        let den = match den {
            None => Poly::one(nvars),
            Some((v, shift)) => Poly::var(nvars, v).add(&Poly::integer(nvars, shift)),
        };
        ScalarExpr::new(num, den)
    })
}

/// A polynomial scalar (no denominator), the shape used for sections and
/// form coefficients.
pub fn arb_poly_scalar(nvars: usize) -> impl Strategy<Value = ScalarExpr> {
    arb_poly(nvars).prop_map(ScalarExpr::from_poly)
}

pub fn arb_section(rank: usize, nvars: usize) -> impl Strategy<Value = Section> {
    prop::collection::vec(arb_poly_scalar(nvars), rank..=rank).prop_map(Section::new)
}

pub fn arb_form(degree: usize, rank: usize, nvars: usize) -> impl Strategy<Value = DifferentialForm> {
    let keys = increasing_tuples(rank, degree);
    let count = keys.len();
    prop::collection::vec(arb_poly_scalar(nvars), count..=count).prop_map(move |coeffs| {
        DifferentialForm::from_coefficients(
            degree,
            rank,
            nvars,
            keys.clone().into_iter().zip(coeffs),
        )
        .expect("enumerated keys are valid")
    })
}
