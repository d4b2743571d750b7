//! Property suite for the exterior algebra and the calculus operators:
//! graded commutativity and associativity of the wedge, the
//! shuffle-expansion oracle for evaluation, the two independent routes to
//! the Lie derivative, and the structure-equation regression.

mod common;

use common::{arb_form, arb_section};
use proptest::prelude::*;

use algcalc_core::algebroid::{LieAlgebroid, Section};
use algcalc_core::calculus::{
    ext_deriv, interior, lie_derivative, maurer_cartan_check, DifferentialForm,
};
use algcalc_core::catalog;
use algcalc_core::expr::ScalarExpr;

const P: usize = 3;
const N: usize = 3;

fn arb_validated() -> impl Strategy<Value = LieAlgebroid> {
    let pool = catalog::validated();
    (0..pool.len()).prop_map(move |i| catalog::validated().swap_remove(i).1)
}

/// Independent factorial-cost evaluation of `(ω∧θ)(z_1,…,z_{q+r})` by
/// direct antisymmetrization over (q,r)-shuffles.
fn shuffle_apply(
    omega: &DifferentialForm,
    theta: &DifferentialForm,
    sections: &[Section],
) -> ScalarExpr {
    let q = omega.degree();
    let total = q + theta.degree();
    assert_eq!(sections.len(), total);
    let nvars = omega.nvars();
    let mut acc = ScalarExpr::zero(nvars);
    for left in algcalc_core::calculus::increasing_tuples(total, q) {
        let left0: Vec<usize> = left.iter().map(|i| i - 1).collect();
        let right0: Vec<usize> = (0..total).filter(|i| !left0.contains(i)).collect();
        let inversions: usize = left0
            .iter()
            .map(|&s| right0.iter().filter(|&&t| t < s).count())
            .sum();
        let lhs: Vec<Section> = left0.iter().map(|&i| sections[i].clone()).collect();
        let rhs: Vec<Section> = right0.iter().map(|&i| sections[i].clone()).collect();
        let term = omega.apply(&lhs).mul(&theta.apply(&rhs));
        acc = if inversions % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn wedge_is_graded_commutative(
        (qa, qb, a, b) in (0usize..=2, 0usize..=2).prop_flat_map(|(qa, qb)| {
            (Just(qa), Just(qb), arb_form(qa, P, N), arb_form(qb, P, N))
        })
    ) {
        let lhs = a.wedge(&b);
        let mut rhs = b.wedge(&a);
        if (qa * qb) % 2 == 1 {
            rhs = rhs.neg();
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_is_associative(
        a in arb_form(1, P, N),
        b in arb_form(1, P, N),
        c in arb_form(1, P, N),
    ) {
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn wedge_evaluation_matches_shuffle_oracle(
        a in arb_form(1, P, N),
        b in arb_form(2, P, N),
        z1 in arb_section(P, N),
        z2 in arb_section(P, N),
        z3 in arb_section(P, N),
    ) {
        let sections = [z1, z2, z3];
        let direct = a.wedge(&b).apply(&sections);
        let oracle = shuffle_apply(&a, &b, &sections);
        prop_assert_eq!(direct, oracle);
    }

    #[test]
    fn evaluation_is_alternating(
        w in arb_form(2, P, N),
        z1 in arb_section(P, N),
        z2 in arb_section(P, N),
    ) {
        let ab = w.apply(&[z1.clone(), z2.clone()]);
        let ba = w.apply(&[z2.clone(), z1.clone()]);
        prop_assert_eq!(ab, ba.neg());
        prop_assert!(w.apply(&[z1.clone(), z1]).is_zero());
    }

    #[test]
    fn interior_satisfies_defining_identity(
        w in arb_form(2, P, N),
        z in arb_section(P, N),
        z2 in arb_section(P, N),
    ) {
        // (i_z ω)(z2) = ω(z, z2)
        let lhs = interior(&z, &w).apply(std::slice::from_ref(&z2));
        let rhs = w.apply(&[z.clone(), z2]);
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn lie_derivative_agrees_with_homotopy_route(
        (a, z, w) in arb_validated().prop_flat_map(|a| {
            let p = a.rank();
            let n = a.base_dim();
            (0usize..=2.min(p)).prop_flat_map(move |q| {
                (Just(a.clone()), arb_section(p, n), arb_form(q, p, n))
            })
        })
    ) {
        let direct = lie_derivative(&a, &z, &w);
        let dw = ext_deriv(&a, &w);
        let via_homotopy = ext_deriv(&a, &interior(&z, &w)).add(&interior(&z, &dw));
        prop_assert_eq!(direct, via_homotopy);
    }
}

/// The structure-equation regression holds symbolically for every
/// validated fixture.
#[test]
fn structure_equations_hold_on_catalog() {
    for (label, a) in catalog::validated() {
        let report = maurer_cartan_check(&a);
        assert!(report.passed(), "{label}: {:?}", report.witnesses.first());
    }
}
