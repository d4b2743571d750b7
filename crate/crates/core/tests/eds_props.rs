//! Property suite for the generated ideal: certificate soundness, the
//! ideal absorbing wedges, members vanishing on the system, and the
//! three-way involutivity agreement.

mod common;

use proptest::prelude::*;
use rand::SeedableRng;

use algcalc_core::catalog::{self, CorpusInstance};
use algcalc_core::eds::{
    eds_involutivity_equivalence, ideal_membership, membership_certificate, vanishes_on_ids,
    GeneratedIdeal,
};
use algcalc_core::ids::extend_frame;
use algcalc_core::sample::random_form;

fn corpus() -> Vec<CorpusInstance> {
    catalog::involutivity_corpus(0xBEEF, 24)
}

#[test]
fn three_way_agreement_on_corpus() {
    for inst in corpus() {
        let eq = eds_involutivity_equivalence(&inst.algebroid, &inst.subbundle).unwrap();
        assert!(
            eq.verdicts_agree(),
            "{}: bracket={} cartan={} closure={}",
            inst.label,
            eq.bracket.verdict(),
            eq.cartan.verdict(),
            eq.closure.verdict()
        );
    }
}

#[test]
fn certified_members_expand_wedge_and_vanish() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    let mut members_checked = 0usize;
    for inst in corpus() {
        let a = &inst.algebroid;
        let e = &inst.subbundle;
        let p = a.rank();
        let n = a.base_dim();
        let r = e.generator_count();
        if r == p {
            continue; // zero annihilator: the ideal is trivial
        }
        let ideal = GeneratedIdeal::new(a, e).unwrap();
        let cf = extend_frame(a, e).unwrap();
        for round in 0..6 {
            // Build a certified member Σ Ω_α ∧ Θ^α from random forms.
            let degree = round % 2; // Ω of degree 0 or 1
            let mut member =
                algcalc_core::calculus::DifferentialForm::zero(degree + 1, p, n);
            for (k, theta) in cf.tail().iter().enumerate() {
                let omega = random_form(&mut rng, degree, p, n, 1, 2);
                let _ = k;
                member = member.add(&omega.wedge(theta));
            }
            if member.is_zero() {
                continue;
            }
            members_checked += 1;
            // Membership by the top-wedge criterion.
            assert!(ideal_membership(&ideal, &member), "{}", inst.label);
            // The certificate re-expands exactly.
            let cert = membership_certificate(&cf, &member)
                .unwrap_or_else(|| panic!("{}: certificate must exist", inst.label));
            assert_eq!(cert.expand(&cf), member, "{}", inst.label);
            // Wedging a member by anything stays in the ideal.
            let eta = random_form(&mut rng, 1, p, n, 1, 2);
            let wedged = eta.wedge(&member);
            if wedged.degree() <= p && !wedged.is_zero() {
                assert!(ideal_membership(&ideal, &wedged), "{}", inst.label);
            }
            // Every member vanishes on the system's generators.
            assert_eq!(vanishes_on_ids(&member, e), Ok(true), "{}", inst.label);
        }
    }
    assert!(members_checked >= 50, "only {members_checked} members sampled");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn scalar_multiples_of_generators_are_members(
        f in common::arb_poly_scalar(3),
        pick in 0usize..4,
    ) {
        let instances = catalog::involutivity_corpus(3, 4);
        let inst = &instances[pick % instances.len()];
        let a = &inst.algebroid;
        let e = &inst.subbundle;
        if e.generator_count() == a.rank() {
            return Ok(());
        }
        let ideal = GeneratedIdeal::new(a, e).unwrap();
        let f = common_clamp(&f, a.base_dim());
        let member = ideal.generators()[0].scale(&f);
        if member.is_zero() {
            return Ok(());
        }
        prop_assert!(ideal_membership(&ideal, &member));
        prop_assert_eq!(vanishes_on_ids(&member, e), Ok(true));
    }
}

fn common_clamp(
    f: &algcalc_core::expr::ScalarExpr,
    nvars: usize,
) -> algcalc_core::expr::ScalarExpr {
    use algcalc_core::expr::{Monomial, Poly, ScalarExpr};
    if f.nvars() == nvars {
        return f.clone();
    }
    ScalarExpr::from_poly(Poly::from_terms(
        nvars,
        f.numerator().terms().map(|(m, c)| {
            (
                Monomial::from_exps(m.exps()[..nvars].to_vec()),
                c.clone(),
            )
        }),
    ))
}
