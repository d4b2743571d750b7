//! Property suite for the algebroid bracket and anchor: the Leibniz rule,
//! antisymmetry, the anchor as a bracket morphism, and Jacobi on arbitrary
//! sections, quantified over the validated catalog.

mod common;

use common::{arb_scalar, arb_section};
use proptest::prelude::*;

use algcalc_core::algebroid::LieAlgebroid;
use algcalc_core::catalog;

fn arb_validated() -> impl Strategy<Value = LieAlgebroid> {
    let pool = catalog::validated();
    (0..pool.len()).prop_map(move |i| catalog::validated().swap_remove(i).1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bracket_satisfies_leibniz(
        (a, u, v, f) in arb_validated().prop_flat_map(|a| {
            let p = a.rank();
            let n = a.base_dim();
            (Just(a), arb_section(p, n), arb_section(p, n), arb_scalar(n))
        })
    ) {
        // [u, f·v] = f·[u,v] + ρ(u)(f)·v
        let lhs = a.bracket(&u, &v.scale(&f));
        let rhs = a
            .bracket(&u, &v)
            .scale(&f)
            .add(&v.scale(&a.anchor_apply(&u, &f)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_antisymmetric(
        (a, u, v) in arb_validated().prop_flat_map(|a| {
            let p = a.rank();
            let n = a.base_dim();
            (Just(a), arb_section(p, n), arb_section(p, n))
        })
    ) {
        prop_assert_eq!(a.bracket(&u, &v), a.bracket(&v, &u).neg());
    }

    #[test]
    fn anchor_is_a_bracket_morphism(
        (a, u, v, f) in arb_validated().prop_flat_map(|a| {
            let p = a.rank();
            let n = a.base_dim();
            (Just(a), arb_section(p, n), arb_section(p, n), arb_scalar(n))
        })
    ) {
        // ρ([u,v]) f = ρ(u)(ρ(v) f) − ρ(v)(ρ(u) f)
        let lhs = a.anchor_apply(&a.bracket(&u, &v), &f);
        let rhs = a
            .anchor_apply(&u, &a.anchor_apply(&v, &f))
            .sub(&a.anchor_apply(&v, &a.anchor_apply(&u, &f)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi_holds_on_arbitrary_sections(
        (a, u, v, w) in arb_validated().prop_flat_map(|a| {
            let p = a.rank();
            let n = a.base_dim();
            (Just(a), arb_section(p, n), arb_section(p, n), arb_section(p, n))
        })
    ) {
        let cyclic = a
            .bracket(&u, &a.bracket(&v, &w))
            .add(&a.bracket(&v, &a.bracket(&w, &u)))
            .add(&a.bracket(&w, &a.bracket(&u, &v)));
        prop_assert!(cyclic.is_zero());
    }
}

/// Independent brute-force oracle for the rank-3 constant-structure
/// algebroid: the cyclic epsilon contraction vanishes over the integers.
#[test]
fn epsilon_jacobi_brute_force_oracle() {
    fn eps(a: usize, b: usize, c: usize) -> i64 {
        match (a, b, c) {
            (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
            (1, 3, 2) | (2, 1, 3) | (3, 2, 1) => -1,
            _ => 0,
        }
    }
    for alpha in 1..=3 {
        for beta in 1..=3 {
            for gamma in 1..=3 {
                for eta in 1..=3 {
                    let mut sum = 0i64;
                    for delta in 1..=3 {
                        sum += eps(beta, gamma, delta) * eps(alpha, delta, eta)
                            + eps(gamma, alpha, delta) * eps(beta, delta, eta)
                            + eps(alpha, beta, delta) * eps(gamma, delta, eta);
                    }
                    assert_eq!(sum, 0, "cyclic epsilon contraction at ({alpha},{beta},{gamma},{eta})");
                }
            }
        }
    }
    // The symbolic checker must agree with the integer enumeration.
    assert!(catalog::so3().check_jacobi().passed());
}
