//! The three operators of the exterior calculus: interior product,
//! covariant Lie derivative, and exterior derivative.
//!
//! Coefficients of the results are computed by evaluating the defining
//! formulas on frame tuples; since forms are multilinear over the function
//! field, values on the frame determine them completely.

use crate::algebroid::{LieAlgebroid, Section};
use crate::expr::ScalarExpr;

use super::form::{increasing_tuples, DifferentialForm};

/// Interior product `i_z ω`: `(i_z ω)(z_2,…,z_q) = ω(z, z_2,…,z_q)`, the
/// zero map on 0-forms.
pub fn interior(z: &Section, omega: &DifferentialForm) -> DifferentialForm {
    let rank = omega.rank();
    let nvars = omega.nvars();
    assert_eq!(z.len(), rank, "section rank mismatch");
    if omega.degree() == 0 {
        return DifferentialForm::zero(0, rank, nvars);
    }
    let degree = omega.degree() - 1;
    let mut terms: Vec<(Vec<usize>, ScalarExpr)> = Vec::new();
    for (key, c) in omega.terms() {
        for (pos, &idx) in key.iter().enumerate() {
            let comp = z.component(idx);
            if comp.is_zero() {
                continue;
            }
            let mut reduced = key.clone();
            reduced.remove(pos);
            let mut coeff = c.mul(comp);
            if pos % 2 == 1 {
                coeff = coeff.neg();
            }
            terms.push((reduced, coeff));
        }
    }
    DifferentialForm::from_coefficients(degree, rank, nvars, terms)
        .expect("reduced keys stay strictly increasing")
}

/// Covariant Lie derivative `L_z ω`:
/// on 0-forms `L_z f = ρ(z) f`; in degree `q ≥ 1`
/// `(L_z ω)(z_1,…,z_q) = ρ(z)(ω(z_1,…,z_q)) − Σ_i ω(z_1,…,[z,z_i],…,z_q)`.
pub fn lie_derivative(
    a: &LieAlgebroid,
    z: &Section,
    omega: &DifferentialForm,
) -> DifferentialForm {
    let rank = a.rank();
    let nvars = a.base_dim();
    assert_eq!(omega.rank(), rank, "form over a different algebroid");
    assert_eq!(omega.nvars(), nvars, "form over a different chart");
    if omega.degree() == 0 {
        return DifferentialForm::scalar(rank, a.anchor_apply(z, &omega.scalar_part()));
    }
    let q = omega.degree();
    let mut terms: Vec<(Vec<usize>, ScalarExpr)> = Vec::new();
    for key in increasing_tuples(rank, q) {
        let mut value = a.anchor_apply(z, &omega.coefficient(&key));
        for (pos, &idx) in key.iter().enumerate() {
            let moved = a.bracket(z, &a.frame_section(idx));
            if moved.is_zero() {
                continue;
            }
            let sections: Vec<Section> = key
                .iter()
                .enumerate()
                .map(|(j, &i)| {
                    if j == pos {
                        moved.clone()
                    } else {
                        a.frame_section(i)
                    }
                })
                .collect();
            value = value.sub(&omega.apply(&sections));
        }
        terms.push((key, value));
    }
    DifferentialForm::from_coefficients(q, rank, nvars, terms).expect("keys are increasing")
}

/// Exterior derivative `d^F ω`:
/// on 0-forms `(d^F f)(z) = ρ(z) f`; in degree `q ≥ 1`
/// ```text
/// d^F ω(z_0,…,z_q) = Σ_i (−1)^i ρ(z_i)(ω(…ẑ_i…))
///                  + Σ_{i<j} (−1)^{i+j} ω([z_i,z_j], …ẑ_i…ẑ_j…)
/// ```
/// evaluated on frame tuples, where the first sum reduces to anchor
/// derivatives of coefficients and the second to structure-function
/// contractions.
pub fn ext_deriv(a: &LieAlgebroid, omega: &DifferentialForm) -> DifferentialForm {
    let rank = a.rank();
    let nvars = a.base_dim();
    assert_eq!(omega.rank(), rank, "form over a different algebroid");
    assert_eq!(omega.nvars(), nvars, "form over a different chart");
    let q = omega.degree();
    if q == 0 {
        let f = omega.scalar_part();
        let coeffs: Vec<(Vec<usize>, ScalarExpr)> = (1..=rank)
            .map(|alpha| (vec![alpha], a.anchor_apply_frame(alpha, &f)))
            .collect();
        return DifferentialForm::from_coefficients(1, rank, nvars, coeffs)
            .expect("singleton keys are valid");
    }
    let mut terms: Vec<(Vec<usize>, ScalarExpr)> = Vec::new();
    for key in increasing_tuples(rank, q + 1) {
        let mut value = ScalarExpr::zero(nvars);
        // Anchor-derivative terms.
        for (i, &alpha) in key.iter().enumerate() {
            let mut rest = key.clone();
            rest.remove(i);
            let c = omega.coefficient(&rest);
            if c.is_zero() {
                continue;
            }
            let term = a.anchor_apply_frame(alpha, &c);
            value = if i % 2 == 0 {
                value.add(&term)
            } else {
                value.sub(&term)
            };
        }
        // Bracket terms.
        for i in 0..key.len() {
            for j in (i + 1)..key.len() {
                let bracket = a.frame_bracket(key[i], key[j]);
                if bracket.is_zero() {
                    continue;
                }
                let mut sections = Vec::with_capacity(q);
                sections.push(bracket);
                for (k, &idx) in key.iter().enumerate() {
                    if k != i && k != j {
                        sections.push(a.frame_section(idx));
                    }
                }
                let term = omega.apply(&sections);
                value = if (i + j) % 2 == 0 {
                    value.add(&term)
                } else {
                    value.sub(&term)
                };
            }
        }
        terms.push((key, value));
    }
    DifferentialForm::from_coefficients(q + 1, rank, nvars, terms).expect("keys are increasing")
}

/// `d^F` of a coordinate function `x^i`, as the 1-form `ρ^i_α t^α`.
pub fn ext_deriv_coordinate(a: &LieAlgebroid, i: usize) -> DifferentialForm {
    let f = ScalarExpr::coordinate(a.base_dim(), i).expect("coordinate index in range");
    ext_deriv(a, &DifferentialForm::scalar(a.rank(), f))
}
