//! Seeded random generation of expressions, sections, and forms, used by
//! the randomized identity verifier and by test corpora. All sampling is
//! driven by a caller-supplied RNG so results are reproducible from a seed.

use rand::Rng;

use crate::algebroid::Section;
use crate::calculus::{increasing_tuples, DifferentialForm};
use crate::expr::{Monomial, Poly, ScalarExpr};

/// A random polynomial with small integer coefficients, at most
/// `max_terms` terms, and total degree at most `max_degree`.
pub fn random_poly_expr<R: Rng>(
    rng: &mut R,
    nvars: usize,
    max_degree: u32,
    max_terms: usize,
) -> ScalarExpr {
    let terms = rng.random_range(0..=max_terms);
    let mut poly = Poly::zero(nvars);
    for _ in 0..terms {
        let mut exps = vec![0u32; nvars];
        let mut budget = max_degree;
        for e in exps.iter_mut() {
            let d = rng.random_range(0..=budget);
            *e = d;
            budget -= d;
        }
        let coeff = loop {
            let c = rng.random_range(-3i64..=3);
            if c != 0 {
                break c;
            }
        };
        poly = poly.add(&Poly::integer(nvars, coeff).mul_term(
            &Monomial::from_exps(exps),
            &num::BigRational::from_integer(1.into()),
        ));
    }
    ScalarExpr::from_poly(poly)
}

/// A section with random polynomial components.
pub fn random_section<R: Rng>(
    rng: &mut R,
    rank: usize,
    nvars: usize,
    max_degree: u32,
    max_terms: usize,
) -> Section {
    Section::new(
        (0..rank)
            .map(|_| random_poly_expr(rng, nvars, max_degree, max_terms))
            .collect(),
    )
}

/// A form of the given degree with random polynomial coefficients.
pub fn random_form<R: Rng>(
    rng: &mut R,
    degree: usize,
    rank: usize,
    nvars: usize,
    max_degree: u32,
    max_terms: usize,
) -> DifferentialForm {
    let coeffs: Vec<_> = increasing_tuples(rank, degree)
        .into_iter()
        .map(|key| (key, random_poly_expr(rng, nvars, max_degree, max_terms)))
        .collect();
    DifferentialForm::from_coefficients(degree, rank, nvars, coeffs)
        .expect("generated keys are valid")
}
