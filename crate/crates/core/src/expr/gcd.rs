//! Multivariate polynomial gcd by content/primitive-part recursion on the
//! highest active variable, with a primitive pseudo-remainder sequence.

use num::One;

use super::monomial::Monomial;
use super::poly::Poly;

/// Greatest common divisor, returned as a primitive polynomial with
/// positive leading coefficient (the canonical associate). `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    assert_eq!(a.nvars(), b.nvars(), "polynomial arity mismatch");
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    // A nonzero constant is a unit of the coefficient field.
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.nvars());
    }
    // Split off monomial contents first; they are cheap and shrink the
    // pseudo-remainder work.
    let (ma, ra) = monomial_content(a);
    let (mb, rb) = monomial_content(b);
    let shared = Monomial::from_exps(
        ma.exps()
            .iter()
            .zip(mb.exps())
            .map(|(x, y)| *x.min(y))
            .collect(),
    );
    let core = gcd_core(&ra, &rb);
    core.mul_term(&shared, &num::BigRational::one()).primitive()
}

fn gcd_core(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.nvars());
    }
    // Trial divisions catch the common nested-factor cases outright.
    if a.div_exact(b).is_some() {
        return b.primitive();
    }
    if b.div_exact(a).is_some() {
        return a.primitive();
    }
    let var = match highest_active_var(a, b) {
        Some(v) => v,
        None => return Poly::one(a.nvars()),
    };

    let (ca, pa) = content_wrt(a, var);
    let (cb, pb) = content_wrt(b, var);
    let cont_gcd = poly_gcd(&ca, &cb);

    let (mut f, mut g) = if pa.degree_in(var) >= pb.degree_in(var) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    while !g.is_zero() {
        let r = pseudo_rem(&f, &g, var);
        f = g;
        g = if r.is_zero() {
            r
        } else {
            content_wrt(&r, var).1
        };
    }
    cont_gcd.mul(&f).primitive()
}

/// Largest monomial dividing every term, and the quotient by it.
fn monomial_content(f: &Poly) -> (Monomial, Poly) {
    let nvars = f.nvars();
    let mut mins = vec![u32::MAX; nvars];
    for (m, _) in f.terms() {
        for (v, &e) in m.exps().iter().enumerate() {
            mins[v] = mins[v].min(e);
        }
    }
    let shared = Monomial::from_exps(mins);
    if shared.is_unit() {
        return (shared, f.clone());
    }
    let reduced = Poly::from_terms(
        nvars,
        f.terms().map(|(m, c)| {
            (
                m.div(&shared).expect("content divides every term"),
                c.clone(),
            )
        }),
    );
    (shared, reduced)
}

/// Gcd of a sequence of polynomials; zero when the sequence is empty or
/// all zero.
pub fn poly_gcd_many<'a, I>(polys: I, nvars: usize) -> Poly
where
    I: IntoIterator<Item = &'a Poly>,
{
    let mut acc = Poly::zero(nvars);
    for p in polys {
        acc = poly_gcd(&acc, p);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn highest_active_var(a: &Poly, b: &Poly) -> Option<usize> {
    (0..a.nvars())
        .rev()
        .find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
}

/// Content of `f` with respect to `x_v`: the gcd of its `x_v`-coefficients
/// (polynomials in the remaining variables). Returns `(content, f/content)`.
fn content_wrt(f: &Poly, v: usize) -> (Poly, Poly) {
    let coeffs = f.coefficients_in(v);
    let content = poly_gcd_many(coeffs.iter().filter(|c| !c.is_zero()), f.nvars());
    let primitive = f
        .div_exact(&content)
        .expect("content divides the polynomial");
    (content, primitive)
}

/// Pseudo-remainder of `f` by `g` in the variable `x_v`: repeatedly scales
/// by the leading `x_v`-coefficient of `g` so every elimination step stays
/// polynomial.
fn pseudo_rem(f: &Poly, g: &Poly, v: usize) -> Poly {
    let dg = g.degree_in(v);
    let lc_g = leading_coeff_in(g, v);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lc_r = leading_coeff_in(&r, v);
        let shift = Monomial::unit(f.nvars()).with_exp(v, dr - dg);
        r = r.mul(&lc_g).sub(&g.mul(&lc_r).mul_term(&shift, &num::BigRational::one()));
    }
    r
}

fn leading_coeff_in(f: &Poly, v: usize) -> Poly {
    let coeffs = f.coefficients_in(v);
    coeffs
        .into_iter()
        .next_back()
        .expect("nonzero polynomial has coefficients")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: usize) -> Poly {
        Poly::var(2, v)
    }

    #[test]
    fn gcd_of_common_factor() {
        // (x1 + x2)(x1 - x2) and (x1 + x2)^2 share x1 + x2
        let s = x(0).add(&x(1));
        let d = x(0).sub(&x(1));
        let a = s.mul(&d);
        let b = s.mul(&s);
        assert_eq!(poly_gcd(&a, &b), s);
    }

    #[test]
    fn gcd_of_coprime_is_unit() {
        let g = poly_gcd(&x(0), &x(1));
        assert!(g.is_one());
    }

    #[test]
    fn gcd_with_zero_is_primitive_part() {
        let p = x(0).scale(&num::BigRational::from_integer((-6).into()));
        assert_eq!(poly_gcd(&p, &Poly::zero(2)), x(0));
    }

    #[test]
    fn univariate_cancellation() {
        // x^2 - 1 and x - 1 share x - 1
        let p1 = Poly::var(1, 0).pow(2).sub(&Poly::one(1));
        let p2 = Poly::var(1, 0).sub(&Poly::one(1));
        assert_eq!(poly_gcd(&p1, &p2), p2);
    }
}
