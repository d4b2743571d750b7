//! Rational functions in canonical form — the scalar field of the library.
//!
//! A [`ScalarExpr`] is a quotient of two multivariate polynomials kept in
//! canonical form:
//! - the denominator is never zero,
//! - numerator and denominator are coprime,
//! - the denominator's leading coefficient under graded lex is 1,
//! - zero is represented as 0/1.
//!
//! Structural equality of canonical forms therefore coincides with equality
//! as rational functions, which makes `is_zero` an exact decision rather
//! than a heuristic.

use num::{BigRational, One, Signed, Zero};
use thiserror::Error;

use super::gcd::poly_gcd;
use super::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("division by zero expression")]
    DivisionByZero,
    #[error("coordinate index {index} out of range 1..={nvars}")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("denominator vanishes at the evaluation point")]
    Pole,
}

/// A base coordinate: 1-based index plus display name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coordinate {
    index: usize,
    name: String,
}

impl Coordinate {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoordsError {
    #[error("coordinate list is empty")]
    Empty,
    #[error("coordinate name {0:?} is not a valid identifier")]
    BadName(String),
    #[error("duplicate coordinate name {0:?}")]
    Duplicate(String),
}

/// The ordered coordinate chart. Indices are contiguous from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coords {
    coords: Vec<Coordinate>,
}

impl Coords {
    pub fn new<I, S>(names: I) -> Result<Self, CoordsError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut coords = Vec::new();
        for (k, name) in names.into_iter().enumerate() {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(CoordsError::BadName(name));
            }
            if coords.iter().any(|c: &Coordinate| c.name == name) {
                return Err(CoordsError::Duplicate(name));
            }
            coords.push(Coordinate {
                index: k + 1,
                name,
            });
        }
        if coords.is_empty() {
            return Err(CoordsError::Empty);
        }
        Ok(Coords { coords })
    }

    /// The chart `x1, …, xn`.
    pub fn standard(n: usize) -> Self {
        Coords::new((1..=n).map(|i| format!("x{i}"))).expect("generated names are valid")
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Coordinate> {
        self.coords.iter()
    }

    /// 1-based index of a name.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.coords.iter().find(|c| c.name == name).map(|c| c.index)
    }

    /// Display name of the 1-based index.
    pub fn name(&self, index: usize) -> &str {
        &self.coords[index - 1].name
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An exact rational function of the base coordinates, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarExpr {
    num: Poly,
    den: Poly,
}

impl ScalarExpr {
    /// Canonicalizes `num/den`. Panics if `den` is the zero polynomial;
    /// use [`ScalarExpr::from_parts`] for fallible construction.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "denominator is the zero polynomial");
        Self::canonical(num, den)
    }

    pub fn from_parts(num: Poly, den: Poly) -> Result<Self, ExprError> {
        if den.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        assert_eq!(num.nvars(), den.nvars(), "arity mismatch");
        if num.is_zero() {
            return ScalarExpr {
                den: Poly::one(num.nvars()),
                num,
            };
        }
        if den.is_one() {
            return ScalarExpr { num, den };
        }
        let g = poly_gcd(&num, &den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let (_, lc) = den.leading().expect("nonzero denominator");
        let inv = lc.recip();
        ScalarExpr {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(num: Poly) -> Self {
        let den = Poly::one(num.nvars());
        ScalarExpr { num, den }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Poly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Poly::one(nvars))
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::from_poly(Poly::constant(nvars, c))
    }

    pub fn integer(nvars: usize, c: i64) -> Self {
        Self::from_poly(Poly::integer(nvars, c))
    }

    /// The coordinate function `x_i` for a 1-based index.
    pub fn coordinate(nvars: usize, index: usize) -> Result<Self, ExprError> {
        if index == 0 || index > nvars {
            return Err(ExprError::IndexOutOfRange { index, nvars });
        }
        Ok(Self::from_poly(Poly::var(nvars, index - 1)))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Exact zero test, decided by the canonical form.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, other: &ScalarExpr) -> ScalarExpr {
        Self::canonical(
            self.num
                .mul(&other.den)
                .add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &ScalarExpr) -> ScalarExpr {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ScalarExpr) -> ScalarExpr {
        Self::canonical(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn neg(&self) -> ScalarExpr {
        ScalarExpr {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn div(&self, other: &ScalarExpr) -> Result<ScalarExpr, ExprError> {
        if other.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(Self::canonical(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn recip(&self) -> Result<ScalarExpr, ExprError> {
        ScalarExpr::one(self.nvars()).div(self)
    }

    pub fn pow(&self, e: u32) -> ScalarExpr {
        // Coprimality survives powers, so no re-reduction is needed;
        // re-normalize the denominator's leading coefficient only.
        let num = self.num.pow(e);
        let den = self.den.pow(e);
        if num.is_zero() {
            return ScalarExpr::zero(self.nvars());
        }
        let (_, lc) = den.leading().expect("nonzero denominator");
        let inv = lc.recip();
        ScalarExpr {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// Partial derivative with respect to the 1-based coordinate index,
    /// by the quotient rule.
    pub fn partial(&self, index: usize) -> Result<ScalarExpr, ExprError> {
        if index == 0 || index > self.nvars() {
            return Err(ExprError::IndexOutOfRange {
                index,
                nvars: self.nvars(),
            });
        }
        let v = index - 1;
        let dn = self.num.partial(v);
        let dd = self.den.partial(v);
        Ok(Self::canonical(
            dn.mul(&self.den).sub(&self.num.mul(&dd)),
            self.den.mul(&self.den),
        ))
    }

    /// Exact value at a rational point. Fails with [`ExprError::Pole`]
    /// when the denominator vanishes there.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational, ExprError> {
        assert_eq!(point.len(), self.nvars(), "evaluation point arity mismatch");
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(ExprError::Pole);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Renders the expression in the input grammar so that parsing the
    /// result reproduces the canonical form.
    pub fn to_text(&self, coords: &Coords) -> String {
        assert_eq!(coords.len(), self.nvars(), "coordinate chart arity mismatch");
        if self.den.is_one() {
            return poly_text(&self.num, coords);
        }
        let num_text = if self.num.term_count() > 1 {
            format!("({})", poly_text(&self.num, coords))
        } else {
            poly_text(&self.num, coords)
        };
        let den_text = if denominator_needs_parens(&self.den) {
            format!("({})", poly_text(&self.den, coords))
        } else {
            poly_text(&self.den, coords)
        };
        format!("{num_text}/{den_text}")
    }
}

/// A one-term denominator with unit coefficient and a single variable power
/// binds correctly after `/`; anything else must be parenthesized.
fn denominator_needs_parens(den: &Poly) -> bool {
    if den.term_count() != 1 {
        return true;
    }
    let (m, c) = den.leading().expect("nonzero");
    if !c.is_one() {
        return true;
    }
    m.exps().iter().filter(|&&e| e > 0).count() > 1
}

fn rational_text(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn monomial_text(m: &super::monomial::Monomial, coords: &Coords) -> String {
    let mut parts = Vec::new();
    for (v, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(coords.name(v + 1).to_string());
        } else {
            parts.push(format!("{}^{}", coords.name(v + 1), e));
        }
    }
    parts.join("*")
}

fn poly_text(p: &Poly, coords: &Coords) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    // Leading term first: iterate graded lex descending.
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if m.is_unit() {
            out.push_str(&rational_text(&abs));
        } else if abs.is_one() {
            out.push_str(&monomial_text(m, coords));
        } else {
            out.push_str(&rational_text(&abs));
            out.push('*');
            out.push_str(&monomial_text(m, coords));
        }
    }
    out
}

impl std::ops::Add for &ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, rhs: &ScalarExpr) -> ScalarExpr {
        ScalarExpr::add(self, rhs)
    }
}

impl std::ops::Sub for &ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, rhs: &ScalarExpr) -> ScalarExpr {
        ScalarExpr::sub(self, rhs)
    }
}

impl std::ops::Mul for &ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, rhs: &ScalarExpr) -> ScalarExpr {
        ScalarExpr::mul(self, rhs)
    }
}

impl std::ops::Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coords2() -> Coords {
        Coords::standard(2)
    }

    fn x(v: usize) -> ScalarExpr {
        ScalarExpr::coordinate(2, v).unwrap()
    }

    #[test]
    fn additive_inverse_is_zero() {
        assert!(x(1).sub(&x(1)).is_zero());
    }

    #[test]
    fn multiplicative_inverse_is_one() {
        let inv = x(1).recip().unwrap();
        assert!(inv.mul(&x(1)).is_one());
    }

    #[test]
    fn gcd_cancellation_in_quotient() {
        // (x1^2 - 1)/(x1 - 1) = x1 + 1
        let one = ScalarExpr::one(2);
        let q = x(1)
            .pow(2)
            .sub(&one)
            .div(&x(1).sub(&one))
            .unwrap();
        assert_eq!(q, x(1).add(&one));
    }

    #[test]
    fn division_by_zero_rejected() {
        assert_eq!(
            x(1).div(&ScalarExpr::zero(2)),
            Err(ExprError::DivisionByZero)
        );
    }

    #[test]
    fn quotient_rule() {
        // d/dx2 (x1/x2) = -x1/x2^2
        let q = x(1).div(&x(2)).unwrap();
        let d = q.partial(2).unwrap();
        let expected = x(1).neg().div(&x(2).pow(2)).unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn constant_rule() {
        let c = ScalarExpr::integer(2, 7);
        assert!(c.partial(1).unwrap().is_zero());
        assert_eq!(
            c.partial(3),
            Err(ExprError::IndexOutOfRange { index: 3, nvars: 2 })
        );
    }

    #[test]
    fn eval_and_pole() {
        let e = x(1).pow(2).div(&x(2)).unwrap();
        let two = BigRational::from_integer(2.into());
        let four = BigRational::from_integer(4.into());
        assert_eq!(e.eval(&[two, four]).unwrap(), BigRational::one());
        let inv = x(1).recip().unwrap();
        assert_eq!(
            inv.eval(&[BigRational::zero(), BigRational::one()]),
            Err(ExprError::Pole)
        );
    }

    #[test]
    fn text_rendering() {
        let c = coords2();
        let e = x(1).add(&ScalarExpr::one(2)).div(&x(2).pow(2)).unwrap();
        assert_eq!(e.to_text(&c), "(x1 + 1)/x2^2");
        assert_eq!(ScalarExpr::zero(2).to_text(&c), "0");
        let f = x(1).div(&x(2)).unwrap();
        assert_eq!(f.to_text(&c), "x1/x2");
    }
}
