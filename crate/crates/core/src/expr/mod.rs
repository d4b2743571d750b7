//! Exact symbolic arithmetic on multivariate rational functions: the
//! scalar substrate for everything else in the crate.

mod gcd;
mod monomial;
mod parse;
mod poly;
mod scalar;

pub use gcd::{poly_gcd, poly_gcd_many};
pub use monomial::Monomial;
pub use parse::{parse_expr, ParseError, ParseErrorKind};
pub use poly::Poly;
pub use scalar::{Coordinate, Coords, CoordsError, ExprError, ScalarExpr};
