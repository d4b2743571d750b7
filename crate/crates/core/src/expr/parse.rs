//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' unsigned-integer)?
//! base   := rational-literal | identifier | '(' expr ')' | '-' factor
//! ```
//!
//! Identifiers must be declared coordinate names; whitespace is
//! insignificant. Values are built bottom-up with exact arithmetic, so a
//! division whose divisor simplifies to zero is a parse-time error.

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

use super::scalar::{Coords, ScalarExpr};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{kind} at offset {position}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown identifier {0:?}")]
    UnknownIdentifier(String),
    #[error("division by zero expression")]
    DivisionByZero,
    #[error("expected an unsigned integer exponent")]
    BadExponent,
    #[error("unexpected trailing input")]
    TrailingInput,
}

/// Parses `text` over the chart `coords` into a canonical [`ScalarExpr`].
pub fn parse_expr(text: &str, coords: &Coords) -> Result<ScalarExpr, ParseError> {
    let mut p = Parser {
        chars: text.char_indices().collect(),
        pos: 0,
        coords,
    };
    let value = p.expr()?;
    p.skip_ws();
    if let Some(&(at, _)) = p.chars.get(p.pos) {
        return Err(ParseError {
            position: at,
            kind: ParseErrorKind::TrailingInput,
        });
    }
    Ok(value)
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    coords: &'a Coords,
}

impl Parser<'_> {
    fn nvars(&self) -> usize {
        self.coords.len()
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.get(self.pos), Some((_, c)) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(at, _)| at)
            .unwrap_or_else(|| {
                self.chars
                    .last()
                    .map(|&(at, c)| at + c.len_utf8())
                    .unwrap_or(0)
            })
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).map(|&(_, c)| c);
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.offset(),
            kind,
        }
    }

    fn expr(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                '+' => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                '-' => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut acc = self.factor()?;
        while let Some(op) = self.peek() {
            match op {
                '*' => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                '/' => {
                    self.bump();
                    let at = self.offset();
                    let rhs = self.factor()?;
                    acc = acc.div(&rhs).map_err(|_| ParseError {
                        position: at,
                        kind: ParseErrorKind::DivisionByZero,
                    })?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ScalarExpr, ParseError> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.bump();
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let mut digits = String::new();
        while matches!(self.chars.get(self.pos), Some((_, c)) if c.is_ascii_digit()) {
            digits.push(self.bump().expect("digit present"));
        }
        if digits.is_empty() {
            return Err(self.error(ParseErrorKind::BadExponent));
        }
        digits
            .parse::<u32>()
            .map_err(|_| self.error(ParseErrorKind::BadExponent))
    }

    fn base(&mut self) -> Result<ScalarExpr, ParseError> {
        match self.peek() {
            None => Err(self.error(ParseErrorKind::UnexpectedEnd)),
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(match self.peek() {
                        Some(c) => self.error(ParseErrorKind::UnexpectedChar(c)),
                        None => self.error(ParseErrorKind::UnexpectedEnd),
                    });
                }
                self.bump();
                Ok(inner)
            }
            Some('-') => {
                self.bump();
                Ok(self.factor()?.neg())
            }
            Some(c) if c.is_ascii_digit() => self.literal(),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.identifier(),
            Some(c) => Err(self.error(ParseErrorKind::UnexpectedChar(c))),
        }
    }

    fn literal(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut int_part = String::new();
        while matches!(self.chars.get(self.pos), Some((_, c)) if c.is_ascii_digit()) {
            int_part.push(self.bump().expect("digit present"));
        }
        let mut value = BigRational::from_integer(
            int_part.parse::<BigInt>().expect("digits parse as integer"),
        );
        // Optional exact decimal fraction: 1.5 = 3/2.
        if matches!(self.chars.get(self.pos), Some(&(_, '.'))) {
            self.bump();
            let mut frac = String::new();
            while matches!(self.chars.get(self.pos), Some((_, c)) if c.is_ascii_digit()) {
                frac.push(self.bump().expect("digit present"));
            }
            if frac.is_empty() {
                return Err(self.error(ParseErrorKind::UnexpectedChar('.')));
            }
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let frac_num = frac.parse::<BigInt>().expect("digits parse as integer");
            value += BigRational::new(frac_num, scale);
        }
        if value.is_zero() {
            return Ok(ScalarExpr::zero(self.nvars()));
        }
        if value.is_one() {
            return Ok(ScalarExpr::one(self.nvars()));
        }
        Ok(ScalarExpr::constant(self.nvars(), value))
    }

    fn identifier(&mut self) -> Result<ScalarExpr, ParseError> {
        let start = self.offset();
        let mut name = String::new();
        while matches!(
            self.chars.get(self.pos),
            Some((_, c)) if c.is_ascii_alphanumeric() || *c == '_'
        ) {
            name.push(self.bump().expect("identifier char present"));
        }
        match self.coords.index_of(&name) {
            Some(index) => Ok(ScalarExpr::coordinate(self.nvars(), index)
                .expect("declared coordinate index is in range")),
            None => Err(ParseError {
                position: start,
                kind: ParseErrorKind::UnknownIdentifier(name),
            }),
        }
    }
}
