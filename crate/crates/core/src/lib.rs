//! Symbolic exterior differential calculus on Lie algebroids over a single
//! coordinate chart.
//!
//! The crate provides:
//! - an exact rational-function kernel ([`expr`]),
//! - the Lie algebroid data model with executable axiom checks
//!   ([`algebroid`]),
//! - differential forms with the interior product, covariant Lie
//!   derivative, and exterior derivative, plus structure-equation and
//!   identity verifiers ([`calculus`]),
//! - interior differential systems with three mutually cross-checking
//!   involutivity decision procedures ([`ids`], [`eds`]).
//!
//! All arithmetic is exact (arbitrary-precision rationals); every verdict
//! is a decision on canonical forms, not a numeric heuristic.

pub mod algebroid;
pub mod calculus;
pub mod catalog;
pub mod eds;
pub mod expr;
pub mod ids;
pub mod linalg;
pub mod report;
pub mod sample;

pub use algebroid::{LieAlgebroid, Section};
pub use calculus::DifferentialForm;
pub use expr::{parse_expr, Coords, ScalarExpr};
pub use report::{CheckReport, Verdict, Witness};
