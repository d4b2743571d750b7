//! The exterior algebra of the algebroid with its wedge product, the
//! interior product, the covariant Lie derivative, the exterior derivative,
//! and executable verifiers for the identities relating them.

mod form;
mod ops;
mod verify;

pub use form::{increasing_tuples, DifferentialForm, FormError};
pub use ops::{ext_deriv, ext_deriv_coordinate, interior, lie_derivative};
pub use verify::{maurer_cartan_check, verify_calculus_identities, SampleBudget};
