//! Exact polynomial arithmetic and the Gröbner-basis oracle used to check
//! heights, inclusions and descent steps.

pub mod field;
pub mod groebner;
pub mod minors;
pub mod monomial;
pub mod polynomial;
pub mod verify;

pub use field::{Field, PrimeField, Rationals};
pub use groebner::{
    groebner, groebner_basis, krull_dimension, normal_form, GroebnerError, ResourceBounds,
};
pub use minors::{expand_minor, CellRing, MinorError};
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use polynomial::{Poly, PolyRing};
pub use verify::{verify_step, CheckStatus, FieldSpec, VerificationReport};
