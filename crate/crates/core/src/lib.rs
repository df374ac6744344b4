//! Exact constructions for 3-dimensional quadratic AS-regular algebras:
//! defining relations from geometric data, and decision procedures for
//! graded isomorphism and graded Morita equivalence.

pub mod descriptor;
pub mod ec;
pub mod error;
pub mod field;
pub mod hesse;
pub mod oracle;
pub mod plinalg;
pub mod qalg;
pub mod tables;

pub use descriptor::AlgebraDescriptor;
pub use error::{Error, Result};
pub use field::{FieldElem, Rational};
pub use plinalg::{Mat3, ProjPoint, Tensor2};
