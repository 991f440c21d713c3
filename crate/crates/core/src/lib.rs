pub mod coxeter;
pub mod linalg;
pub mod scalar;

pub use scalar::{FieldElement, FieldSpec, LaurentPoly, ScalarError};
