//! Exact linear algebra over prime fields of odd characteristic.

mod echelon;
mod field;
mod matrix;
pub mod sparse;

pub use echelon::Echelon;
pub use field::{FieldElement, PrimeField};
pub use matrix::MatrixFp;
pub use sparse::SparseVec;
