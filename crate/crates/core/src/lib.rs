//! Generalized power series with rational exponents, windowed truncation,
//! multivalued powers and composition, symmetric functions at real
//! partitions, and pseudointegers.

pub mod calculus;
pub mod coefficient;
pub mod compose;
pub mod error;
pub mod nested;
pub mod power;
pub mod profinite;
pub mod scalar;
pub mod series;
pub mod symmetric;

pub use coefficient::Coefficient;
pub use error::{Error, Result};
pub use scalar::{BranchIndex, Coeff, Exponent};
pub use series::{Degree, ExponentMonoid, Orientation, Series};
