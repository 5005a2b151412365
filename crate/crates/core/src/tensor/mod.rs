//! Antisymmetric tensor fields with polynomial coefficients.

mod graded;
mod ops;
mod schouten;
mod subset;

pub use graded::{Contravariant, Covariant, Form, Graded, Multivector, Variance};
pub use ops::{
    apply_vector, contract_covector, exterior_derivative, interior_product, lie_derivative,
    pairing, vector_bracket,
};
pub use schouten::schouten_bracket;
pub use subset::IndexSubset;
