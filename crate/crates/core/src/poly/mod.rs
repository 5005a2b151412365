//! Exact multivariate polynomials: the coordinate algebra everything else is
//! built on.

mod context;
mod monomial;
mod polynomial;

pub(crate) use context::is_identifier;
pub use context::VarContext;
pub use monomial::{Monomial, MonomialOrder};
pub use polynomial::Polynomial;


