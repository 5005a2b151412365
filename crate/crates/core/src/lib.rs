pub mod char_class;
pub mod connection;
pub mod derivations;
pub mod error;
pub mod ideal;
pub mod lie;
pub mod linalg;
pub mod poisson;
pub mod poly;
pub mod scalar;
pub mod syntax;
pub mod tensor;

pub use error::{Error, Result};
pub use ideal::Ideal as GenericIdeal;
pub use poisson::PoissonStructure as GenericPoissonStructure;
pub use poly::{Monomial, MonomialOrder, VarContext};
pub use scalar::Scalar;
pub use syntax::{parse_form, parse_multivector, parse_polynomial};

pub type Rational = num_rational::BigRational;
pub type Polynomial = poly::Polynomial<Rational>;
pub type Ideal = ideal::Ideal<Rational>;
pub type Multivector = tensor::Multivector<Rational>;
pub type Form = tensor::Form<Rational>;
pub type PoissonStructure = poisson::PoissonStructure<Rational>;
pub type LieAlgebra = lie::LieAlgebra<Rational>;
pub type LieModule = lie::LieModule<Rational>;
pub type LieIdeal = char_class::LieIdeal<Rational>;
