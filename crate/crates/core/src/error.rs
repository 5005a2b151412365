use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),

    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),

    #[error("operands live in different variable contexts")]
    ContextMismatch,

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("expected grade {expected}, got grade {got}")]
    WrongGrade { expected: usize, got: usize },

    #[error("cannot contract a grade-{field} multivector into a grade-{form} form")]
    GradeDeficit { field: usize, form: usize },

    #[error("bivector fails the Jacobi identity: [π,π] = {defect}")]
    NotPoisson { defect: String },

    #[error("ideal is not an integral: {0}")]
    NotIntegral(String),

    #[error("point is not on the leaf: generator {generator} evaluates to {value}")]
    PointNotOnLeaf { generator: String, value: String },

    #[error("form is not conormal: pairing with {field} gives {pairing} outside the ideal")]
    NotConormal { field: String, pairing: String },

    #[error("base point required for this query")]
    MissingBasePoint,

    #[error("structure constants are not a Lie algebra: {0}")]
    NotLieAlgebra(String),

    #[error("action is not a Lie module: {0}")]
    NotLieModule(String),

    #[error("subspace is not an ideal: [{ambient}, {element}] leaves it")]
    NotAnIdeal { ambient: String, element: String },

    #[error("basis vectors are linearly dependent")]
    DependentBasis,

    #[error("matrix is not a projection onto the ideal: {0}")]
    NotProjection(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
