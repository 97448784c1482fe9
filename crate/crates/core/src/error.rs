use thiserror::Error;

#[derive(Debug, Error)]
pub enum WorkbenchError {
    #[error("invalid operand: {0}")]
    InvalidOperand(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("singular system: {0}")]
    Singular(String),

    #[error("antisymmetry violation at basis pair ({i}, {j}): [e_i,e_j] + [e_j,e_i] = {residual:?}")]
    AntisymmetryViolation { i: usize, j: usize, residual: Vec<String> },

    #[error("jacobi violation at basis triple {triple:?}: residual {residual:?}")]
    JacobiViolation {
        triple: (usize, usize, usize),
        residual: Vec<String>,
    },

    #[error("cartan basis vectors {a} and {b} do not commute")]
    CartanNotAbelian { a: usize, b: usize },

    #[error("root validation failed: {0}")]
    RootValidation(String),

    #[error("invalid input: field `{field}`: {message}")]
    Spec { field: String, message: String },

    #[error("unknown built-in algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),

    #[error("arity mismatch: expected {expected} arguments, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("tensor is not supported on the cartan subalgebra: {0}")]
    NonCartanSupport(String),

    #[error("algebra `{0}` declares no root data")]
    MissingRootData(String),

    #[error("operation requires a complex-mode form")]
    RealModeInput,

    #[error("form variable count mismatch: {0} vs {1}")]
    FormModeMismatch(String, String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl WorkbenchError {
    pub(crate) fn spec(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Spec {
            field: field.into(),
            message: message.into(),
        }
    }
}
