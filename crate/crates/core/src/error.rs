use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polyhedron is not full-dimensional")]
    LowDimensional,
    #[error("polyhedron is empty")]
    Empty,
    #[error("support is unbounded")]
    Unbounded,
    #[error("cone generators are linearly dependent")]
    DegenerateCone,
    #[error("direction {0:?} is orthogonal to a cone generator")]
    DirectionNotGeneric(Vec<String>),
    #[error("pole: linear form {0:?} vanishes at the evaluation point")]
    PoleAt(Vec<String>),
    #[error("not a rational literal: {0:?}")]
    NonRational(String),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("unknown gallery scene {0:?}")]
    UnknownScene(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Schema { .. } => 3,
            Error::NonRational(_) => 4,
            Error::DimensionMismatch { .. } => 5,
            Error::Unbounded => 6,
            Error::PoleAt(_) => 7,
            Error::Io(_) => 8,
            Error::UnknownScene(_) => 9,
            Error::Precondition(_) => 10,
            Error::LowDimensional => 11,
            Error::Empty => 12,
            Error::DegenerateCone => 13,
            Error::DirectionNotGeneric(_) => 14,
        }
    }

    /// Short machine-readable error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::LowDimensional => "low_dimensional",
            Error::Empty => "empty",
            Error::Unbounded => "unbounded",
            Error::DegenerateCone => "degenerate_cone",
            Error::DirectionNotGeneric(_) => "direction_not_generic",
            Error::PoleAt(_) => "pole",
            Error::NonRational(_) => "non_rational",
            Error::Schema { .. } => "schema",
            Error::UnknownScene(_) => "unknown_scene",
            Error::Precondition(_) => "precondition",
            Error::Io(_) => "io",
        }
    }

    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}
