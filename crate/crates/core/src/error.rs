use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus below 2^32")]
    NotPrime(u64),

    #[error("dimension mismatch in {op}: {detail}")]
    DimensionMismatch { op: &'static str, detail: String },

    #[error("residue {value} is out of range for F_{p}")]
    ResidueOutOfRange { value: u64, p: u64 },

    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u64, right: u64 },

    #[error("invalid algebra `{name}`: {reason}")]
    InvalidAlgebra { name: String, reason: String },

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("modules live over different algebras ({0})")]
    AlgebraMismatch(String),

    #[error("variance mismatch: {0}")]
    VarianceMismatch(String),

    #[error("natural transformations do not compose: {0}")]
    CompositionMismatch(String),

    #[error("nonzero defect: {0}")]
    DefectNonzero(String),

    #[error("Tr_* is undefined here: {0}")]
    TrStarUndefined(String),

    #[error("unresolved name `{0}`")]
    UnresolvedName(String),

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn dims(op: &'static str, detail: impl Into<String>) -> Self {
        Error::DimensionMismatch {
            op,
            detail: detail.into(),
        }
    }
}
