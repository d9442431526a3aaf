use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("shape mismatch: expected {expected}, got {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("index {index} out of range 0..={genus}")]
    IndexOutOfRange { index: i64, genus: u32 },

    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: u32, right: u32 },

    #[error("genus {genus} not supported here (requires g >= {min})")]
    UnsupportedGenus { genus: u32, min: u32 },

    #[error("coefficient {name} must be nonnegative, got {value}")]
    NegativeCoefficient { name: &'static str, value: String },

    #[error("cone is not pointed (lineality space has dimension {lineality})")]
    NotPointed { lineality: usize },

    #[error("ambient dimension {dim} exceeds the configured limit {limit}")]
    DimensionLimitExceeded { dim: usize, limit: usize },

    #[error("divisor is not a member of the cone (violates {violated})")]
    NotMember { violated: String },

    #[error("certificate failed at genus {genus}: {}", failed.join(", "))]
    CertificateFailure { genus: u32, failed: Vec<String> },

    #[error("divisor belongs to the {found} model, expected {expected}")]
    ModelMismatch { expected: String, found: String },

    #[error("no pullback to M_g-bar is modelled for the {0} compactification")]
    NoPullback(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
