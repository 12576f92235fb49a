use std::fmt;

/// Error type for the whole crate. Arithmetic overflow is always reported,
/// never silently wrapped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// 64-bit overflow in the named operation.
    Overflow(&'static str),
    DimensionMismatch {
        expected: usize,
        got: usize,
    },
    EmptyVertexSet,
    /// A map matrix whose determinant is not +-1.
    NotUnimodular(i64),
    SingularMatrix,
    NotFullDimensional {
        dim: usize,
        rank: usize,
    },
    NotASimplex {
        vertices: usize,
        dim: usize,
    },
    /// Point counts that no integer delta-vector can produce.
    InconsistentCounts(String),
    BadGroupParams(String),
    /// classify() refuses polytopes outside the catalog's volume range.
    VolumeExceedsFour {
        volume: i64,
    },
    /// A volume <= 4 polytope matched no catalog family. This would
    /// falsify the classification theorem, so it is loud and fatal.
    NoCatalogMatch {
        volume: i64,
        dim: usize,
    },
    BadInput(String),
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Overflow(op) => write!(f, "integer overflow in {op}"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::EmptyVertexSet => write!(f, "empty vertex set"),
            Error::NotUnimodular(det) => {
                write!(f, "matrix is not unimodular (det = {det})")
            }
            Error::SingularMatrix => write!(f, "singular matrix"),
            Error::NotFullDimensional { dim, rank } => {
                write!(f, "polytope is not full-dimensional (ambient {dim}, affine rank {rank})")
            }
            Error::NotASimplex { vertices, dim } => {
                write!(f, "expected a simplex: {vertices} vertices in dimension {dim}")
            }
            Error::InconsistentCounts(msg) => write!(f, "inconsistent point counts: {msg}"),
            Error::BadGroupParams(msg) => write!(f, "invalid group parameters: {msg}"),
            Error::VolumeExceedsFour { volume } => {
                write!(f, "normalized volume {volume} exceeds 4; outside the catalog")
            }
            Error::NoCatalogMatch { volume, dim } => write!(
                f,
                "no catalog match for a volume-{volume} polytope in dimension {dim}; \
                 this contradicts the classification"
            ),
            Error::BadInput(msg) => write!(f, "bad input: {msg}"),
            Error::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
