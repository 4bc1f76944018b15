use thiserror::Error;

pub type Result<T> = std::result::Result<T, GmeError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GmeError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid dimensions: {0}")]
    InvalidDims(String),

    #[error("state has {got} amplitudes, dims require {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("total Hilbert dimension {0} exceeds the cap of {max}", max = crate::state::MAX_AMPLITUDES)]
    TooLarge(usize),

    #[error("state norm is {norm}, expected 1 within {tol:e}")]
    NotNormalized { norm: f64, tol: f64 },

    #[error("cannot normalize the zero vector")]
    ZeroVector,

    #[error("subsystem index {index} out of range 1..={n}")]
    SiteOutOfRange { index: usize, n: usize },

    #[error("matrix is {rows}x{cols}, subsystem {site} has dimension {dim}")]
    DimensionMismatch {
        site: usize,
        dim: usize,
        rows: usize,
        cols: usize,
    },

    #[error("matrix is not unitary (defect {0:e})")]
    NotUnitary(f64),

    #[error("not a permutation of 1..={0}")]
    InvalidPermutation(usize),

    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),

    #[error("reduced dimension {dim} exceeds the dense oracle cap of {cap}")]
    OracleCapExceeded { dim: usize, cap: usize },

    #[error("{measure} is undefined for {n} parties: {reason}")]
    Unsupported {
        measure: &'static str,
        n: usize,
        reason: &'static str,
    },

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("invalid trial configuration: {0}")]
    InvalidConfig(String),
}
