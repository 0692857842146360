use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    InvalidPrime(u64),
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("parse error at `{token}`: {message}")]
    Parse { token: String, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("ideal is not Artinian within degree {0}")]
    NotArtinian(usize),
    #[error("degree bound {0} too small: {1}")]
    DegreeTooSmall(usize, String),
    #[error("dual space too small: need {needed}, have {available}")]
    PerpTooSmall { needed: usize, available: usize },
    #[error("genericity failure after {attempts} attempts: {stage}")]
    RetriesExhausted { attempts: usize, stage: String },
    #[error("tangent dimension did not stabilize by degree {0}")]
    NotStabilized(usize),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("linear form vanishes at a point of the configuration")]
    DegenerateLinearForm,
}
