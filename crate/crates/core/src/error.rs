use num_rational::BigRational;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension must satisfy m >= 3, got {0}")]
    InvalidDimension(u32),

    #[error("lattice vector has {found} coordinates, expected m - 1 = {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("resource limit exceeded: more than {limit} lattice points enumerated")]
    ResourceLimit { limit: u64 },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("spectrum truncated: need eigenvalues up to {required}, complete only up to {complete_up_to}")]
    SpectrumTruncated {
        required: Box<BigRational>,
        complete_up_to: Box<BigRational>,
    },

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid cone descriptor: {0}")]
    InvalidCone(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("internal inconsistency in obstruction dimension: {0}")]
    Inconsistent(String),

    #[error("malformed file: {0}")]
    Format(String),
}

impl Error {
    pub fn truncated(required: &BigRational, complete_up_to: &BigRational) -> Self {
        Error::SpectrumTruncated {
            required: Box::new(required.clone()),
            complete_up_to: Box::new(complete_up_to.clone()),
        }
    }
}
