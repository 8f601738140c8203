use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{func}: argument must be nonzero")]
    ZeroArgument { func: &'static str },

    #[error("{func}: {z} lies on an excluded branch half-line")]
    ExcludedHalfLine { func: &'static str, z: Complex64 },

    #[error("{func}: {xi} is a branch point of the square root")]
    BranchPoint { func: &'static str, xi: Complex64 },

    #[error("saddle degenerates at {xi} (sinh phi = 0)")]
    DegenerateSaddle { xi: Complex64 },

    #[error("{func}: {z} outside {domain}")]
    OutsideDomain {
        func: &'static str,
        z: Complex64,
        domain: &'static str,
    },

    #[error("quadrature did not reach tolerance {target:e}; best pass difference {achieved:e}")]
    QuadratureStall { target: f64, achieved: f64 },

    #[error("no asymptotic prediction for regime {label}")]
    NoPrediction { label: &'static str },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
