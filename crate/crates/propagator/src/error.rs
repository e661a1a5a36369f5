use thiserror::Error;

#[derive(Debug, Error)]
pub enum PropError {
    #[error("time must be nonzero")]
    ZeroTime,
    #[error("quadrature failed to reach 1e-8: achieved {achieved:.3e}")]
    QuadratureFailure { achieved: f64 },
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    #[error("insufficient data: {0}")]
    DataInsufficiency(String),
    #[error(transparent)]
    Hyperbolic(#[from] trapwave_hyperbolic::HypError),
}

pub type Result<T> = std::result::Result<T, PropError>;
