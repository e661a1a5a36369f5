use thiserror::Error;

#[derive(Debug, Error)]
pub enum HypError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(u8, u8),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid isometry: {0}")]
    InvalidIsometry(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("orbit capacity exceeded: more than {cap} elements below radius {radius}")]
    Capacity { cap: usize, radius: f64 },
    #[error("insufficient orbit data: need at least {required} elements, found {found}")]
    DataInsufficiency { required: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, HypError>;
