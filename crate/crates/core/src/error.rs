use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("more than {cap} circuits")]
    CapExceeded { cap: usize },
    #[error("vertex pair ({0}, {1}) with the given side is not a 2-separation")]
    NotA2Separation(usize, usize),
    #[error("input exceeds desk scale: {0}")]
    ScaleExceeded(String),
    #[error("need at least {required} vertices in dimension {d}, got {n}")]
    DimensionTooSmall { n: usize, d: usize, required: usize },
    #[error("graph is not generically locally rigid")]
    NotLocallyRigid,
    #[error("configuration does not have full affine span")]
    DeficientSpan,
    #[error("input values are not pairwise distinct: {0}")]
    NonGenericInput(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
