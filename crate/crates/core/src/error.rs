use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the ambient subspace")]
    NotContained,
    #[error("{0} is not a prime below 2^32")]
    InvalidModulus(u64),
    #[error("cone has no rays")]
    NoRays,
    #[error("ray {0} is zero")]
    ZeroRay(usize),
    #[error("ray {index} = {ray:?} is not primitive")]
    NotPrimitive { index: usize, ray: Vec<i64> },
    #[error("rays {0} and {1} coincide")]
    DuplicateRay(usize, usize),
    #[error("ray {0} is a positive combination of the other rays")]
    RedundantRay(usize),
    #[error("cone is not pointed")]
    NotPointed,
    #[error("cone is not full-dimensional")]
    NotFullDimensional,
    #[error("faces {0} and {1} are not incident")]
    NotIncident(usize, usize),
    #[error("face {0} is not two-dimensional")]
    NotTwoDimensional(usize),
    #[error("point {0:?} is not in the set")]
    NotInSet(Vec<i64>),
    #[error("point set is not monoid-like: {0}")]
    NotMonoidLike(String),
    #[error("Harrison level must be at least 2, got {0}")]
    LevelTooLow(usize),
    #[error("Harrison level {requested} exceeds the configured maximum {max}")]
    LevelExceeded { requested: usize, max: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("the relation-lattice path needs characteristic 0")]
    FieldNotSupported,
    #[error("cross-check mismatch: {0}")]
    CrossCheck(String),
    #[error("integer overflow converting {0}")]
    Overflow(String),
    #[error("incompatible computation paths: {0}")]
    IncompatiblePath(String),
}
