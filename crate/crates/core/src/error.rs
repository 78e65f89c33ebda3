use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("no subspaces")]
    NoSubspaces,
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("grades {0} and {1} are not complementary in ambient {2}")]
    NotComplementary(usize, usize, usize),
    #[error("invalid index set {0:?} for ambient {1}")]
    InvalidIndices(Vec<usize>, usize),
    #[error("ambient {0} exceeds the supported maximum of 63")]
    AmbientTooLarge(usize),
    #[error("degenerate point: vectors dependent")]
    DegeneratePoint,
    #[error("degree {0} is below 2; squared ideals start in degree 2")]
    DegreeTooSmall(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("not in monomial case: k*s = {ks} exceeds ambient {ambient}")]
    NotMonomialCase { ks: usize, ambient: usize },
    #[error("enumeration guard exceeded: ambient {0} > {1}")]
    EnumerationGuard(usize, usize),
    #[error("invalid prime {0}: {1}")]
    InvalidPrime(u64, &'static str),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("internal inconsistency: terracini {terracini} != apolar {apolar}")]
    InternalInconsistency { terracini: usize, apolar: usize },
    #[error("unlucky prime suspected; rerun ({0})")]
    UnluckyPrime(String),
}

pub type Result<T> = std::result::Result<T, Error>;
