use crate::typea::Weight;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("rank must be at least 1")]
    InvalidRank,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("node {node} out of range for rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },
    #[error("{what} must be at least 1, got {value}")]
    NonPositive { what: &'static str, value: i64 },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("evaluation points must be pairwise distinct and match the number of factors")]
    BadPoints,
    #[error("cannot generate a submodule from the zero vector")]
    ZeroVector,
    #[error("vector is not homogeneous")]
    Inhomogeneous,
    #[error("vector is not cyclic: it generates {generated} of {dim} dimensions")]
    NotCyclic { generated: usize, dim: usize },
    #[error("subspace is not stable under the action")]
    NotStable,
    #[error("weight {lam} is not divisible by the level {ell}")]
    NotRectangular { ell: u32, lam: Weight },
    #[error("ambient dimension {dim} exceeds the configured cap {cap}")]
    ResourceCap { dim: usize, cap: usize },
    #[error("cache: {0}")]
    Cache(String),
}
