//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {0} exceeds the supported cap of {1}")]
    FieldTooLarge(u64, u64),
    #[error("no irreducible modulus of degree {0} found (internal error)")]
    NoIrreducible(usize),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("element index {0} out of range for a field of order {1}")]
    ElementOutOfRange(u64, u64),

    #[error("gaussian binomial subspace dimension {d} out of range 0..={m}")]
    BinomialRange { m: i64, d: i64 },
    #[error("vector dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("design has no blocks")]
    EmptyDesign,
    #[error("block {block} contains point {point} outside 0..{v}")]
    PointOutOfRange { block: usize, point: usize, v: usize },
    #[error("block {block} repeats a point")]
    DuplicatePoint { block: usize },
    #[error("block {block} has size {got}, expected {expected}")]
    NonUniformBlockSize { block: usize, expected: usize, got: usize },
    #[error("point {point} lies in {got} blocks, expected {expected}")]
    NonUniformReplication { point: usize, expected: usize, got: usize },
    #[error("pair ({}, {}) is covered by {got} blocks, expected {expected}", .pair.0, .pair.1)]
    NonUniformPairCoverage { pair: (usize, usize), expected: usize, got: usize },
    #[error("parameters violate {relation}")]
    ParameterRelation { relation: String },
    #[error("design is not resolvable")]
    NotResolvable,
    #[error("blocks {} and {} are nonparallel but meet in {got} points, expected {expected}", .pair.0, .pair.1)]
    NonConstantIntersection { pair: (usize, usize), expected: usize, got: usize },
    #[error("point {point} lies on block {block}")]
    PointOnBlock { point: usize, block: usize },
    #[error("matrix is not Hadamard: H·Hᵗ ≠ n·I at ({0}, {1})")]
    NotHadamard(usize, usize),
    #[error("Hadamard order {0} unsupported (need n = 2 or n ≡ 0 mod 4, n ≤ 64)")]
    BadHadamardOrder(usize),

    #[error("no MUB construction for dimension {0} (even prime powers above 2 are excluded)")]
    UnsupportedMubDimension(u64),
    #[error("expected {expected} bases of dimension {dim}, got {got}")]
    WrongBasisCount { expected: usize, got: usize, dim: usize },

    #[error("resolution class 0 must consist of the vertical lines")]
    MissingVerticalClass,
    #[error("expected {expected} collision functions, got {got}")]
    WrongFunctionCount { expected: usize, got: usize },
    #[error("functions {} and {} have {got} collisions, expected exactly 1", .pair.0, .pair.1)]
    CollisionCount { pair: (usize, usize), got: usize },

    #[error("realization check failed for blocks {} and {}: |⟨B|C⟩ − {expected}| = {deviation:.3e}", .pair.0, .pair.1)]
    AngleConstraint { pair: (usize, usize), expected: f64, deviation: f64 },
    #[error("basis is not orthonormal: |⟨ψ_{}|ψ_{}⟩ − δ| = {deviation:.3e}", .pair.0, .pair.1)]
    NotOrthonormal { pair: (usize, usize), deviation: f64 },
    #[error("support pattern violated at basis vector {index}, block {block}: |⟨ψ|B⟩| = {value:.3e}")]
    SupportPattern { index: usize, block: usize, value: f64 },

    #[error("class index {0} out of range (design has {1} parallel classes)")]
    ClassOutOfRange(usize, usize),
    #[error("king model requires {0}")]
    ModelMismatch(String),
    #[error("measurement probabilities sum to {0}, not 1")]
    ProbabilityLeak(f64),
    #[error("post-measurement state matches no block vector")]
    UnmatchedPostState,

    #[error("invalid JSON artifact: {0}")]
    BadArtifact(String),
}
