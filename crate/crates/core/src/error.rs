use thiserror::Error;

/// Errors raised by the combinatorial and algebraic routines in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("empty polynomial")]
    EmptyPolynomial,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("permutation {perm} is not in S_{n}")]
    NotInSymmetricGroup { perm: String, n: usize },

    #[error("not Schubert-positive: coefficient {coeff} extracted for S[{perm}]")]
    NotSchubertPositive { perm: String, coeff: String },

    #[error("polynomial is not homogeneous (degrees {0} and {1})")]
    NotHomogeneous(usize, usize),

    #[error("no descent: the identity has no maximal transition")]
    NoDescent,

    #[error("{0} is not Grassmannian")]
    NotGrassmannian(String),

    #[error("vanishing factor: e_{i}^{k} = 0 because {i} > {k}")]
    VanishingFactor { i: usize, k: usize },

    #[error("n = {n} exceeds the configured bound {bound} (set SCHUBERT_MAX_N to raise it)")]
    BoundExceeded { n: usize, bound: usize },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// An invariant that the mathematics guarantees was violated. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
