use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid Lie type {family}{rank}: {reason}")]
    InvalidType {
        family: char,
        rank: usize,
        reason: &'static str,
    },

    #[error("cannot parse Dynkin label {0:?}")]
    BadLabel(String),

    #[error("not a finite-type Cartan matrix: {0}")]
    NotFiniteType(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("I = Δ does not define a proper parabolic (the flag variety is a point)")]
    FullSetNotParabolic,

    #[error("weight is not integral")]
    NotIntegral,

    #[error("weight has negative coordinate {value} at Levi node {index}")]
    NotDominantForLevi { index: usize, value: String },

    #[error("Kähler class coefficient {value} at node {index} is not positive")]
    NotKahler { index: usize, value: String },

    #[error("node {index} is not in Δ \\ I")]
    NotComplementary { index: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("truncation {requested} exceeds the {available} materialized modes")]
    TruncationBeyondSpectrum { requested: usize, available: usize },

    #[error("profile d^-{s} with real codimension {codim} is not square integrable (needs s < {half})", half = *codim as f64 / 2.0)]
    NotL2 { s: f64, codim: usize },

    #[error("invalid spectral input: {0}")]
    InvalidSpectral(String),
}

pub type Result<T> = std::result::Result<T, Error>;
