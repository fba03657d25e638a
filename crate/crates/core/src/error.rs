use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("matrix exponential overflowed after {squarings} squarings")]
    ExpOverflow { squarings: u32 },

    #[error("matrix is singular to working precision")]
    Singular,

    #[error("spin label must be a positive multiple of 1/2 (got twice_value = {0})")]
    InvalidSpin(u32),

    #[error("mass must be positive and finite (got {0})")]
    InvalidMass(f64),

    #[error("rapidity {0} exceeds the cap of 30")]
    RapidityOverflow(f64),

    #[error("four-vector is not on the positive mass shell: {0}")]
    OffShell(String),

    #[error("spinor has zero norm")]
    ZeroSpinor,

    #[error("u and v are linearly dependent (|det| = {0:e})")]
    DegenerateBasis(f64),

    #[error("constraint system is rank deficient (rank {rank} of {expected})")]
    RankDeficient { rank: usize, expected: usize },

    #[error("spinor basis is not Hermitian-orthogonal (max |u†v| = {0:e}); the non-Hermitian case is not supported")]
    NonHermitianBasis(f64),

    #[error("operation requires spin 1/2, got spin {0}")]
    RequiresSpinHalf(String),

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
