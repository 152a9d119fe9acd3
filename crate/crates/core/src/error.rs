use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("gram matrix is not symmetric")]
    NotSymmetric,

    #[error("bilinear form is degenerate")]
    Degenerate,

    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),

    #[error("subspace is not an ideal")]
    NotIdeal,

    #[error("projection is not a Lie algebra homomorphism")]
    NotHomomorphism,

    #[error("matrix is not an automorphism")]
    NotAutomorphism,

    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),

    #[error("grid budget of {budget} determinant evaluations exhausted (grid has {grid} points)")]
    BudgetExceeded { budget: u64, grid: u128 },

    #[error("factorization does not reassemble to the input matrix")]
    Reassembly,

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
