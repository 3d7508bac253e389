use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix shape {rows}x{cols} does not match {expected}")]
    BadShape {
        rows: usize,
        cols: usize,
        expected: String,
    },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error(
        "matrix is not Hermitian: max |M - M^dagger| = {residual:e} exceeds tolerance {tol:e}"
    )]
    NotHermitian { residual: f64, tol: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("Bloch vector has length {norm} > 1")]
    OutsideBall { norm: f64 },

    #[error("operation requires dimension {expected}, got {actual}")]
    WrongDimension { expected: usize, actual: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error(
        "A-form violates hermiticity preservation A*(r's';rs) = A(s'r';sr): residual {residual:e} exceeds tolerance {tol:e}"
    )]
    NotHermiticityPreserving { residual: f64, tol: f64 },

    #[error(
        "A-form violates trace preservation sum_r' A(r'r';rs) = delta(rs): residual {residual:e} exceeds tolerance {tol:e}"
    )]
    NotTracePreserving { residual: f64, tol: f64 },

    #[error("basis {label} is not available for dimension {dim}")]
    UnsupportedCombination { label: &'static str, dim: usize },

    #[error("map is not completely positive: eigenvalue {min_eigenvalue} < -{tol:e}")]
    NotCompletelyPositive { min_eigenvalue: f64, tol: f64 },

    #[error("Kraus operators are incomplete: max |sum E^dagger E - I| = {residual:e} exceeds tolerance {tol:e}")]
    IncompleteKraus { residual: f64, tol: f64 },

    #[error("rotation axis has length {norm}, expected 1")]
    NotUnitAxis { norm: f64 },

    #[error("probability {p} outside [0, 1]")]
    ProbabilityRange { p: f64 },

    #[error("rank {rank} outside [1, {max}]")]
    RankRange { rank: usize, max: usize },
}
