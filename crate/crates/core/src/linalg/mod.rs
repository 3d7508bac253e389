//! Dense complex linear algebra and qubit state types.

mod eigen;
mod matrix;
mod state;

pub use eigen::{
    hermitian_eigendecompose, hermitian_eigenvalues, EigenDecomposition, MAX_SWEEPS,
    RELATIVE_OFF_DIAGONAL_TOL,
};
pub use matrix::{pauli_matrices, ComplexMatrix};
pub(crate) use state::norm3;
pub use state::{
    bloch, bloch_components, bloch_to_density, density_to_bloch, row_unvectorize, row_vectorize,
    BlochVector, DensityMatrix,
};
