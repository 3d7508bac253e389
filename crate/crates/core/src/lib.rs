//! A-form and B-form representations of linear maps on `n x n` density matrices.
//!
//! An [`AForm`] is the `n^2 x n^2` matrix acting on row-vectorized density matrices,
//! `(rho_f)_{r's'} = sum_{rs} A_{r's';rs} (rho_i)_{rs}`. Its realignment
//! `B_{r'r;s's} = A_{r's';rs}` is the Hermitian dynamical matrix [`BForm`]. Expanding `A`
//! in a tensor basis `T_mu ⊗ T_nu*` gives the Hermitian [`CoefficientMatrix`], whose
//! spectral decomposition yields the canonical form `A = sum_a lambda_a C_a ⊗ C_a*`.
//! The map is completely positive exactly when every `lambda_a >= 0`, in which case
//! `E_a = sqrt(lambda_a) C_a` are Kraus operators.

pub mod analysis;
mod error;
pub mod forms;
pub mod linalg;
pub mod zoo;

pub use analysis::{analyze, choi_consistency, positivity_probe, AnalysisReport};
pub use error::{Error, Result};
pub use forms::{
    apply_a, apply_canonical, canonical_decompose, coefficient_matrix, cp_verdict, extract_kraus,
    kraus_to_a, realign_a_to_b, realign_b_to_a, standard_basis, AForm, BForm, BasisLabel,
    CanonicalDecomposition, ChannelOutput, CoefficientMatrix, CpClass, CpVerdict, KrausSet,
    OperatorBasis,
};
pub use linalg::{BlochVector, ComplexMatrix, DensityMatrix, EigenDecomposition};
pub use zoo::ChannelSpec;

pub use num_complex::Complex64;

/// Tolerance used by validity checks when the caller does not supply one.
pub const DEFAULT_TOL: f64 = 1e-9;
