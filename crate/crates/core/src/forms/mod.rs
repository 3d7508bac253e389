//! A-form, B-form, coefficient matrix and canonical decomposition, with the
//! conversions among them.

mod aform;
mod basis;
mod canonical;
mod coefficient;

pub use aform::{apply_a, realign_a_to_b, realign_b_to_a, AForm, AFormCheck, BForm, ChannelOutput};
pub use basis::{standard_basis, BasisLabel, OperatorBasis};
pub use canonical::{
    apply_canonical, canonical_decompose, cp_verdict, extract_kraus, kraus_to_a,
    CanonicalDecomposition, CpClass, CpVerdict, KrausSet,
};
pub use coefficient::{coefficient_matrix, coefficient_matrix_with_tol, CoefficientMatrix};
