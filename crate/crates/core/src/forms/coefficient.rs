use num_complex::Complex64;

use super::aform::AForm;
use super::basis::OperatorBasis;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigendecompose, ComplexMatrix, EigenDecomposition};
use crate::DEFAULT_TOL;

/// Hermitian matrix of coefficients `a_{mu nu}` in `A = sum a_{mu nu} T_mu ⊗ T_nu*`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMatrix {
    basis: OperatorBasis,
    matrix: ComplexMatrix,
}

impl CoefficientMatrix {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &OperatorBasis {
        &self.basis
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Rebuilds `sum_{mu nu} a_{mu nu} T_mu ⊗ T_nu*`.
    pub fn expand(&self) -> ComplexMatrix {
        let n = self.dim();
        let t = self.basis.elements();
        let mut out = ComplexMatrix::zeros(n * n, n * n);
        for (mu, t_mu) in t.iter().enumerate() {
            for (nu, t_nu) in t.iter().enumerate() {
                let a = self.matrix[(mu, nu)];
                if a.norm() == 0.0 {
                    continue;
                }
                let term = t_mu.kron(&t_nu.conj()).scale(a);
                out = &out + &term;
            }
        }
        out
    }

    pub fn eigendecompose(&self, tol: f64) -> Result<EigenDecomposition> {
        hermitian_eigendecompose(&self.matrix, tol)
    }
}

/// `a_{mu nu} = Tr[A (T_mu^dagger ⊗ T_nu^T)]` using [`DEFAULT_TOL`] for the
/// hermiticity-preservation precondition.
pub fn coefficient_matrix(a: &AForm, basis: &OperatorBasis) -> Result<CoefficientMatrix> {
    coefficient_matrix_with_tol(a, basis, DEFAULT_TOL)
}

pub fn coefficient_matrix_with_tol(
    a: &AForm,
    basis: &OperatorBasis,
    tol: f64,
) -> Result<CoefficientMatrix> {
    let n = a.dim();
    if basis.dim() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: basis.dim(),
        });
    }
    let residual = a.hermiticity_residual();
    if residual > tol {
        return Err(Error::NotHermiticityPreserving { residual, tol });
    }

    // Tr[A (X ⊗ Y)] with X = T_mu^dagger, Y = T_nu^T reduces to
    // sum A_{r's';rs} conj(T_mu)_{r'r} (T_nu)_{s's}.
    let t = basis.elements();
    let m = t.len();
    let matrix = ComplexMatrix::from_fn(m, m, |mu, nu| {
        let mut sum = Complex64::new(0.0, 0.0);
        for rp in 0..n {
            for r in 0..n {
                let x = t[mu][(rp, r)].conj();
                if x.norm() == 0.0 {
                    continue;
                }
                for sp in 0..n {
                    for s in 0..n {
                        sum += a.entry(rp, sp, r, s) * x * t[nu][(sp, s)];
                    }
                }
            }
        }
        sum
    });
    Ok(CoefficientMatrix {
        basis: basis.clone(),
        matrix,
    })
}
