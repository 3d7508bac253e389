use num_complex::Complex64;

use super::eigen::hermitian_eigenvalues;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::DEFAULT_TOL;

/// Real qubit state parameters `(p1, p2, p3)` inside the closed unit ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector([f64; 3]);

impl BlochVector {
    pub fn new(p: [f64; 3], tol: f64) -> Result<Self> {
        let norm = norm3(p);
        if !norm.is_finite() || norm > 1.0 + tol {
            return Err(Error::OutsideBall { norm });
        }
        Ok(Self(p))
    }

    pub fn origin() -> Self {
        Self([0.0; 3])
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    pub fn norm(&self) -> f64 {
        norm3(self.0)
    }

    pub fn max_abs_diff(&self, other: &BlochVector) -> f64 {
        (0..3)
            .map(|k| (self.0[k] - other.0[k]).abs())
            .fold(0.0, f64::max)
    }
}

pub(crate) fn norm3(p: [f64; 3]) -> f64 {
    (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
}

/// Hermitian, unit-trace, positive semidefinite `n x n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates hermiticity, unit trace and positivity, each within `tol`.
    pub fn new(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::BadShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected: "a non-empty square matrix".into(),
            });
        }
        let herm = matrix.hermiticity_residual();
        if herm > tol {
            return Err(Error::InvalidState(format!(
                "not Hermitian (residual {herm:e})"
            )));
        }
        let trace = matrix.trace();
        if (trace - Complex64::new(1.0, 0.0)).norm() > tol {
            return Err(Error::InvalidState(format!(
                "trace is {} + {}i, expected 1",
                trace.re, trace.im
            )));
        }
        let min = hermitian_eigenvalues(&matrix, tol)?
            .last()
            .copied()
            .unwrap_or(0.0);
        if min < -tol {
            return Err(Error::InvalidState(format!(
                "not positive semidefinite (eigenvalue {min})"
            )));
        }
        Ok(Self { matrix })
    }

    /// Pure state `|psi><psi|` for a normalized (or normalizable) vector.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidState(
                "zero or non-finite state vector".into(),
            ));
        }
        let unit: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Ok(Self {
            matrix: ComplexMatrix::outer(&unit, &unit),
        })
    }

    pub fn maximally_mixed(n: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(n).scale_real(1.0 / n as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Row-major column `(rho_00, rho_01, ..., rho_10, ...)`.
    pub fn row_vectorize(&self) -> Vec<Complex64> {
        self.matrix.vectorize()
    }

    pub fn from_bloch(p: &BlochVector) -> Self {
        bloch_to_density(p)
    }

    pub fn to_bloch(&self) -> Result<BlochVector> {
        density_to_bloch(self)
    }
}

/// `rho = (I + p . sigma) / 2`.
pub fn bloch_to_density(p: &BlochVector) -> DensityMatrix {
    let [p1, p2, p3] = p.0;
    let c = Complex64::new;
    let matrix = ComplexMatrix::from_vec(
        2,
        2,
        vec![
            c(0.5 * (1.0 + p3), 0.0),
            c(0.5 * p1, -0.5 * p2),
            c(0.5 * p1, 0.5 * p2),
            c(0.5 * (1.0 - p3), 0.0),
        ],
    )
    .expect("finite by construction");
    DensityMatrix { matrix }
}

/// Inverse of [`bloch_to_density`]; only defined for qubits.
pub fn density_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            actual: rho.dim(),
        });
    }
    Ok(BlochVector(bloch_components(&rho.matrix)))
}

/// Bloch components `Tr[rho sigma_k]` of any 2x2 matrix, without validation.
pub fn bloch_components(m: &ComplexMatrix) -> [f64; 3] {
    let r01 = m[(0, 1)];
    let r10 = m[(1, 0)];
    [(r01 + r10).re, (r10 - r01).im, (m[(0, 0)] - m[(1, 1)]).re]
}

/// Row vectorization of a density matrix.
pub fn row_vectorize(rho: &DensityMatrix) -> Vec<Complex64> {
    rho.row_vectorize()
}

/// Inverse of [`row_vectorize`] as a raw matrix (the result need not be a state).
pub fn row_unvectorize(v: &[Complex64], n: usize) -> Result<ComplexMatrix> {
    ComplexMatrix::unvectorize(v, n)
}

/// Convenience for tests and examples: Bloch vector with default tolerance.
pub fn bloch(p1: f64, p2: f64, p3: f64) -> Result<BlochVector> {
    BlochVector::new([p1, p2, p3], DEFAULT_TOL)
}
