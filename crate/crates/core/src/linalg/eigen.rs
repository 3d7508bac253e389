//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Each rotation first removes the phase of the pivot `M[p][q]` with a diagonal
//! unitary, then annihilates the now-real off-diagonal pair with a real plane
//! rotation. The accumulated product `V` satisfies `V^dagger M V = diag(lambda)`.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Sweep limit before [`Error::NoConvergence`] is reported.
pub const MAX_SWEEPS: usize = 100;

/// Converged once the off-diagonal Frobenius norm drops below this fraction of `||M||_F`.
pub const RELATIVE_OFF_DIAGONAL_TOL: f64 = 1e-12;

/// Spectrum of a Hermitian matrix together with its diagonalizing unitary.
///
/// `unitary` is the matrix `U` with `U M U^dagger = diag(eigenvalues)`. Its row `k` is
/// the complex conjugate of the column eigenvector belonging to `eigenvalues[k]`, so that
/// `M_{ij} = sum_k lambda_k conj(U_{ki}) U_{kj}`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub unitary: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Column eigenvector `v_k` with `M v_k = lambda_k v_k`.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.unitary.row(k).iter().map(|z| z.conj()).collect()
    }

    /// `U^dagger diag(lambda) U`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.len();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| self.unitary[(k, i)].conj() * self.eigenvalues[k] * self.unitary[(k, j)])
                .sum()
        })
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

/// Diagonalizes a Hermitian matrix. Eigenvalues come back in descending order; ties keep
/// the order in which the solver produced them.
pub fn hermitian_eigendecompose(m: &ComplexMatrix, tol: f64) -> Result<EigenDecomposition> {
    if !m.is_square() {
        return Err(Error::BadShape {
            rows: m.rows(),
            cols: m.cols(),
            expected: "a square matrix".into(),
        });
    }
    let residual = m.hermiticity_residual();
    if residual > tol {
        return Err(Error::NotHermitian { residual, tol });
    }

    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let threshold = RELATIVE_OFF_DIAGONAL_TOL * scale;

    let mut converged = scale == 0.0;
    let mut sweeps = 0;
    while !converged {
        if off_diagonal_norm(&a) < threshold {
            converged = true;
            break;
        }
        if sweeps == MAX_SWEEPS {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps,
            off_norm: off_diagonal_norm(&a),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable: ties keep solver order
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));

    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let unitary = ComplexMatrix::from_fn(n, n, |row, col| v[(col, order[row])].conj());
    Ok(EigenDecomposition {
        eigenvalues,
        unitary,
    })
}

/// Eigenvalues only, descending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    hermitian_eigendecompose(m, tol).map(|d| d.eigenvalues)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let magnitude = apq.norm();
    if magnitude == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * magnitude);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let phase = (apq / magnitude).conj();

    // W restricted to the (p, q) plane: [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
    let w_pp = Complex64::new(c, 0.0);
    let w_pq = Complex64::new(s, 0.0);
    let w_qp = phase * -s;
    let w_qq = phase * c;

    let n = a.rows();
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * w_pp + aiq * w_qp;
        a[(i, q)] = aip * w_pq + aiq * w_qq;
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * w_pp + viq * w_qp;
        v[(i, q)] = vip * w_pq + viq * w_qq;
    }
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = w_pp.conj() * apj + w_qp.conj() * aqj;
        a[(q, j)] = w_pq.conj() * apj + w_qq.conj() * aqj;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(app - t * magnitude, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * magnitude, 0.0);
}
