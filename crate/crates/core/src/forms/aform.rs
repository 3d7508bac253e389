use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{bloch_components, hermitian_eigenvalues, ComplexMatrix, DensityMatrix};

fn square_root_dim(m: &ComplexMatrix) -> Result<usize> {
    let rows = m.rows();
    let n = (rows as f64).sqrt().round() as usize;
    if !m.is_square() || n * n != rows || n == 0 {
        return Err(Error::BadShape {
            rows,
            cols: m.cols(),
            expected: "an n^2 x n^2 matrix".into(),
        });
    }
    Ok(n)
}

/// Residuals of the two linear constraints every physical A-form satisfies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AFormCheck {
    /// `max |A*_{r's';rs} - A_{s'r';sr}|`
    pub hermiticity_residual: f64,
    /// `max |sum_r' A_{r'r';rs} - delta_rs|`
    pub trace_residual: f64,
    pub tol: f64,
}

impl AFormCheck {
    pub fn hermiticity_ok(&self) -> bool {
        self.hermiticity_residual <= self.tol
    }

    pub fn trace_ok(&self) -> bool {
        self.trace_residual <= self.tol
    }

    pub fn is_valid(&self) -> bool {
        self.hermiticity_ok() && self.trace_ok()
    }

    /// The first violated constraint as an error, hermiticity first.
    pub fn to_result(&self) -> Result<()> {
        if !self.hermiticity_ok() {
            return Err(Error::NotHermiticityPreserving {
                residual: self.hermiticity_residual,
                tol: self.tol,
            });
        }
        if !self.trace_ok() {
            return Err(Error::NotTracePreserving {
                residual: self.trace_residual,
                tol: self.tol,
            });
        }
        Ok(())
    }
}

/// `n^2 x n^2` matrix acting on row-vectorized `n x n` matrices.
///
/// Entry `A_{r's';rs}` lives at row `r' n + s'`, column `r n + s`.
#[derive(Debug, Clone, PartialEq)]
pub struct AForm {
    dim: usize,
    matrix: ComplexMatrix,
}

impl AForm {
    /// Wraps an `n^2 x n^2` matrix without checking the physical constraints.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dim = square_root_dim(&matrix)?;
        Ok(Self { dim, matrix })
    }

    /// Wraps and checks hermiticity and trace preservation.
    pub fn validated(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        let a = Self::new(matrix)?;
        a.validate(tol)?;
        Ok(a)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            dim: n,
            matrix: ComplexMatrix::identity(n * n),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `A_{r's';rs}`.
    pub fn entry(&self, r_out: usize, s_out: usize, r_in: usize, s_in: usize) -> Complex64 {
        let n = self.dim;
        self.matrix[(r_out * n + s_out, r_in * n + s_in)]
    }

    pub fn hermiticity_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0_f64;
        for rp in 0..n {
            for sp in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        let lhs = self.entry(rp, sp, r, s).conj();
                        let rhs = self.entry(sp, rp, s, r);
                        worst = worst.max((lhs - rhs).norm());
                    }
                }
            }
        }
        worst
    }

    pub fn trace_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0_f64;
        for r in 0..n {
            for s in 0..n {
                let sum: Complex64 = (0..n).map(|rp| self.entry(rp, rp, r, s)).sum();
                let delta = if r == s { 1.0 } else { 0.0 };
                worst = worst.max((sum - delta).norm());
            }
        }
        worst
    }

    pub fn check(&self, tol: f64) -> AFormCheck {
        AFormCheck {
            hermiticity_residual: self.hermiticity_residual(),
            trace_residual: self.trace_residual(),
            tol,
        }
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        self.check(tol).to_result()
    }

    /// Map composition: `self` applied after `first`.
    pub fn compose(&self, first: &AForm) -> Result<AForm> {
        if self.dim != first.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: first.dim,
            });
        }
        Ok(AForm {
            dim: self.dim,
            matrix: self.matrix.matmul(&first.matrix),
        })
    }

    /// Applies the map to an arbitrary `n x n` matrix.
    pub fn apply_matrix(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.rows() != self.dim || x.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: x.rows(),
            });
        }
        let out = self.matrix.matvec(&x.vectorize());
        ComplexMatrix::unvectorize(&out, self.dim)
    }
}

/// Realigned dynamical matrix, `B_{r'r;s's} = A_{r's';rs}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BForm {
    dim: usize,
    matrix: ComplexMatrix,
}

impl BForm {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dim = square_root_dim(&matrix)?;
        Ok(Self { dim, matrix })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.matrix.hermiticity_residual()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Descending spectrum.
    pub fn eigenvalues(&self, tol: f64) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.matrix, tol)
    }
}

/// Swaps the second row index with the first column index. The permutation is its own
/// inverse, so the same routine serves both directions.
fn realign(m: &ComplexMatrix, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n * n, n * n, |row, col| {
        let (i, j) = (row / n, row % n);
        let (k, l) = (col / n, col % n);
        m[(i * n + k, j * n + l)]
    })
}

pub fn realign_a_to_b(a: &AForm) -> BForm {
    BForm {
        dim: a.dim,
        matrix: realign(&a.matrix, a.dim),
    }
}

pub fn realign_b_to_a(b: &BForm) -> AForm {
    AForm {
        dim: b.dim,
        matrix: realign(&b.matrix, b.dim),
    }
}

/// Image of a state under a map. Maps that are not completely positive can produce
/// outputs with negative eigenvalues; those are reported here rather than rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelOutput {
    pub matrix: ComplexMatrix,
    /// Smallest eigenvalue of the Hermitian part of `matrix`.
    pub min_eigenvalue: f64,
}

impl ChannelOutput {
    pub(crate) fn from_matrix(matrix: ComplexMatrix) -> Self {
        let min_eigenvalue = hermitian_eigenvalues(&matrix.hermitian_part(), f64::INFINITY)
            .ok()
            .and_then(|ev| ev.last().copied())
            .unwrap_or(f64::NAN);
        Self {
            matrix,
            min_eigenvalue,
        }
    }

    pub fn is_positive(&self, tol: f64) -> bool {
        self.min_eigenvalue >= -tol
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Bloch components of a qubit output; may leave the unit ball for non-positive outputs.
    pub fn bloch_components(&self) -> Option<[f64; 3]> {
        (self.dim() == 2).then(|| bloch_components(&self.matrix))
    }

    pub fn into_density(self, tol: f64) -> Result<DensityMatrix> {
        DensityMatrix::new(self.matrix, tol)
    }
}

/// `rho_f = unvec(A vec(rho_i))`.
pub fn apply_a(a: &AForm, rho: &DensityMatrix) -> Result<ChannelOutput> {
    if a.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: rho.dim(),
        });
    }
    a.apply_matrix(rho.matrix()).map(ChannelOutput::from_matrix)
}
