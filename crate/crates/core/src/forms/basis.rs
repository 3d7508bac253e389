use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{pauli_matrices, ComplexMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    /// `{sigma_0, sigma_1, sigma_2, sigma_3} / sqrt(2)`; qubits only.
    PauliOverSqrt2,
    /// Matrix units `E_jk` ordered by `j * n + k`.
    MatrixUnits,
}

impl BasisLabel {
    /// Short name used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            BasisLabel::PauliOverSqrt2 => "pauli",
            BasisLabel::MatrixUnits => "units",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "pauli" => Some(BasisLabel::PauliOverSqrt2),
            "units" => Some(BasisLabel::MatrixUnits),
            _ => None,
        }
    }

    /// Pauli for qubits, matrix units otherwise.
    pub fn default_for(dim: usize) -> Self {
        if dim == 2 {
            BasisLabel::PauliOverSqrt2
        } else {
            BasisLabel::MatrixUnits
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `n^2` trace-orthonormal `n x n` matrices `T_mu`, `Tr[T_mu^dagger T_nu] = delta_{mu nu}`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorBasis {
    dim: usize,
    label: BasisLabel,
    elements: Vec<ComplexMatrix>,
}

impl OperatorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> BasisLabel {
        self.label
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `max |Tr[T_mu^dagger T_nu] - delta_{mu nu}|`.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for (mu, t_mu) in self.elements.iter().enumerate() {
            for (nu, t_nu) in self.elements.iter().enumerate() {
                let delta = if mu == nu { 1.0 } else { 0.0 };
                worst = worst.max((t_mu.hs_inner(t_nu) - delta).norm());
            }
        }
        worst
    }
}

pub fn standard_basis(n: usize, label: BasisLabel) -> Result<OperatorBasis> {
    if n < 2 {
        return Err(Error::UnsupportedCombination {
            label: label.name(),
            dim: n,
        });
    }
    let elements = match label {
        BasisLabel::PauliOverSqrt2 => {
            if n != 2 {
                return Err(Error::UnsupportedCombination {
                    label: label.name(),
                    dim: n,
                });
            }
            let s = std::f64::consts::FRAC_1_SQRT_2;
            pauli_matrices().iter().map(|p| p.scale_real(s)).collect()
        }
        BasisLabel::MatrixUnits => (0..n * n)
            .map(|mu| {
                let (j, k) = (mu / n, mu % n);
                ComplexMatrix::from_fn(n, n, |a, b| {
                    if a == j && b == k {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
            })
            .collect(),
    };
    Ok(OperatorBasis {
        dim: n,
        label,
        elements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_basis_is_orthonormal() {
        let b = standard_basis(2, BasisLabel::PauliOverSqrt2).unwrap();
        assert_eq!(b.len(), 4);
        assert!(b.orthonormality_residual() < 1e-15);
        let id = ComplexMatrix::identity(2).scale_real(std::f64::consts::FRAC_1_SQRT_2);
        assert_eq!(b.elements()[0], id);
    }

    #[test]
    fn matrix_units() {
        let b = standard_basis(2, BasisLabel::MatrixUnits).unwrap();
        let e01 = &b.elements()[1];
        assert_eq!(e01[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(e01.max_abs(), 1.0);
        assert_eq!(e01.frobenius_norm(), 1.0);

        let b3 = standard_basis(3, BasisLabel::MatrixUnits).unwrap();
        assert_eq!(b3.len(), 9);
        assert_eq!(b3.orthonormality_residual(), 0.0);
        assert!(b3.elements().iter().all(|e| e.rows() == 3 && e.cols() == 3));
    }

    #[test]
    fn pauli_requires_qubits() {
        assert_eq!(
            standard_basis(3, BasisLabel::PauliOverSqrt2),
            Err(Error::UnsupportedCombination {
                label: "pauli",
                dim: 3
            })
        );
        assert!(standard_basis(1, BasisLabel::MatrixUnits).is_err());
    }

    #[test]
    fn label_names_round_trip() {
        for l in [BasisLabel::PauliOverSqrt2, BasisLabel::MatrixUnits] {
            assert_eq!(BasisLabel::from_name(l.name()), Some(l));
        }
        assert_eq!(BasisLabel::default_for(2), BasisLabel::PauliOverSqrt2);
        assert_eq!(BasisLabel::default_for(3), BasisLabel::MatrixUnits);
    }
}
