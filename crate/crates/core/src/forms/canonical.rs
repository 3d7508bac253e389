use super::aform::{AForm, ChannelOutput};
use super::basis::OperatorBasis;
use super::coefficient::coefficient_matrix_with_tol;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix};

/// Entries within this relative margin of the largest magnitude count as tied when
/// choosing the phase reference of a canonical operator.
const PHASE_TIE_MARGIN: f64 = 1e-9;

/// `A = sum_a lambda_a (C_a ⊗ C_a*)` with trace-orthonormal `C_a`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalDecomposition {
    pub eigenvalues: Vec<f64>,
    pub canonical_ops: Vec<ComplexMatrix>,
    basis: OperatorBasis,
}

impl CanonicalDecomposition {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &OperatorBasis {
        &self.basis
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Number of eigenvalues with `|lambda| > tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.eigenvalues.iter().filter(|l| l.abs() > tol).count()
    }

    /// `sum_a lambda_a (C_a ⊗ C_a*)`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n * n, n * n);
        for (lambda, c) in self.terms() {
            out = &out + &c.kron(&c.conj()).scale_real(lambda);
        }
        out
    }

    /// `sum_a lambda_a C_a^dagger C_a`, the identity for trace-preserving maps.
    pub fn completeness(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for (lambda, c) in self.terms() {
            out = &out + &c.adjoint().matmul(c).scale_real(lambda);
        }
        out
    }

    /// `max |Tr[C_a^dagger C_b] - delta_ab|`.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for (a, ca) in self.canonical_ops.iter().enumerate() {
            for (b, cb) in self.canonical_ops.iter().enumerate() {
                let delta = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((ca.hs_inner(cb) - delta).norm());
            }
        }
        worst
    }

    fn terms(&self) -> impl Iterator<Item = (f64, &ComplexMatrix)> {
        self.eigenvalues.iter().copied().zip(&self.canonical_ops)
    }

    fn apply_matrix(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for (lambda, c) in self.terms() {
            let term = c.matmul(rho).matmul(&c.adjoint()).scale_real(lambda);
            out = &out + &term;
        }
        out
    }
}

/// Diagonalizes the coefficient matrix `U A U^dagger = diag(lambda)` and forms
/// `C_a = sum_mu conj(u_{a mu}) T_mu`, each rescaled by a unit phase so that its
/// largest-magnitude entry is real and positive.
pub fn canonical_decompose(
    a: &AForm,
    basis: &OperatorBasis,
    tol: f64,
) -> Result<CanonicalDecomposition> {
    let coefficients = coefficient_matrix_with_tol(a, basis, tol)?;
    let eig = coefficients.eigendecompose(tol)?;
    let n = a.dim();
    let t = basis.elements();
    let canonical_ops = (0..eig.len())
        .map(|alpha| {
            let mut c = ComplexMatrix::zeros(n, n);
            for (mu, t_mu) in t.iter().enumerate() {
                let weight = eig.unitary[(alpha, mu)].conj();
                if weight.norm() != 0.0 {
                    c = &c + &t_mu.scale(weight);
                }
            }
            fix_phase(c)
        })
        .collect();
    Ok(CanonicalDecomposition {
        eigenvalues: eig.eigenvalues,
        canonical_ops,
        basis: basis.clone(),
    })
}

fn fix_phase(c: ComplexMatrix) -> ComplexMatrix {
    let largest = c.max_abs();
    if largest == 0.0 {
        return c;
    }
    let pivot = c
        .as_slice()
        .iter()
        .find(|z| z.norm() >= largest * (1.0 - PHASE_TIE_MARGIN))
        .copied()
        .expect("max entry exists");
    let phase = pivot.conj() / pivot.norm();
    c.scale(phase)
}

/// `rho_f = sum_a lambda_a C_a rho C_a^dagger`.
pub fn apply_canonical(c: &CanonicalDecomposition, rho: &DensityMatrix) -> Result<ChannelOutput> {
    if c.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: c.dim(),
            right: rho.dim(),
        });
    }
    Ok(ChannelOutput::from_matrix(c.apply_matrix(rho.matrix())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CpClass {
    CompletelyPositive,
    NotCompletelyPositive,
}

impl CpClass {
    pub fn is_cp(self) -> bool {
        self == CpClass::CompletelyPositive
    }
}

/// Complete-positivity classification from the sign of the coefficient spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct CpVerdict {
    pub classification: CpClass,
    pub eigenvalues: Vec<f64>,
    pub min_eigenvalue: f64,
    pub tol: f64,
}

impl CpVerdict {
    pub fn from_eigenvalues(eigenvalues: Vec<f64>, tol: f64) -> Self {
        let min_eigenvalue = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        let classification = if min_eigenvalue >= -tol {
            CpClass::CompletelyPositive
        } else {
            CpClass::NotCompletelyPositive
        };
        Self {
            classification,
            eigenvalues,
            min_eigenvalue,
            tol,
        }
    }

    pub fn is_cp(&self) -> bool {
        self.classification.is_cp()
    }
}

pub fn cp_verdict(a: &AForm, basis: &OperatorBasis, tol: f64) -> Result<CpVerdict> {
    let c = canonical_decompose(a, basis, tol)?;
    Ok(CpVerdict::from_eigenvalues(c.eigenvalues, tol))
}

/// Operator-sum representation `rho -> sum_a E_a rho E_a^dagger`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    dim: usize,
    operators: Vec<ComplexMatrix>,
}

impl KrausSet {
    /// Checks that the operators are non-empty and share one square shape. Completeness
    /// is checked where it matters, in [`kraus_to_a`].
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let first = operators.first().ok_or_else(|| Error::BadShape {
            rows: 0,
            cols: 0,
            expected: "at least one Kraus operator".into(),
        })?;
        let dim = first.rows();
        if dim == 0 {
            return Err(Error::BadShape {
                rows: 0,
                cols: 0,
                expected: "non-empty Kraus operators".into(),
            });
        }
        if let Some(bad) = operators
            .iter()
            .find(|e| e.rows() != dim || e.cols() != dim)
        {
            return Err(Error::BadShape {
                rows: bad.rows(),
                cols: bad.cols(),
                expected: format!("{dim}x{dim}"),
            });
        }
        Ok(Self { dim, operators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    /// `sum_a E_a^dagger E_a`.
    pub fn completeness(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for e in &self.operators {
            out = &out + &e.adjoint().matmul(e);
        }
        out
    }

    pub fn completeness_residual(&self) -> f64 {
        self.completeness()
            .max_abs_diff(&ComplexMatrix::identity(self.dim))
    }

    pub fn apply_matrix(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.rows() != self.dim || rho.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rho.rows(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for e in &self.operators {
            out = &out + &e.matmul(rho).matmul(&e.adjoint());
        }
        Ok(out)
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<ChannelOutput> {
        self.apply_matrix(rho.matrix())
            .map(ChannelOutput::from_matrix)
    }
}

/// `E_a = sqrt(lambda_a) C_a`, dropping terms with `lambda_a <= tol`.
pub fn extract_kraus(c: &CanonicalDecomposition, tol: f64) -> Result<KrausSet> {
    let min_eigenvalue = c.min_eigenvalue();
    if min_eigenvalue < -tol {
        return Err(Error::NotCompletelyPositive {
            min_eigenvalue,
            tol,
        });
    }
    let operators: Vec<ComplexMatrix> = c
        .terms()
        .filter(|(lambda, _)| *lambda > tol)
        .map(|(lambda, op)| op.scale_real(lambda.sqrt()))
        .collect();
    if operators.is_empty() {
        // only the zero map has an all-zero spectrum
        return Ok(KrausSet {
            dim: c.dim(),
            operators: vec![ComplexMatrix::zeros(c.dim(), c.dim())],
        });
    }
    KrausSet::new(operators)
}

/// `A = sum_a E_a ⊗ E_a*`, after checking `sum_a E_a^dagger E_a = I` within `tol`.
pub fn kraus_to_a(ops: &KrausSet, tol: f64) -> Result<AForm> {
    let residual = ops.completeness_residual();
    if residual > tol {
        return Err(Error::IncompleteKraus { residual, tol });
    }
    let n = ops.dim();
    let mut m = ComplexMatrix::zeros(n * n, n * n);
    for e in ops.operators() {
        m = &m + &e.kron(&e.conj());
    }
    AForm::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::basis::{standard_basis, BasisLabel};
    use crate::linalg::{bloch, bloch_to_density, pauli_matrices};

    fn pauli() -> OperatorBasis {
        standard_basis(2, BasisLabel::PauliOverSqrt2).unwrap()
    }

    fn flip(p: f64, which: usize) -> KrausSet {
        let s = pauli_matrices();
        KrausSet::new(vec![
            s[0].scale_real(p.sqrt()),
            s[which].scale_real((1.0 - p).sqrt()),
        ])
        .unwrap()
    }

    #[test]
    fn identity_channel_single_kraus() {
        let c = canonical_decompose(&AForm::identity(2), &pauli(), 1e-9).unwrap();
        assert_eq!(c.rank(1e-9), 1);
        let k = extract_kraus(&c, 1e-9).unwrap();
        assert_eq!(k.len(), 1);
        assert!(k.operators()[0].max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn canonical_ops_have_positive_pivot() {
        let a = kraus_to_a(&flip(0.75, 1), 1e-12).unwrap();
        let c = canonical_decompose(&a, &pauli(), 1e-9).unwrap();
        for op in &c.canonical_ops {
            let top = op.max_abs();
            let pivot = op
                .as_slice()
                .iter()
                .find(|z| z.norm() >= top * (1.0 - 1e-9))
                .unwrap();
            assert!(pivot.im.abs() < 1e-15 && pivot.re > 0.0);
        }
        assert!(c.orthonormality_residual() < 1e-14);
    }

    #[test]
    fn bit_flip_kraus_pair() {
        let a = kraus_to_a(&flip(0.75, 1), 1e-12).unwrap();
        let c = canonical_decompose(&a, &pauli(), 1e-9).unwrap();
        let k = extract_kraus(&c, 1e-9).unwrap();
        assert_eq!(k.len(), 2);
        let s = pauli_matrices();
        assert!(k.operators()[0].max_abs_diff(&s[0].scale_real(0.75_f64.sqrt())) < 1e-14);
        assert!(k.operators()[1].max_abs_diff(&s[1].scale_real(0.5)) < 1e-14);
        assert!(k.completeness_residual() < 1e-14);
    }

    #[test]
    fn transpose_has_no_kraus_form() {
        let swap = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        let a = AForm::new(swap).unwrap();
        let c = canonical_decompose(&a, &pauli(), 1e-9).unwrap();
        assert!(matches!(
            extract_kraus(&c, 1e-9),
            Err(Error::NotCompletelyPositive { .. })
        ));
        let v = cp_verdict(&a, &pauli(), 1e-9).unwrap();
        assert_eq!(v.classification, CpClass::NotCompletelyPositive);
        assert!((v.min_eigenvalue + 1.0).abs() < 1e-14);
        assert!(c.reconstruct().max_abs_diff(a.matrix()) < 1e-14);
    }

    #[test]
    fn canonical_action_matches_hand_oracles() {
        // phase flip p = 0.3 scales p1, p2 by 2p - 1
        let a = kraus_to_a(&flip(0.3, 3), 1e-12).unwrap();
        let c = canonical_decompose(&a, &pauli(), 1e-9).unwrap();
        let rho = bloch_to_density(&bloch(1.0, 0.0, 0.0).unwrap());
        let out = apply_canonical(&c, &rho)
            .unwrap()
            .bloch_components()
            .unwrap();
        assert!((out[0] + 0.4).abs() < 1e-14 && out[1].abs() < 1e-14 && out[2].abs() < 1e-14);

        // bit flip p = 0.5 sends |0> to the maximally mixed state
        let a = kraus_to_a(&flip(0.5, 1), 1e-12).unwrap();
        let c = canonical_decompose(&a, &pauli(), 1e-9).unwrap();
        let rho = bloch_to_density(&bloch(0.0, 0.0, 1.0).unwrap());
        let out = apply_canonical(&c, &rho)
            .unwrap()
            .bloch_components()
            .unwrap();
        assert!(out.iter().all(|x| x.abs() < 1e-14));
    }

    #[test]
    fn kraus_to_a_examples() {
        let id = KrausSet::new(vec![ComplexMatrix::identity(2)]).unwrap();
        assert_eq!(kraus_to_a(&id, 1e-12).unwrap(), AForm::identity(2));

        let p = 0.75;
        let expected = ComplexMatrix::from_real_rows(&[
            &[p, 0.0, 0.0, 1.0 - p],
            &[0.0, p, 1.0 - p, 0.0],
            &[0.0, 1.0 - p, p, 0.0],
            &[1.0 - p, 0.0, 0.0, p],
        ])
        .unwrap();
        assert!(
            kraus_to_a(&flip(p, 1), 1e-12)
                .unwrap()
                .matrix()
                .max_abs_diff(&expected)
                < 1e-15
        );

        let p = 0.2;
        let pf = kraus_to_a(&flip(p, 3), 1e-12).unwrap();
        let expected = ComplexMatrix::from_real_diagonal(&[1.0, 2.0 * p - 1.0, 2.0 * p - 1.0, 1.0]);
        assert!(pf.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn incomplete_kraus_rejected() {
        let half = KrausSet::new(vec![ComplexMatrix::identity(2).scale_real(0.5)]).unwrap();
        assert!(matches!(
            kraus_to_a(&half, 1e-9),
            Err(Error::IncompleteKraus { .. })
        ));
        assert!(KrausSet::new(vec![]).is_err());
        assert!(
            KrausSet::new(vec![ComplexMatrix::identity(2), ComplexMatrix::identity(3)]).is_err()
        );
    }

    #[test]
    fn results_are_thread_safe() {
        fn check<T: Send + Sync>() {}
        check::<CanonicalDecomposition>();
        check::<KrausSet>();
        check::<CpVerdict>();
    }

    #[test]
    fn boundary_classifies_as_cp() {
        let v = CpVerdict::from_eigenvalues(vec![1.0, 1.0, 0.0, -1e-12], 1e-9);
        assert!(v.is_cp());
        let v = CpVerdict::from_eigenvalues(vec![1.0, -1e-6], 1e-9);
        assert!(!v.is_cp());
    }
}
