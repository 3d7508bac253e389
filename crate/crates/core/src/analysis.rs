//! Composite audits of a map: validity, spectral agreement between the coefficient
//! matrix and the dynamical matrix, complete-positivity verdict, Kraus extraction, and
//! Choi-state consistency.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::forms::{
    apply_a, canonical_decompose, coefficient_matrix_with_tol, extract_kraus, realign_a_to_b,
    AForm, AFormCheck, BForm, BasisLabel, CanonicalDecomposition, CoefficientMatrix, CpVerdict,
    KrausSet, OperatorBasis,
};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix, DensityMatrix};
use crate::zoo::{random_pure_state, ChannelSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct BFormSummary {
    pub hermiticity_residual: f64,
    pub trace: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalSummary {
    pub rank: usize,
    /// `max |A - sum lambda C ⊗ C*|`
    pub reconstruction_error: f64,
    /// `max |sum lambda C^dagger C - I|`
    pub completeness_error: f64,
    /// `max |Tr[C_a^dagger C_b] - delta_ab|`
    pub orthonormality_error: f64,
    pub decomposition: CanonicalDecomposition,
}

#[derive(Debug, Clone, PartialEq)]
pub enum KrausOutcome {
    Present(KrausSet),
    Absent { reason: String },
}

impl KrausOutcome {
    pub fn kraus(&self) -> Option<&KrausSet> {
        match self {
            KrausOutcome::Present(k) => Some(k),
            KrausOutcome::Absent { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeSettings {
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeSummary {
    pub samples: usize,
    pub seed: u64,
    pub worst_min_eigenvalue: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub channel: ChannelSpec,
    pub description: String,
    pub dim: usize,
    pub basis: BasisLabel,
    pub tol: f64,
    pub a_form: AFormCheck,
    pub a: AForm,
    pub b: BForm,
    pub b_form: BFormSummary,
    pub coefficients: CoefficientMatrix,
    /// Descending.
    pub coefficient_spectrum: Vec<f64>,
    /// Descending.
    pub b_spectrum: Vec<f64>,
    /// Largest pairwise gap between the two sorted spectra.
    pub spectral_match: f64,
    pub verdict: CpVerdict,
    pub canonical: CanonicalSummary,
    pub kraus: KrausOutcome,
    pub choi_deviation: f64,
    pub positivity_probe: Option<ProbeSummary>,
}

/// Builds the map from `spec`, checks that it preserves hermiticity and trace, and
/// assembles every derived representation.
pub fn analyze(spec: &ChannelSpec, basis: &OperatorBasis, tol: f64) -> Result<AnalysisReport> {
    analyze_with_probe(spec, basis, tol, None)
}

pub fn analyze_with_probe(
    spec: &ChannelSpec,
    basis: &OperatorBasis,
    tol: f64,
    probe: Option<ProbeSettings>,
) -> Result<AnalysisReport> {
    let a = spec.build(tol)?;
    if a.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: basis.dim(),
        });
    }
    let check = a.check(tol);
    check.to_result()?;

    let b = realign_a_to_b(&a);
    let b_form = BFormSummary {
        hermiticity_residual: b.hermiticity_residual(),
        trace: b.trace(),
    };
    let b_spectrum = b.eigenvalues(tol)?;

    let coefficients = coefficient_matrix_with_tol(&a, basis, tol)?;
    let coefficient_spectrum = hermitian_eigenvalues(coefficients.matrix(), tol)?;
    let spectral_match = spectral_distance(&coefficient_spectrum, &b_spectrum);

    let decomposition = canonical_decompose(&a, basis, tol)?;
    let verdict = CpVerdict::from_eigenvalues(decomposition.eigenvalues.clone(), tol);
    let canonical = CanonicalSummary {
        rank: decomposition.rank(tol),
        reconstruction_error: decomposition.reconstruct().max_abs_diff(a.matrix()),
        completeness_error: decomposition
            .completeness()
            .max_abs_diff(&ComplexMatrix::identity(a.dim())),
        orthonormality_error: decomposition.orthonormality_residual(),
        decomposition,
    };
    let kraus = match extract_kraus(&canonical.decomposition, tol) {
        Ok(k) => KrausOutcome::Present(k),
        Err(e) => KrausOutcome::Absent {
            reason: e.to_string(),
        },
    };
    let choi_deviation = choi_consistency(&a);
    let positivity_probe = probe.map(|p| ProbeSummary {
        samples: p.samples,
        seed: p.seed,
        worst_min_eigenvalue: positivity_probe(&a, p.samples, p.seed),
    });

    Ok(AnalysisReport {
        channel: spec.clone(),
        description: spec.describe(),
        dim: a.dim(),
        basis: basis.label(),
        tol,
        a_form: check,
        a,
        b,
        b_form,
        coefficients,
        coefficient_spectrum,
        b_spectrum,
        spectral_match,
        verdict,
        canonical,
        kraus,
        choi_deviation,
        positivity_probe,
    })
}

/// Sorts both spectra descending and returns the largest pairwise gap.
pub fn spectral_distance(left: &[f64], right: &[f64]) -> f64 {
    if left.len() != right.len() {
        return f64::INFINITY;
    }
    let mut l = left.to_vec();
    let mut r = right.to_vec();
    l.sort_by(|a, b| b.total_cmp(a));
    r.sort_by(|a, b| b.total_cmp(a));
    l.iter()
        .zip(&r)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// `(A ⊗ id)` acting on an `(n d) x (n d)` matrix whose first tensor factor is the
/// system the map acts on.
pub fn extend_with_identity(a: &AForm, x: &ComplexMatrix, d: usize) -> Result<ComplexMatrix> {
    let n = a.dim();
    if x.rows() != n * d || x.cols() != n * d {
        return Err(Error::DimensionMismatch {
            left: n * d,
            right: x.rows(),
        });
    }
    let mut out = ComplexMatrix::zeros(n * d, n * d);
    for rp in 0..n {
        for sp in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let coeff = a.entry(rp, sp, r, s);
                    if coeff.norm() == 0.0 {
                        continue;
                    }
                    for i in 0..d {
                        for j in 0..d {
                            out[(rp * d + i, sp * d + j)] += coeff * x[(r * d + i, s * d + j)];
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `|Omega><Omega|` with `Omega = sum_k |kk> / sqrt(n)`.
pub fn maximally_entangled(n: usize) -> ComplexMatrix {
    let amp = 1.0 / (n as f64).sqrt();
    let omega: Vec<Complex64> = (0..n * n)
        .map(|idx| {
            if idx / n == idx % n {
                Complex64::new(amp, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    ComplexMatrix::outer(&omega, &omega)
}

/// Max entrywise gap between the Choi state `(A ⊗ id)(|Omega><Omega|)` and `B / n`.
pub fn choi_consistency(a: &AForm) -> f64 {
    let n = a.dim();
    let choi = extend_with_identity(a, &maximally_entangled(n), n).expect("shapes agree");
    let b = realign_a_to_b(a);
    choi.max_abs_diff(&b.matrix().scale_real(1.0 / n as f64))
}

/// Applies the map to `samples` Haar-random pure states and returns the most negative
/// output eigenvalue (`+inf` for zero samples). Passing this probe is necessary for
/// positivity, not sufficient for complete positivity.
pub fn positivity_probe(a: &AForm, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::INFINITY;
    for _ in 0..samples {
        let psi = random_pure_state(a.dim(), &mut rng);
        let rho = DensityMatrix::pure(&psi).expect("normalized Gaussian vector");
        if let Ok(out) = apply_a(a, &rho) {
            worst = worst.min(out.min_eigenvalue);
        }
    }
    worst
}
