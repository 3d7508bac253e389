//! Machine-readable output: the analysis report and the converted representations.
//! Everything here serializes to JSON and parses back to an equal value.

use chanforms::analysis::KrausOutcome;
use chanforms::{
    standard_basis, AnalysisReport, BasisLabel, ChannelOutput, ComplexMatrix, CpClass,
};
use serde::{Deserialize, Serialize};

use crate::document::{BasisName, ChannelPayload, ParseError, FORMAT_VERSION};
use crate::wire::{complex_to_wire, WireComplex, WireMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    CompletelyPositive,
    NotCompletelyPositive,
}

impl From<CpClass> for Classification {
    fn from(c: CpClass) -> Self {
        match c {
            CpClass::CompletelyPositive => Classification::CompletelyPositive,
            CpClass::NotCompletelyPositive => Classification::NotCompletelyPositive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AFormSection {
    pub valid: bool,
    pub hermiticity_residual: f64,
    pub trace_residual: f64,
    pub matrix: WireMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BFormSection {
    pub hermiticity_residual: f64,
    pub trace: WireComplex,
    pub matrix: WireMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictSection {
    pub classification: Classification,
    pub min_eigenvalue: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonicalSection {
    pub rank: usize,
    pub eigenvalues: Vec<f64>,
    pub operators: Vec<WireMatrix>,
    pub reconstruction_error: f64,
    pub completeness_error: f64,
    pub orthonormality_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case", deny_unknown_fields)]
pub enum KrausSection {
    Present { operators: Vec<WireMatrix> },
    Absent { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeSection {
    pub samples: usize,
    pub seed: u64,
    pub worst_min_eigenvalue: f64,
}

/// Serialized [`AnalysisReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MachineReport {
    pub format_version: String,
    pub channel: ChannelPayload,
    pub description: String,
    pub dim: usize,
    pub basis: BasisName,
    pub tol: f64,
    pub a_form: AFormSection,
    pub b_form: BFormSection,
    pub coefficient_matrix: WireMatrix,
    pub coefficient_spectrum: Vec<f64>,
    pub b_spectrum: Vec<f64>,
    pub spectral_match: f64,
    pub verdict: VerdictSection,
    pub canonical: CanonicalSection,
    pub kraus: KrausSection,
    pub choi_deviation: f64,
    pub positivity_probe: Option<ProbeSection>,
}

impl From<&AnalysisReport> for MachineReport {
    fn from(r: &AnalysisReport) -> Self {
        let decomposition = &r.canonical.decomposition;
        MachineReport {
            format_version: FORMAT_VERSION.into(),
            channel: ChannelPayload::from(&r.channel),
            description: r.description.clone(),
            dim: r.dim,
            basis: r.basis.into(),
            tol: r.tol,
            a_form: AFormSection {
                valid: r.a_form.is_valid(),
                hermiticity_residual: r.a_form.hermiticity_residual,
                trace_residual: r.a_form.trace_residual,
                matrix: r.a.matrix().into(),
            },
            b_form: BFormSection {
                hermiticity_residual: r.b_form.hermiticity_residual,
                trace: complex_to_wire(r.b_form.trace),
                matrix: r.b.matrix().into(),
            },
            coefficient_matrix: r.coefficients.matrix().into(),
            coefficient_spectrum: r.coefficient_spectrum.clone(),
            b_spectrum: r.b_spectrum.clone(),
            spectral_match: r.spectral_match,
            verdict: VerdictSection {
                classification: r.verdict.classification.into(),
                min_eigenvalue: r.verdict.min_eigenvalue,
            },
            canonical: CanonicalSection {
                rank: r.canonical.rank,
                eigenvalues: decomposition.eigenvalues.clone(),
                operators: decomposition.canonical_ops.iter().map(Into::into).collect(),
                reconstruction_error: r.canonical.reconstruction_error,
                completeness_error: r.canonical.completeness_error,
                orthonormality_error: r.canonical.orthonormality_error,
            },
            kraus: match &r.kraus {
                KrausOutcome::Present(k) => KrausSection::Present {
                    operators: k.operators().iter().map(Into::into).collect(),
                },
                KrausOutcome::Absent { reason } => KrausSection::Absent {
                    reason: reason.clone(),
                },
            },
            choi_deviation: r.choi_deviation,
            positivity_probe: r.positivity_probe.as_ref().map(|p| ProbeSection {
                samples: p.samples,
                seed: p.seed,
                worst_min_eigenvalue: p.worst_min_eigenvalue,
            }),
        }
    }
}

/// Output of `apply`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AppliedState {
    pub format_version: String,
    pub output: WireMatrix,
    pub min_eigenvalue: f64,
    pub positive: bool,
    pub bloch: Option<[f64; 3]>,
}

impl AppliedState {
    pub fn new(out: &ChannelOutput, tol: f64) -> Self {
        AppliedState {
            format_version: FORMAT_VERSION.into(),
            output: (&out.matrix).into(),
            min_eigenvalue: out.min_eigenvalue,
            positive: out.is_positive(tol),
            bloch: out.bloch_components(),
        }
    }
}

/// One representation of a map, as emitted by `convert`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Representation {
    AForm {
        dim: usize,
        matrix: WireMatrix,
    },
    BForm {
        dim: usize,
        matrix: WireMatrix,
    },
    Coefficient {
        dim: usize,
        basis: BasisName,
        matrix: WireMatrix,
    },
    Kraus {
        dim: usize,
        operators: Vec<WireMatrix>,
    },
    Canonical {
        dim: usize,
        basis: BasisName,
        eigenvalues: Vec<f64>,
        operators: Vec<WireMatrix>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationDocument {
    pub format_version: String,
    pub representation: Representation,
}

impl Representation {
    pub fn to_json(&self) -> String {
        let doc = RepresentationDocument {
            format_version: FORMAT_VERSION.into(),
            representation: self.clone(),
        };
        crate::json::to_string(&doc)
    }

    /// Rebuilds the A-form the representation describes.
    pub fn to_a_matrix(&self) -> Result<ComplexMatrix, ParseError> {
        match self {
            Representation::AForm { matrix, .. } => matrix.to_matrix("matrix"),
            Representation::BForm { matrix, dim } => {
                let b = matrix.to_matrix("matrix")?;
                let b = chanforms::BForm::new(b).map_err(|e| shape_error("matrix", e))?;
                check_dim(*dim, b.dim())?;
                Ok(chanforms::realign_b_to_a(&b).into_matrix())
            }
            Representation::Coefficient { dim, basis, matrix } => {
                let coefficients = matrix.to_matrix("matrix")?;
                let basis = standard_basis(*dim, BasisLabel::from(*basis))
                    .map_err(|e| shape_error("basis", e))?;
                let t = basis.elements();
                if coefficients.rows() != t.len() || coefficients.cols() != t.len() {
                    return Err(ParseError::BadMatrixShape {
                        field: "matrix".into(),
                        detail: format!("expected {0}x{0}", t.len()),
                    });
                }
                let mut a = ComplexMatrix::zeros(dim * dim, dim * dim);
                for (mu, t_mu) in t.iter().enumerate() {
                    for (nu, t_nu) in t.iter().enumerate() {
                        a = &a + &t_mu.kron(&t_nu.conj()).scale(coefficients[(mu, nu)]);
                    }
                }
                Ok(a)
            }
            Representation::Kraus { dim, operators } => {
                let weights = vec![1.0; operators.len()];
                operator_sum(*dim, &weights, operators)
            }
            Representation::Canonical {
                dim,
                eigenvalues,
                operators,
                ..
            } => {
                if eigenvalues.len() != operators.len() {
                    return Err(ParseError::BadMatrixShape {
                        field: "operators".into(),
                        detail: "one operator per eigenvalue required".into(),
                    });
                }
                operator_sum(*dim, eigenvalues, operators)
            }
        }
    }
}

fn shape_error(field: &str, e: chanforms::Error) -> ParseError {
    ParseError::BadMatrixShape {
        field: field.into(),
        detail: e.to_string(),
    }
}

fn check_dim(declared: usize, actual: usize) -> Result<(), ParseError> {
    if declared == actual {
        Ok(())
    } else {
        Err(ParseError::BadMatrixShape {
            field: "dim".into(),
            detail: format!("declared {declared}, matrix implies {actual}"),
        })
    }
}

/// `sum_k w_k E_k ⊗ E_k*`.
fn operator_sum(
    dim: usize,
    weights: &[f64],
    operators: &[WireMatrix],
) -> Result<ComplexMatrix, ParseError> {
    let mut a = ComplexMatrix::zeros(dim * dim, dim * dim);
    for (k, (w, op)) in weights.iter().zip(operators).enumerate() {
        let e = op.to_matrix(&format!("operators[{k}]"))?;
        check_dim(dim, e.rows())?;
        if !e.is_square() {
            return Err(ParseError::BadMatrixShape {
                field: format!("operators[{k}]"),
                detail: "operator is not square".into(),
            });
        }
        a = &a + &e.kron(&e.conj()).scale_real(*w);
    }
    Ok(a)
}

pub fn parse_representation(text: &str) -> Result<Representation, ParseError> {
    let doc: RepresentationDocument = serde_json::from_str(text)?;
    if doc.format_version != FORMAT_VERSION {
        return Err(ParseError::UnsupportedVersion {
            found: doc.format_version,
        });
    }
    Ok(doc.representation)
}

pub fn parse_machine_report(text: &str) -> Result<MachineReport, ParseError> {
    Ok(serde_json::from_str(text)?)
}
