//! Channel documents: the JSON input accepted by every subcommand.
//!
//! ```json
//! {"format_version":"1","channel":{"kind":"bit_flip","p":0.75},"options":{"tol":1e-9}}
//! ```

use chanforms::{BasisLabel, ChannelSpec};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::wire::WireMatrix;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown field `{field}` at line {line}, column {column}")]
    UnknownField {
        field: String,
        line: usize,
        column: usize,
    },
    #[error("missing field `{field}` (object ending at line {line}, column {column})")]
    MissingField {
        field: String,
        line: usize,
        column: usize,
    },
    #[error("unknown channel kind `{kind}` at line {line}, column {column}")]
    UnknownKind {
        kind: String,
        line: usize,
        column: usize,
    },
    #[error("invalid value at line {line}, column {column}: {message}")]
    InvalidValue {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("bad matrix shape in `{field}`: {detail}")]
    BadMatrixShape { field: String, detail: String },
    #[error("non-finite entry in `{field}` at row {row}, column {col}")]
    NonFiniteEntry {
        field: String,
        row: usize,
        col: usize,
    },
    #[error("unsupported format_version `{found}` (expected \"{FORMAT_VERSION}\")")]
    UnsupportedVersion { found: String },
    #[error("invalid option `{option}`: {detail}")]
    InvalidOption { option: String, detail: String },
}

/// Text between the first pair of backticks in a serde message.
fn quoted(message: &str) -> String {
    message
        .split('`')
        .nth(1)
        .map_or_else(|| message.to_string(), str::to_string)
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        let (line, column) = (e.line(), e.column());
        let full = e.to_string();
        // serde_json appends " at line L column C"; keep the bare message
        let message = full
            .rsplit_once(" at line ")
            .map_or(full.as_str(), |(m, _)| m)
            .to_string();
        if !e.is_data() {
            return ParseError::Syntax {
                line,
                column,
                message,
            };
        }
        if message.starts_with("unknown field") {
            ParseError::UnknownField {
                field: quoted(&message),
                line,
                column,
            }
        } else if message.starts_with("missing field") {
            ParseError::MissingField {
                field: quoted(&message),
                line,
                column,
            }
        } else if message.starts_with("unknown variant") {
            ParseError::UnknownKind {
                kind: quoted(&message),
                line,
                column,
            }
        } else {
            ParseError::InvalidValue {
                line,
                column,
                message,
            }
        }
    }
}

/// Serialized form of a [`ChannelSpec`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ChannelPayload {
    Unitary { axis: [f64; 3], angle: f64 },
    Pin { p0: [f64; 3] },
    Transpose {},
    EquatorialProjection {},
    BitFlip { p: f64 },
    PhaseFlip { p: f64 },
    RawA { matrix: WireMatrix },
    RawKraus { operators: Vec<WireMatrix> },
}

impl ChannelPayload {
    pub fn to_spec(&self) -> Result<ChannelSpec, ParseError> {
        Ok(match self {
            ChannelPayload::Unitary { axis, angle } => ChannelSpec::Unitary {
                axis: *axis,
                angle: *angle,
            },
            ChannelPayload::Pin { p0 } => ChannelSpec::Pin { p0: *p0 },
            ChannelPayload::Transpose {} => ChannelSpec::Transpose,
            ChannelPayload::EquatorialProjection {} => ChannelSpec::EquatorialProjection,
            ChannelPayload::BitFlip { p } => ChannelSpec::BitFlip { p: *p },
            ChannelPayload::PhaseFlip { p } => ChannelSpec::PhaseFlip { p: *p },
            ChannelPayload::RawA { matrix } => {
                let m = matrix.to_matrix("channel.matrix")?;
                let n = (m.rows() as f64).sqrt().round() as usize;
                if m.rows() != m.cols() || n * n != m.rows() || n < 2 {
                    return Err(ParseError::BadMatrixShape {
                        field: "channel.matrix".into(),
                        detail: format!(
                            "{}x{} is not n^2 x n^2 for some n >= 2",
                            m.rows(),
                            m.cols()
                        ),
                    });
                }
                ChannelSpec::RawA(m)
            }
            ChannelPayload::RawKraus { operators } => {
                if operators.is_empty() {
                    return Err(ParseError::BadMatrixShape {
                        field: "channel.operators".into(),
                        detail: "no operators".into(),
                    });
                }
                let mut ops = Vec::with_capacity(operators.len());
                for (k, w) in operators.iter().enumerate() {
                    let field = format!("channel.operators[{k}]");
                    let m = w.to_matrix(&field)?;
                    let n = ops.first().map_or(m.rows(), chanforms::ComplexMatrix::rows);
                    if m.rows() != m.cols() || m.rows() != n || n < 2 {
                        return Err(ParseError::BadMatrixShape {
                            field,
                            detail: format!(
                                "{}x{}, expected square operators of one size n >= 2",
                                m.rows(),
                                m.cols()
                            ),
                        });
                    }
                    ops.push(m);
                }
                ChannelSpec::RawKraus(ops)
            }
        })
    }
}

impl From<&ChannelSpec> for ChannelPayload {
    fn from(spec: &ChannelSpec) -> Self {
        match spec {
            ChannelSpec::Unitary { axis, angle } => ChannelPayload::Unitary {
                axis: *axis,
                angle: *angle,
            },
            ChannelSpec::Pin { p0 } => ChannelPayload::Pin { p0: *p0 },
            ChannelSpec::Transpose => ChannelPayload::Transpose {},
            ChannelSpec::EquatorialProjection => ChannelPayload::EquatorialProjection {},
            ChannelSpec::BitFlip { p } => ChannelPayload::BitFlip { p: *p },
            ChannelSpec::PhaseFlip { p } => ChannelPayload::PhaseFlip { p: *p },
            ChannelSpec::RawA(m) => ChannelPayload::RawA {
                matrix: WireMatrix::from_matrix(m),
            },
            ChannelSpec::RawKraus(ops) => ChannelPayload::RawKraus {
                operators: ops.iter().map(WireMatrix::from_matrix).collect(),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisName {
    Pauli,
    Units,
}

impl From<BasisName> for BasisLabel {
    fn from(b: BasisName) -> Self {
        match b {
            BasisName::Pauli => BasisLabel::PauliOverSqrt2,
            BasisName::Units => BasisLabel::MatrixUnits,
        }
    }
}

impl From<BasisLabel> for BasisName {
    fn from(b: BasisLabel) -> Self {
        match b {
            BasisLabel::PauliOverSqrt2 => BasisName::Pauli,
            BasisLabel::MatrixUnits => BasisName::Units,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<BasisName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    format_version: String,
    channel: ChannelPayload,
    #[serde(default)]
    options: DocumentOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelDocument {
    pub channel: ChannelSpec,
    pub options: DocumentOptions,
}

impl ChannelDocument {
    pub fn new(channel: ChannelSpec) -> Self {
        ChannelDocument {
            channel,
            options: DocumentOptions::default(),
        }
    }

    pub fn to_json(&self) -> String {
        let raw = RawDocument {
            format_version: FORMAT_VERSION.into(),
            channel: ChannelPayload::from(&self.channel),
            options: self.options,
        };
        serde_json::to_string(&raw).expect("document serializes")
    }
}

/// Checks that a tolerance is usable; shared by the document, the flag and the env var.
pub fn check_tol(option: &str, tol: f64) -> Result<f64, ParseError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(ParseError::InvalidOption {
            option: option.into(),
            detail: format!("tolerance must be finite and positive, got {tol}"),
        })
    }
}

pub fn parse_channel_document(text: &str) -> Result<ChannelDocument, ParseError> {
    let raw: RawDocument = serde_json::from_str(text)?;
    if raw.format_version != FORMAT_VERSION {
        return Err(ParseError::UnsupportedVersion {
            found: raw.format_version,
        });
    }
    if let Some(tol) = raw.options.tol {
        check_tol("options.tol", tol)?;
    }
    Ok(ChannelDocument {
        channel: raw.channel.to_spec()?,
        options: raw.options,
    })
}
