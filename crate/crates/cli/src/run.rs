//! Subcommand bodies. Each returns the text for stdout plus an exit status, so the
//! binary only has to print and exit.

use chanforms::analysis::{analyze_with_probe, KrausOutcome, ProbeSettings};
use chanforms::forms::coefficient_matrix_with_tol;
use chanforms::linalg::BlochVector;
use chanforms::{
    apply_a, canonical_decompose, extract_kraus, realign_a_to_b, standard_basis, AForm,
    AnalysisReport, BasisLabel, ChannelSpec, DensityMatrix, Error, OperatorBasis, DEFAULT_TOL,
};
use thiserror::Error as ThisError;

use crate::document::{check_tol, BasisName, ChannelDocument, ParseError};
use crate::render;
use crate::report::{AppliedState, MachineReport, Representation};
use crate::wire::WireMatrix;

pub const TOL_ENV: &str = "CHANFORMS_TOL";
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    InvalidMap = 1,
    Usage = 2,
    NotCompletelyPositive = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error("invalid map: {0}")]
    InvalidMap(Error),
    #[error("{0}")]
    NotCompletelyPositive(Error),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => ExitStatus::Usage,
            CliError::InvalidMap(_) => ExitStatus::InvalidMap,
            CliError::NotCompletelyPositive(_) => ExitStatus::NotCompletelyPositive,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotHermiticityPreserving { .. }
            | Error::NotTracePreserving { .. }
            | Error::IncompleteKraus { .. }
            | Error::NotHermitian { .. }
            | Error::NoConvergence { .. } => CliError::InvalidMap(e),
            Error::NotCompletelyPositive { .. } => CliError::NotCompletelyPositive(e),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputMode {
    #[default]
    Human,
    Machine,
}

/// Options given on the command line; `None` means "not given".
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub basis: Option<BasisName>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub output: OutputMode,
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub basis: OperatorBasis,
    pub tol: f64,
    pub seed: u64,
    pub samples: usize,
    pub output: OutputMode,
}

/// Flag, then document option, then `CHANFORMS_TOL`, then the built-in default.
pub fn resolve_tol(
    flag: Option<f64>,
    doc: Option<f64>,
    env: Option<&str>,
) -> Result<f64, CliError> {
    if let Some(t) = flag {
        return Ok(check_tol("--tol", t)?);
    }
    if let Some(t) = doc {
        return Ok(check_tol("options.tol", t)?);
    }
    if let Some(raw) = env {
        let t: f64 = raw
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{TOL_ENV}={raw:?} is not a number")))?;
        return Ok(check_tol(TOL_ENV, t)?);
    }
    Ok(DEFAULT_TOL)
}

pub fn resolve(
    doc: &ChannelDocument,
    overrides: &Overrides,
    env_tol: Option<&str>,
) -> Result<Settings, CliError> {
    let tol = resolve_tol(overrides.tol, doc.options.tol, env_tol)?;
    let dim = doc
        .channel
        .dim()
        .ok_or_else(|| CliError::Usage("channel has no usable dimension".into()))?;
    let label = overrides
        .basis
        .or(doc.options.basis)
        .map_or_else(|| BasisLabel::default_for(dim), BasisLabel::from);
    let basis = standard_basis(dim, label)?;
    Ok(Settings {
        basis,
        tol,
        seed: overrides.seed.or(doc.options.seed).unwrap_or(DEFAULT_SEED),
        samples: overrides
            .samples
            .or(doc.options.samples)
            .unwrap_or(DEFAULT_SAMPLES),
        output: overrides.output,
    })
}

#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub status: ExitStatus,
}

fn build_valid(spec: &ChannelSpec, tol: f64) -> Result<AForm, CliError> {
    let a = spec.build(tol)?;
    a.validate(tol)?;
    Ok(a)
}

pub fn run_analyze(doc: &ChannelDocument, settings: &Settings) -> Result<Outcome, CliError> {
    let probe = (settings.samples > 0).then_some(ProbeSettings {
        samples: settings.samples,
        seed: settings.seed,
    });
    let report = analyze_with_probe(&doc.channel, &settings.basis, settings.tol, probe)?;
    let status = if report.verdict.is_cp() {
        ExitStatus::Success
    } else {
        ExitStatus::NotCompletelyPositive
    };
    let stdout = match settings.output {
        OutputMode::Machine => machine_report(&report),
        OutputMode::Human => human_report(&report),
    };
    Ok(Outcome { stdout, status })
}

pub fn machine_report(report: &AnalysisReport) -> String {
    crate::json::to_string(&MachineReport::from(report))
}

pub fn human_report(r: &AnalysisReport) -> String {
    let tol = r.tol;
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("channel     {}", r.description));
    line(format!("dimension   {}", r.dim));
    line(format!("basis       {}", r.basis));
    line(format!("tolerance   {}", render::real(tol, 0.0)));
    line(String::new());
    line("A-form".into());
    line(
        render::matrix(r.a.matrix(), tol, "  ")
            .trim_end()
            .to_string(),
    );
    line(format!(
        "  hermiticity residual {}, trace residual {}",
        render::real(r.a_form.hermiticity_residual, tol),
        render::real(r.a_form.trace_residual, tol)
    ));
    line(String::new());
    line("B-form".into());
    line(
        render::matrix(r.b.matrix(), tol, "  ")
            .trim_end()
            .to_string(),
    );
    line(format!(
        "  hermiticity residual {}, trace {}",
        render::real(r.b_form.hermiticity_residual, tol),
        render::complex(r.b_form.trace, tol)
    ));
    line(String::new());
    line(format!("coefficient matrix ({} basis)", r.basis));
    line(
        render::matrix(r.coefficients.matrix(), tol, "  ")
            .trim_end()
            .to_string(),
    );
    line(String::new());
    line("spectra".into());
    line(format!(
        "  coefficient matrix  {}",
        render::list(&r.coefficient_spectrum, tol)
    ));
    line(format!(
        "  B-form              {}",
        render::list(&r.b_spectrum, tol)
    ));
    line(format!(
        "  max deviation       {}",
        render::real(r.spectral_match, tol)
    ));
    line(String::new());
    let verdict = if r.verdict.is_cp() {
        "completely positive"
    } else {
        "NOT completely positive"
    };
    line(format!(
        "verdict: {verdict} (min eigenvalue {})",
        render::real(r.verdict.min_eigenvalue, tol)
    ));
    line(String::new());
    let c = &r.canonical;
    line(format!("canonical form, rank {}", c.rank));
    for (k, (lambda, op)) in c
        .decomposition
        .eigenvalues
        .iter()
        .zip(&c.decomposition.canonical_ops)
        .enumerate()
    {
        line(format!("  lambda_{k} = {}", render::real(*lambda, tol)));
        line(render::matrix(op, tol, "    ").trim_end().to_string());
    }
    line(format!(
        "  reconstruction error {}, completeness error {}, orthonormality error {}",
        render::real(c.reconstruction_error, tol),
        render::real(c.completeness_error, tol),
        render::real(c.orthonormality_error, tol)
    ));
    line(String::new());
    match &r.kraus {
        KrausOutcome::Present(k) => {
            line(format!("Kraus operators ({})", k.len()));
            for (i, e) in k.operators().iter().enumerate() {
                line(format!("  E_{i}"));
                line(render::matrix(e, tol, "    ").trim_end().to_string());
            }
        }
        KrausOutcome::Absent { reason } => line(format!("Kraus operators: none ({reason})")),
    }
    line(String::new());
    line(format!(
        "Choi-state deviation {}",
        render::real(r.choi_deviation, tol)
    ));
    if let Some(p) = &r.positivity_probe {
        line(format!(
            "positivity probe: {} pure states, seed {}, worst output eigenvalue {}",
            p.samples,
            p.seed,
            render::real(p.worst_min_eigenvalue, tol)
        ));
    }
    out
}

/// Input state for `apply`.
#[derive(Debug, Clone, PartialEq)]
pub enum StateInput {
    Bloch([f64; 3]),
    Matrix(WireMatrix),
}

pub fn parse_bloch_arg(text: &str) -> Result<[f64; 3], CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || {
        CliError::Usage(format!(
            "--bloch expects three comma-separated numbers, got {text:?}"
        ))
    };
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut p = [0.0; 3];
    for (slot, part) in p.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|_| bad())?;
    }
    Ok(p)
}

pub fn parse_state_arg(text: &str) -> Result<WireMatrix, CliError> {
    Ok(serde_json::from_str(text).map_err(ParseError::from)?)
}

pub fn run_apply(
    doc: &ChannelDocument,
    settings: &Settings,
    state: &StateInput,
) -> Result<Outcome, CliError> {
    let tol = settings.tol;
    let a = build_valid(&doc.channel, tol)?;
    let rho = match state {
        StateInput::Bloch(p) => DensityMatrix::from_bloch(&BlochVector::new(*p, tol)?),
        StateInput::Matrix(w) => DensityMatrix::new(w.to_matrix("state")?, tol)?,
    };
    if rho.dim() != a.dim() {
        return Err(CliError::Usage(format!(
            "state has dimension {}, channel acts on dimension {}",
            rho.dim(),
            a.dim()
        )));
    }
    let out = apply_a(&a, &rho)?;
    let stdout = match settings.output {
        OutputMode::Machine => crate::json::to_string(&AppliedState::new(&out, tol)),
        OutputMode::Human => {
            let mut s = String::from("output state\n");
            s.push_str(&render::matrix(&out.matrix, tol, "  "));
            if let Some(p) = out.bloch_components() {
                s.push_str(&format!(
                    "Bloch vector ({}, {}, {})\n",
                    render::real(p[0], tol),
                    render::real(p[1], tol),
                    render::real(p[2], tol)
                ));
            }
            s.push_str(&format!(
                "min eigenvalue {}\n",
                render::real(out.min_eigenvalue, tol)
            ));
            if !out.is_positive(tol) {
                s.push_str("warning: output is not positive semidefinite\n");
            }
            s
        }
    };
    Ok(Outcome {
        stdout,
        status: ExitStatus::Success,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    AForm,
    BForm,
    Coefficient,
    Kraus,
    Canonical,
}

pub fn convert(
    doc: &ChannelDocument,
    settings: &Settings,
    target: Target,
) -> Result<Representation, CliError> {
    let tol = settings.tol;
    let a = build_valid(&doc.channel, tol)?;
    let dim = a.dim();
    let basis = BasisName::from(settings.basis.label());
    Ok(match target {
        Target::AForm => Representation::AForm {
            dim,
            matrix: a.matrix().into(),
        },
        Target::BForm => Representation::BForm {
            dim,
            matrix: realign_a_to_b(&a).matrix().into(),
        },
        Target::Coefficient => Representation::Coefficient {
            dim,
            basis,
            matrix: coefficient_matrix_with_tol(&a, &settings.basis, tol)?
                .matrix()
                .into(),
        },
        Target::Kraus => {
            let c = canonical_decompose(&a, &settings.basis, tol)?;
            let kraus = extract_kraus(&c, tol)?;
            Representation::Kraus {
                dim,
                operators: kraus.operators().iter().map(Into::into).collect(),
            }
        }
        Target::Canonical => {
            let c = canonical_decompose(&a, &settings.basis, tol)?;
            Representation::Canonical {
                dim,
                basis,
                eigenvalues: c.eigenvalues.clone(),
                operators: c.canonical_ops.iter().map(Into::into).collect(),
            }
        }
    })
}

pub fn run_convert(
    doc: &ChannelDocument,
    settings: &Settings,
    target: Target,
) -> Result<Outcome, CliError> {
    let rep = convert(doc, settings, target)?;
    let stdout = match settings.output {
        OutputMode::Machine => rep.to_json(),
        OutputMode::Human => human_representation(&rep, settings.tol),
    };
    Ok(Outcome {
        stdout,
        status: ExitStatus::Success,
    })
}

fn human_representation(rep: &Representation, tol: f64) -> String {
    let matrix = |w: &WireMatrix, indent: &str| {
        render::matrix(
            &w.to_matrix("matrix").expect("produced from a valid matrix"),
            tol,
            indent,
        )
    };
    match rep {
        Representation::AForm { matrix: m, .. } => format!("A-form\n{}", matrix(m, "  ")),
        Representation::BForm { matrix: m, .. } => format!("B-form\n{}", matrix(m, "  ")),
        Representation::Coefficient {
            basis, matrix: m, ..
        } => {
            format!(
                "coefficient matrix ({} basis)\n{}",
                BasisLabel::from(*basis),
                matrix(m, "  ")
            )
        }
        Representation::Kraus { operators, .. } => {
            let mut s = format!("Kraus operators ({})\n", operators.len());
            for (i, e) in operators.iter().enumerate() {
                s.push_str(&format!("  E_{i}\n{}", matrix(e, "    ")));
            }
            s
        }
        Representation::Canonical {
            basis,
            eigenvalues,
            operators,
            ..
        } => {
            let mut s = format!("canonical form ({} basis)\n", BasisLabel::from(*basis));
            for (k, (l, op)) in eigenvalues.iter().zip(operators).enumerate() {
                s.push_str(&format!(
                    "  lambda_{k} = {}\n{}",
                    render::real(*l, tol),
                    matrix(op, "    ")
                ));
            }
            s
        }
    }
}

/// Named channels with their parameters and a sample document.
pub const ZOO: &[(&str, &str, &str)] = &[
    (
        "unitary",
        "axis: unit 3-vector, angle: radians",
        r#"{"format_version":"1","channel":{"kind":"unitary","axis":[0,0,1],"angle":3.141592653589793}}"#,
    ),
    (
        "pin",
        "p0: Bloch vector with |p0| <= 1",
        r#"{"format_version":"1","channel":{"kind":"pin","p0":[0,0,0.5]}}"#,
    ),
    (
        "transpose",
        "none",
        r#"{"format_version":"1","channel":{"kind":"transpose"}}"#,
    ),
    (
        "equatorial_projection",
        "none",
        r#"{"format_version":"1","channel":{"kind":"equatorial_projection"}}"#,
    ),
    (
        "bit_flip",
        "p: probability of leaving the state alone",
        r#"{"format_version":"1","channel":{"kind":"bit_flip","p":0.75}}"#,
    ),
    (
        "phase_flip",
        "p: probability of leaving the state alone",
        r#"{"format_version":"1","channel":{"kind":"phase_flip","p":0.75}}"#,
    ),
];

pub fn run_zoo(output: OutputMode) -> Outcome {
    let stdout = match output {
        OutputMode::Human => {
            let mut s = String::new();
            for (kind, params, example) in ZOO {
                let spec = crate::document::parse_channel_document(example)
                    .expect("zoo examples parse")
                    .channel;
                s.push_str(&format!(
                    "{kind}\n  {}\n  parameters: {params}\n  example: {example}\n",
                    spec.describe()
                ));
            }
            s
        }
        OutputMode::Machine => {
            let entries: Vec<serde_json::Value> = ZOO
                .iter()
                .map(|(kind, params, example)| {
                    serde_json::json!({
                        "kind": kind,
                        "parameters": params,
                        "example": serde_json::from_str::<serde_json::Value>(example).expect("valid json"),
                    })
                })
                .collect();
            crate::json::to_string(&entries)
        }
    };
    Outcome {
        stdout,
        status: ExitStatus::Success,
    }
}
