use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use chanforms_cli::document::BasisName;
use chanforms_cli::parse_channel_document;
use chanforms_cli::run::{
    self, parse_bloch_arg, parse_state_arg, CliError, Outcome, OutputMode, Overrides, StateInput,
    Target, TOL_ENV,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Inspect finite-dimensional quantum maps through their A-form, B-form, coefficient
/// matrix and canonical operator-sum decomposition.
#[derive(Parser)]
#[command(name = "chanforms", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args)]
struct GlobalArgs {
    /// Operator basis for the coefficient matrix [default: pauli for qubits, units otherwise]
    #[arg(long, global = true, value_enum)]
    basis: Option<BasisArg>,
    /// Numerical tolerance [default: document option, then $CHANFORMS_TOL, then 1e-9]
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for the positivity probe [default: 0]
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Random pure states fed to the positivity probe; 0 disables it [default: 100]
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutputArg::Human)]
    output: OutputArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Pauli,
    Units,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum OutputArg {
    Human,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    #[value(alias = "a_form")]
    AForm,
    #[value(alias = "b_form")]
    BForm,
    Coefficient,
    Kraus,
    Canonical,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: validity, spectra, CP verdict, canonical form, Kraus operators
    Analyze {
        /// Channel document, or `-` for stdin
        document: PathBuf,
    },
    /// Apply the map to a state
    Apply {
        document: PathBuf,
        /// Qubit input as a Bloch vector, e.g. `0.2,-0.3,0.9`
        #[arg(
            long,
            allow_hyphen_values = true,
            conflicts_with = "state",
            required_unless_present = "state"
        )]
        bloch: Option<String>,
        /// Density matrix in the wire format, e.g. `[[[1,0],[0,0]],[[0,0],[0,0]]]`
        #[arg(long)]
        state: Option<String>,
    },
    /// Emit one representation of the map
    Convert {
        document: PathBuf,
        #[arg(long, value_enum)]
        to: TargetArg,
    },
    /// List the named channels
    Zoo,
}

fn read_document(path: &PathBuf) -> Result<String, CliError> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("reading {}: {e}", path.display())))?;
    }
    Ok(text)
}

fn execute(cli: Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    let overrides = Overrides {
        basis: g.basis.map(|b| match b {
            BasisArg::Pauli => BasisName::Pauli,
            BasisArg::Units => BasisName::Units,
        }),
        tol: g.tol,
        seed: g.seed,
        samples: g.samples,
        output: match g.output {
            OutputArg::Human => OutputMode::Human,
            OutputArg::Machine => OutputMode::Machine,
        },
    };
    let env_tol = std::env::var(TOL_ENV).ok();
    let load = |path: &PathBuf| -> Result<_, CliError> {
        let doc = parse_channel_document(&read_document(path)?)?;
        let settings = run::resolve(&doc, &overrides, env_tol.as_deref())?;
        Ok((doc, settings))
    };
    match &cli.command {
        Command::Analyze { document } => {
            let (doc, settings) = load(document)?;
            run::run_analyze(&doc, &settings)
        }
        Command::Apply {
            document,
            bloch,
            state,
        } => {
            let (doc, settings) = load(document)?;
            let input = match (bloch, state) {
                (Some(b), _) => StateInput::Bloch(parse_bloch_arg(b)?),
                (None, Some(s)) => StateInput::Matrix(parse_state_arg(s)?),
                (None, None) => unreachable!("clap requires one of --bloch, --state"),
            };
            run::run_apply(&doc, &settings, &input)
        }
        Command::Convert { document, to } => {
            let (doc, settings) = load(document)?;
            let target = match to {
                TargetArg::AForm => Target::AForm,
                TargetArg::BForm => Target::BForm,
                TargetArg::Coefficient => Target::Coefficient,
                TargetArg::Kraus => Target::Kraus,
                TargetArg::Canonical => Target::Canonical,
            };
            run::run_convert(&doc, &settings, target)
        }
        Command::Zoo => Ok(run::run_zoo(overrides.output)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.status.code() as u8)
        }
        Err(e) => {
            eprintln!("chanforms: {e}");
            ExitCode::from(e.status().code() as u8)
        }
    }
}
