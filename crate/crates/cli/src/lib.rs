//! Command-line front end: build operators, run verification suites and
//! emit convergence tables.

pub mod args;
pub mod document;
pub mod sweep;
pub mod verify;

use std::io::Write;
use std::path::Path;

use lattice_digits::{
    arbitrary_shift, coordinate_digit, coordinate_operator, dft_matrix, momentum_digit, momentum_operator_spectral,
    momentum_phase_matrix, momentum_projector, reconstruct_momentum, shift_matrix, LatticeValue, OperatorMatrix,
};
use thiserror::Error;

use args::{BuildArgs, Cli, Command, FormatArg, OpArg, SweepArgs, VerifyArgs};
use document::{MatrixDocument, MatrixMeta};

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or an invalid lattice; exit status 2.
    #[error("{0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

impl From<lattice_digits::Error> for CliError {
    fn from(e: lattice_digits::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Result of a successful invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Passed,
    /// A verification check failed; carries its name.
    Failed(String),
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Build(a) => build_command(&a).map(|_| Outcome::Passed),
        Command::Verify(a) => verify_command(&a),
        Command::Sweep(a) => sweep_command(&a).map(|_| Outcome::Passed),
    }
}

/// Builds the requested operator together with its metadata.
pub fn build(a: &BuildArgs) -> Result<MatrixDocument, CliError> {
    let (system, spec) = a.lattice.spec()?;
    let mut meta = MatrixMeta::new(&spec, system.name(), a.op.name());
    let needs_index = matches!(a.op, OpArg::XDigit | OpArg::PDigit);
    let needs_amount = matches!(a.op, OpArg::Shift | OpArg::Phase | OpArg::Projector);
    if needs_index != a.index.is_some() {
        return Err(CliError::Config(if needs_index {
            format!("--op {} requires --index", a.op.name())
        } else {
            format!("--index does not apply to --op {}", a.op.name())
        }));
    }
    if needs_amount != a.amount.is_some() {
        return Err(CliError::Config(if needs_amount {
            format!("--op {} requires --amount", a.op.name())
        } else {
            format!("--amount does not apply to --op {}", a.op.name())
        }));
    }
    if a.representation.is_some() && !matches!(a.op, OpArg::X | OpArg::P) {
        return Err(CliError::Config(format!("--representation does not apply to --op {}", a.op.name())));
    }
    let amount = a.amount.as_deref().map(|t| args::parse_rational("amount", t)).transpose()?;
    let rep = a.representation.map(Into::into);
    meta.index = a.index;
    meta.amount = amount.as_ref().map(|v| v.to_string());
    meta.representation = rep.map(|r: lattice_digits::Representation| r.name().to_string());

    let m: OperatorMatrix = match a.op {
        OpArg::X => coordinate_operator(&spec, rep.unwrap_or_else(|| system.natural_representation())),
        OpArg::P => match rep {
            Some(rep) => momentum_operator_spectral(&spec, rep)?,
            None => reconstruct_momentum(&spec, system)?,
        },
        OpArg::XDigit => coordinate_digit(&spec, system, a.index.expect("checked above"))?,
        OpArg::PDigit => momentum_digit(&spec, system, a.index.expect("checked above"))?,
        OpArg::Shift => {
            let amount = amount.expect("checked above");
            let steps = &amount / &spec.dx();
            match steps.to_i64().filter(|_| steps.is_integer()) {
                Some(steps) => shift_matrix(&spec, steps)?,
                None => arbitrary_shift(&spec, &amount)?,
            }
        }
        OpArg::Phase => momentum_phase_matrix(&spec, &amount.expect("checked above"))?,
        OpArg::Projector => momentum_projector(&spec, &LatticeValue::momentum(spec, &amount.expect("checked above"))?)?,
        OpArg::Dft => dft_matrix(&spec)?,
        OpArg::Identity => OperatorMatrix::identity(spec.dim()),
    };
    Ok(MatrixDocument::new(meta, &m))
}

fn build_command(a: &BuildArgs) -> Result<(), CliError> {
    let doc = build(a)?;
    let text = match a.format {
        FormatArg::Json => doc.to_json(),
        FormatArg::Csv => doc.to_csv()?,
    };
    emit(a.out.as_deref(), &text)
}

fn verify_command(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let report = verify::run(a.suite, a.max_n, a.tolerance)?;
    let text = match a.format {
        FormatArg::Json => report.to_json(),
        FormatArg::Csv => report.to_csv()?,
    };
    emit(a.out.as_deref(), &text)?;
    Ok(match report.first_failure {
        None => Outcome::Passed,
        Some(name) => Outcome::Failed(name),
    })
}

fn sweep_command(a: &SweepArgs) -> Result<(), CliError> {
    let table = sweep::run(a)?;
    let text = match a.format {
        FormatArg::Json => table.to_json(),
        FormatArg::Csv => table.to_csv()?,
    };
    emit(a.out.as_deref(), &text)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
