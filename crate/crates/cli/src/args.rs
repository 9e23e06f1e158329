//! Command-line arguments and their translation into lattice objects.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lattice_digits::{Base, Boundary, DigitSystem, ExactRational, Flavor, LatticeSpec, Offset, Representation};

use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "lattice-digits")]
#[command(about = "Digit operators of coordinate and momentum on finite lattices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build one operator and write it as a matrix document
    Build(BuildArgs),
    /// Run a verification suite and report every check
    Verify(VerifyArgs),
    /// Emit a convergence table
    Sweep(SweepArgs),
}

#[derive(Args, Debug, Clone)]
pub struct LatticeArgs {
    /// Number base q
    #[arg(long, default_value_t = 3)]
    pub base: u32,

    /// Digit flavor
    #[arg(long, value_enum, default_value_t = SystemArg::Symmetric)]
    pub system: SystemArg,

    /// Total digit count; the lattice has q^n nodes
    #[arg(long, default_value_t = 1)]
    pub n: u32,

    /// Digits after the point; the coordinate step is q^(-n_minus)
    #[arg(long, default_value_t = 0)]
    pub n_minus: u32,

    /// Boundary condition; defaults to the one the digit system needs
    #[arg(long, value_enum)]
    pub boundary: Option<BoundaryArg>,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,

    /// Operator to build
    #[arg(long, value_enum)]
    pub op: OpArg,

    /// Digit index for digit operators
    #[arg(long, allow_hyphen_values = true)]
    pub index: Option<i32>,

    /// Exact rational argument: shift amount, phase B or momentum value
    #[arg(long, allow_hyphen_values = true)]
    pub amount: Option<String>,

    /// Labels for the spectrum of x and p
    #[arg(long, value_enum)]
    pub representation: Option<RepresentationArg>,

    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,

    /// Output path; standard output when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: SuiteArg,

    /// Largest n visited by the lattice sweeps
    #[arg(long, default_value_t = 4)]
    pub max_n: u32,

    /// Max-abs entrywise tolerance for matrix comparisons
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,

    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(value_enum)]
    pub sweep: SweepArg,

    #[command(flatten)]
    pub lattice: LatticeArgs,

    /// Momentum digit index for the line sweep
    #[arg(long, allow_hyphen_values = true, default_value_t = -1)]
    pub index: i32,

    /// Largest |D| compared in the line sweep
    #[arg(long, default_value_t = 3)]
    pub d_max: u32,

    /// Point x of the integral sweep
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub amount: String,

    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemArg {
    Symmetric,
    Nonsymmetric,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryArg {
    Periodic,
    Antiperiodic,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepresentationArg {
    Nonnegative,
    Signed,
    Renormalized,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpArg {
    /// Coordinate operator x
    X,
    /// Momentum operator p as the weighted digit sum
    P,
    /// Coordinate digit x_s
    XDigit,
    /// Momentum digit p_r
    PDigit,
    /// Coordinate shift T_A
    Shift,
    /// Momentum shift S_B = exp(-2πi x B)
    Phase,
    /// Projector onto a momentum eigenstate
    Projector,
    /// Discrete Fourier transform
    Dft,
    Identity,
}

impl OpArg {
    pub fn name(self) -> &'static str {
        match self {
            OpArg::X => "x",
            OpArg::P => "p",
            OpArg::XDigit => "x-digit",
            OpArg::PDigit => "p-digit",
            OpArg::Shift => "shift",
            OpArg::Phase => "phase",
            OpArg::Projector => "projector",
            OpArg::Dft => "dft",
            OpArg::Identity => "identity",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SuiteArg {
    Examples,
    Oracle,
    Commutators,
    Renorm,
    Integral,
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepArg {
    LineConvergence,
    IntegralConvergence,
    Ln3Series,
}

impl From<RepresentationArg> for Representation {
    fn from(r: RepresentationArg) -> Self {
        match r {
            RepresentationArg::Nonnegative => Representation::Nonnegative,
            RepresentationArg::Signed => Representation::Signed,
            RepresentationArg::Renormalized => Representation::Renormalized,
        }
    }
}

impl LatticeArgs {
    pub fn system(&self) -> Result<DigitSystem, CliError> {
        let base = Base::from_radix(self.base)?;
        let flavor = match self.system {
            SystemArg::Symmetric => Flavor::Symmetric,
            SystemArg::Nonsymmetric => Flavor::Nonsymmetric,
        };
        Ok(DigitSystem::new(base, flavor))
    }

    /// The lattice of the chosen system, with the boundary overridden when
    /// one is given explicitly.
    pub fn spec(&self) -> Result<(DigitSystem, LatticeSpec), CliError> {
        let system = self.system()?;
        let default = LatticeSpec::for_system(system, self.n, self.n_minus)?;
        let spec = match self.boundary {
            None => default,
            Some(b) => {
                let boundary = match b {
                    BoundaryArg::Periodic => Boundary::Periodic,
                    BoundaryArg::Antiperiodic => Boundary::Antiperiodic,
                };
                let offset = if system.needs_half_lattices() { Offset::HalfStep } else { Offset::None };
                LatticeSpec::with_options(system.base, self.n, self.n_minus, boundary, offset)?
                    .with_basis(default.basis)
            }
        };
        Ok((system, spec))
    }
}

pub fn parse_rational(flag: &str, text: &str) -> Result<ExactRational, CliError> {
    text.parse()
        .map_err(|_| CliError::Config(format!("--{flag} expects an exact rational such as 2/9, got {text:?}")))
}
