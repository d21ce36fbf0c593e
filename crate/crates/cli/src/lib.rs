//! Command-line front end for `pfaff-core`.
//!
//! [`run`] parses an argument vector, executes one subcommand and returns the
//! exit code together with everything written to stdout and stderr, so the
//! binary and the tests share a single code path.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod bounds_args;
mod commands;
pub mod grid;
pub mod output;
pub mod serial;

pub use output::{Format, Report, SCHEMA};

#[derive(Debug, Parser)]
#[command(name = "pfaffcount", version, about = "Invariant forms, tangent fields and degree bounds for flags on P^n")]
pub struct Cli {
    /// Seed for every randomized input.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension of h^q(Omega^p(k)) or h^s(wedge^r T(t)) on P^n.
    #[command(allow_negative_numbers = true)]
    Bott(BottArgs),
    /// Number of twisted r-forms of degree m invariant by a degree-d field.
    #[command(allow_negative_numbers = true)]
    CountForms(CountFormsArgs),
    /// Number of degree-d fields tangent to a degree-m distribution.
    #[command(allow_negative_numbers = true)]
    CountFields(CountFieldsArgs),
    /// Invariant-form count recomputed as an exact kernel dimension.
    #[command(allow_negative_numbers = true)]
    OracleForms(OracleFormsArgs),
    /// Tangent-field count recomputed as an exact kernel dimension.
    OracleFields(OracleFieldsArgs),
    /// Test i_X w = 0, or kernel containment of two forms at sampled points.
    CheckFlag(CheckFlagArgs),
    /// Test w ^ dw = 0 for a 1-form.
    CheckIntegrable(FormOrExample),
    /// Test w ^ w = 0 for a 2-form.
    CheckDecomposable(FormOnly),
    /// Evaluate a degree bound or stability verdict:
    /// `bounds <id> [--case C] [--params k=v ...] [--key value ...]`.
    Bounds(BoundsArgs),
    /// Slope (dim - deg) / dim of a tangent sheaf.
    #[command(allow_negative_numbers = true)]
    Slope(SlopeArgs),
    /// Run formula-vs-oracle grids and print a pass/fail table.
    VerifyGrid(VerifyGridArgs),
    /// Write a named or random field/form as JSON.
    Example(ExampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sheaf {
    Omega,
    Tangent,
}

#[derive(Debug, Args)]
pub struct BottArgs {
    #[arg(long, value_enum, default_value_t = Sheaf::Omega)]
    pub sheaf: Sheaf,
    #[arg(long)]
    pub n: usize,
    /// Cohomological degree (`s` for the tangent sheaf).
    #[arg(long, visible_alias = "s")]
    pub q: usize,
    /// Form degree (`r` for polyvectors).
    #[arg(long, visible_alias = "r")]
    pub p: usize,
    /// Twist (`t` for polyvectors).
    #[arg(long, visible_alias = "t")]
    pub k: i64,
}

#[derive(Debug, Args)]
pub struct CountFormsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub m: i64,
    #[arg(long)]
    pub r: usize,
}

#[derive(Debug, Args)]
pub struct CountFieldsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub d: i64,
}

#[derive(Debug, Args)]
pub struct OracleFormsArgs {
    /// Field file; otherwise `--paired` or a seeded random field.
    #[arg(long, conflicts_with = "paired")]
    pub field: Option<PathBuf>,
    /// Use the field pairing z_{2k} with z_{2k+1} (n odd).
    #[arg(long)]
    pub paired: bool,
    /// Coefficients for `--paired`, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Vec<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub m: i64,
    #[arg(long)]
    pub r: usize,
    #[arg(long, default_value_t = 20_000)]
    pub max_columns: u128,
    /// Include a kernel basis in the output.
    #[arg(long)]
    pub emit_kernel: bool,
}

#[derive(Debug, Args)]
pub struct OracleFieldsArgs {
    /// Projective 1-form file; otherwise a seeded random one.
    #[arg(long)]
    pub form: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub d: u32,
    #[arg(long, default_value_t = 20_000)]
    pub max_columns: u128,
}

#[derive(Debug, Args)]
pub struct ExampleSpec {
    /// Named construction; only `5.1` is known.
    #[arg(long)]
    pub example: Option<String>,
    #[arg(long)]
    pub d: Option<u32>,
    /// Four coefficients, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Vec<String>,
}

#[derive(Debug, Args)]
pub struct CheckFlagArgs {
    /// Foliation by curves (lower leg).
    #[arg(long, conflicts_with = "lower_form")]
    pub field: Option<PathBuf>,
    /// Lower leg given by a form; compared pointwise.
    #[arg(long)]
    pub lower_form: Option<PathBuf>,
    /// Upper leg.
    #[arg(long)]
    pub form: Option<PathBuf>,
    #[command(flatten)]
    pub example: ExampleSpec,
    /// Regular points sampled for the pointwise test.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct FormOrExample {
    #[arg(long)]
    pub form: Option<PathBuf>,
    #[command(flatten)]
    pub example: ExampleSpec,
}

#[derive(Debug, Args)]
pub struct FormOnly {
    #[arg(long)]
    pub form: PathBuf,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Theorem id followed by its options.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true, num_args = 1.., required = true)]
    pub args: Vec<String>,
}

#[derive(Debug, Args)]
pub struct SlopeArgs {
    #[arg(long)]
    pub dim: u64,
    #[arg(long)]
    pub deg: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridName {
    All,
    P3Forms,
    P4Forms,
    P3Fields,
}

#[derive(Debug, Args)]
pub struct VerifyGridArgs {
    #[arg(long, value_enum, default_value_t = GridName::All)]
    pub grid: GridName,
    /// Extend the form grids up to this degree m.
    #[arg(long)]
    pub m_max: Option<i64>,
    #[arg(long, default_value_t = 20_000)]
    pub max_columns: u128,
    #[arg(long, default_value_t = 5)]
    pub max_resamples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleKind {
    /// The pencil flag on P^3: `--d` and `--a`.
    #[value(name = "5.1")]
    Pencil,
    /// Field pairing coordinates: `--n` (odd), `--d`, `--a`.
    Paired,
    /// Random field: `--n`, `--d`.
    RandomField,
    /// Random twisted form: `--n`, `--r`, `--m`.
    RandomForm,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ExampleArgs {
    #[arg(value_enum)]
    pub kind: ExampleKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub m: Option<i64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Vec<String>,
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Failure classes, mapped to exit codes 2 and 1.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

/// What a command produced: the report, and whether it counts as a failure
/// (a grid mismatch, say) even though it ran to completion.
pub struct Produced {
    pub report: Report,
    pub failed: bool,
    /// Overrides the global format, for options parsed outside clap.
    pub format: Option<Format>,
}

impl From<Report> for Produced {
    fn from(report: Report) -> Self {
        Produced {
            report,
            failed: false,
            format: None,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match commands::execute(&cli) {
        Ok(p) => Outcome {
            code: i32::from(p.failed),
            stdout: p.report.render(p.format.unwrap_or(cli.format)),
            stderr: String::new(),
        },
        Err(e) => {
            let mut stderr = format!("error: {e}\n");
            if let CliError::Usage(_) = e {
                stderr.push_str("\nFor usage, try 'pfaffcount --help'.\n");
            }
            Outcome {
                code: e.code(),
                stdout: String::new(),
                stderr,
            }
        }
    }
}
