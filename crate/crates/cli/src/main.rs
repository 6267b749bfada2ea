//! `qwb`: command-line front end to the exact engine for quantized walled
//! Brauer algebras `B_{r,s}`.

mod cache;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use qwb::cellular::CellularError;
use qwb::engine::EngineError;
use qwb::field::{parse_field_specs, Field, FieldError};
use qwb::repthy::{Mode, RepthyError};

use output::Format;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Integrity(String),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Invalid(_) => CliError::Usage(e.to_string()),
            EngineError::Field(f) => f.into(),
            other => CliError::Integrity(other.to_string()),
        }
    }
}

impl From<CellularError> for CliError {
    fn from(e: CellularError) -> Self {
        match e {
            CellularError::Engine(x) => x.into(),
            CellularError::InvalidLabel(..) => CliError::Usage(e.to_string()),
            CellularError::Integrity(_) => CliError::Integrity(e.to_string()),
        }
    }
}

impl From<RepthyError> for CliError {
    fn from(e: RepthyError) -> Self {
        match e {
            RepthyError::Cellular(x) => x.into(),
            RepthyError::Engine(x) => x.into(),
            RepthyError::Field(x) => x.into(),
            RepthyError::Invalid(_) => CliError::Usage(e.to_string()),
            RepthyError::Integrity(_) => CliError::Integrity(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "qwb",
    version,
    about = "Exact computations in quantized walled Brauer algebras B_{r,s}"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Number of strands on the left of the wall.
    #[arg(long)]
    pub r: usize,
    /// Number of strands on the right of the wall.
    #[arg(long)]
    pub s: usize,
    /// Field: generic, q-power:N, neg-q-power:N, delta-zero[:neg],
    /// rational:Q,RHO, gfp:P,Q,RHO, or rho2:A for both rho = ±q^A.
    /// May be repeated.
    #[arg(long = "field", default_value = "generic")]
    pub fields: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Directory for cached engines.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Override the size bound on r+s.
    #[arg(long)]
    pub bound: Option<usize>,
}

impl Common {
    fn fields(&self) -> Result<Vec<Field>, CliError> {
        let mut out = Vec::new();
        for f in &self.fields {
            for spec in parse_field_specs(f)? {
                out.push(Field::new(spec)?);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    ClosedForm,
    Gram,
    Both,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::ClosedForm => Mode::ClosedForm,
            ModeArg::Gram => Mode::Gram,
            ModeArg::Both => Mode::Both,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cell module dimensions and the sum-of-squares identity.
    Dims(Common),
    /// Check the defining and derived relations.
    Relations(Common),
    /// Validate the cellular basis.
    Cellular(Common),
    /// Gram matrix of the cell module C(f,λ).
    Gram {
        f: usize,
        /// Bipartition such as "[2,1];[1]".
        lambda: String,
        #[command(flatten)]
        common: Common,
    },
    /// Central character of every cell module.
    Central(Common),
    /// Labels of the simple modules and quasi-heredity.
    Simples(Common),
    /// Semisimplicity verdict.
    Semisimple {
        #[arg(long, value_enum, default_value_t = ModeArg::ClosedForm)]
        mode: ModeArg,
        #[command(flatten)]
        common: Common,
    },
    /// Restriction of C(f,λ) to B_{r-1,s}.
    Branch {
        f: usize,
        lambda: String,
        #[command(flatten)]
        common: Common,
    },
    /// Closed form against Gram determinants on the grid rho = ±q^a.
    Sweep(Common),
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let (name, common) = match &cli.command {
        Command::Dims(c) => ("dims", c),
        Command::Relations(c) => ("relations", c),
        Command::Cellular(c) => ("cellular", c),
        Command::Gram { common, .. } => ("gram", common),
        Command::Central(c) => ("central", c),
        Command::Simples(c) => ("simples", c),
        Command::Semisimple { common, .. } => ("semisimple", common),
        Command::Branch { common, .. } => ("branch", common),
        Command::Sweep(c) => ("sweep", c),
    };
    if common.r == 0 || common.s == 0 {
        return Err(CliError::Usage("r and s must be positive".into()));
    }
    let ctx = commands::Context::new(common);
    let runs = match &cli.command {
        Command::Sweep(_) => vec![commands::sweep(&ctx)?],
        cmd => {
            let mut runs = Vec::new();
            for field in common.fields()? {
                runs.push(match cmd {
                    Command::Dims(_) => commands::dims(&ctx, &field),
                    Command::Relations(_) => commands::relations(&ctx, &field)?,
                    Command::Cellular(_) => commands::cellular(&ctx, &field)?,
                    Command::Gram { f, lambda, .. } => commands::gram(&ctx, &field, *f, lambda)?,
                    Command::Central(_) => commands::central(&ctx, &field)?,
                    Command::Simples(_) => commands::simples(&ctx, &field)?,
                    Command::Semisimple { mode, .. } => {
                        commands::semisimple(&ctx, &field, (*mode).into())?
                    }
                    Command::Branch { f, lambda, .. } => {
                        commands::branch(&ctx, &field, *f, lambda)?
                    }
                    Command::Sweep(_) => unreachable!(),
                });
            }
            runs
        }
    };
    print!(
        "{}",
        output::render(common.format, name, common.r, common.s, &runs)
    );
    Ok(runs.iter().all(|x| x.ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// The label `(f, λ)` for `B_{r,s}`, or a usage error.
pub fn parse_label(
    r: usize,
    s: usize,
    f: usize,
    lambda: &str,
) -> Result<qwb::combinat::CellLabel, CliError> {
    let lambda = lambda
        .parse()
        .map_err(|e: qwb::combinat::CombinatError| CliError::Usage(e.to_string()))?;
    let label = qwb::combinat::CellLabel::new(f, lambda);
    if !label.is_valid(r, s) {
        return Err(CliError::Usage(format!(
            "label {label} is not valid for B_{{{r},{s}}}"
        )));
    }
    Ok(label)
}
