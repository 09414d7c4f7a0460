//! `polycox`: command-line front end for the polycox engine.
//!
//! Every command reads JSON documents from files and writes one JSON document
//! to `--out` (or standard output). A short human-readable summary goes to
//! standard error unless `--quiet` is given.
//!
//! Exit codes: 0 success, 2 malformed input, 3 failed precondition, 4 budget
//! exceeded, 1 internal error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polycox::Error;

#[derive(Parser, Debug)]
#[command(name = "polycox", version, about = "Coherent presentations of monoids by polygraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Do not print the summary on standard error.
    #[arg(long, short, global = true)]
    pub quiet: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Homotopical completion of a presentation (Polygraph2 JSON).
    Complete {
        /// Presentation to complete.
        input: PathBuf,
        /// Termination order: `deglex:t,s,a` lists generators greatest first;
        /// plain `deglex` ranks them by declaration order, last greatest.
        #[arg(long, default_value = "deglex")]
        order: String,
        /// Maximum number of rules, original ones included.
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        budget_rules: u64,
        /// Maximum number of branchings examined.
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        budget_branchings: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Homotopical reduction of a coherent presentation along a collapsible part.
    Reduce {
        /// Coherent presentation (Polygraph31 JSON).
        input: PathBuf,
        /// Collapsible part (JSON) referring to cells of the input by name.
        part: PathBuf,
        /// Also write the reduction report (removed and surviving cells) here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Garside's coherent presentation of a spherical Artin monoid.
    Garside {
        #[command(flatten)]
        matrix: MatrixInput,
        /// Which presentation to emit.
        #[arg(long, value_enum, default_value_t = Stage::Reduced)]
        stage: Stage,
        /// With `--stage completed`: also write the collapsible part that
        /// reduces the completion to the A-family.
        #[arg(long)]
        part_out: Option<PathBuf>,
        #[command(flatten)]
        cosets: Cosets,
        #[command(flatten)]
        common: Common,
    },
    /// Artin's coherent presentation of an Artin monoid.
    Artin {
        #[command(flatten)]
        matrix: MatrixInput,
        #[command(flatten)]
        cosets: Cosets,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate a finite Coxeter group.
    Coxeter {
        #[command(flatten)]
        matrix: MatrixInput,
        #[command(flatten)]
        cosets: Cosets,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Stage {
    /// Generators W∖{1}, one rule per length-additive pair, no 3-cells.
    Raw,
    /// The completed presentation; 3-cells are named by family.
    Completed,
    /// The completion reduced to the A-family of 3-cells.
    Reduced,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Write the JSON result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Step budget for every normalization; POLYCOX_BUDGET_STEPS overrides it.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_steps: Option<u64>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct MatrixInput {
    /// Coxeter matrix (JSON with `generators` and `m`; 0 stands for ∞).
    pub matrix: Option<PathBuf>,
    /// A named type instead of a file: `A3`, `B3`, `H3`, `I2(5)xA1`, `~A2`, ...
    #[arg(long = "type")]
    pub coxeter_type: Option<String>,
}

#[derive(Args, Debug)]
pub struct Cosets {
    /// Coset enumeration cap; exceeding it reports the group as infinite.
    #[arg(long, default_value_t = polycox::coxeter::DEFAULT_COSET_CAP as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_cosets: u64,
}

/// Failure of a command: an engine error, or an I/O error on a named file.
#[derive(Debug)]
pub enum Failure {
    Engine(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(..) => 2,
            Failure::Engine(e) => match e {
                Error::Input(_) | Error::Step(_) | Error::Composition(_) => 2,
                Error::Termination(_)
                | Error::Orientation(..)
                | Error::InvalidPart(_)
                | Error::InfiniteOrUnknown(_)
                | Error::Divisibility(_)
                | Error::Precondition(_) => 3,
                Error::StepBudget(_) | Error::Divergence(_) => 4,
                Error::Coherence(_) | Error::Classification(_) | Error::Cycle(_) => 1,
            },
        }
    }

    fn report(&self) {
        match self {
            Failure::Io(path, e) => eprintln!("error: {}: {e}", path.display()),
            Failure::Engine(Error::InvalidPart(violations)) => {
                eprintln!("error: invalid collapsible part ({} violations)", violations.len());
                for v in violations {
                    eprintln!("  {v}");
                }
            }
            Failure::Engine(e) => eprintln!("error: {e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            f.report();
            ExitCode::from(f.exit_code())
        }
    }
}
