mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qci_core::instances::instance;
use qci_core::{parse_ring_spec, FieldSpec, GradedRingPresentation, PrimeField, RationalField};

use crate::commands::{execute, CliError};

#[derive(Parser, Debug)]
#[command(
    name = "qci",
    version,
    about = "Quasi-complete intersection analysis of graded quotient rings"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Verb {
    /// Complete intersection, quasi-complete intersection and exact zero-divisor checks for an ideal
    Analyze(Common),
    /// Exact zero-divisor test for one element
    Ezd {
        #[command(flatten)]
        common: Common,
        /// Element to test; defaults to the single generator of --ideal
        #[arg(long)]
        element: Option<String>,
    },
    /// Scan linear forms of an artinian ring for exact zero-divisors
    EzdSearch {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        max_hits: Option<usize>,
    },
    /// Tate complex of R/I checked against the minimal resolution
    Tate(Common),
    /// Graded Betti numbers of R/I, or of k without --ideal
    Betti(Common),
    /// Hilbert and Poincaré series
    Series(Common),
    /// Deviations of R
    Deviations(Common),
    /// Evaluate both sides of the structural identities on an ideal
    Verify {
        check: CheckName,
        #[command(flatten)]
        common: Common,
        /// Module N for the module comparison: the residue field or S itself
        #[arg(long, value_enum, default_value_t = ModuleChoice::Residue)]
        module: ModuleChoice,
    },
    /// Dimension, depth, embedding dimension and defects
    Invariants(Common),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckName {
    Grade,
    Deviations,
    Poincare,
    ModulePoincare,
    Hierarchy,
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleChoice {
    Residue,
    Quotient,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Ring definition file
    ring: Option<PathBuf>,
    /// Built-in instance instead of a ring file
    #[arg(long, conflicts_with = "ring")]
    instance: Option<String>,
    /// Comma-separated generators, or `maximal`
    #[arg(long)]
    ideal: Option<String>,
    /// Homological degree bound
    #[arg(short = 'D', long = "bound", default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    bound: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Record wall-clock time in the report
    #[arg(long)]
    timing: bool,
}

impl Verb {
    fn common(&self) -> &Common {
        match self {
            Verb::Analyze(c)
            | Verb::Tate(c)
            | Verb::Betti(c)
            | Verb::Series(c)
            | Verb::Deviations(c)
            | Verb::Invariants(c) => c,
            Verb::Ezd { common, .. }
            | Verb::EzdSearch { common, .. }
            | Verb::Verify { common, .. } => common,
        }
    }
}

/// Ring presentation, label and ideal text selected by the common arguments.
pub struct Input {
    pub presentation: GradedRingPresentation,
    pub label: String,
    pub ideal: Option<String>,
    pub bound: usize,
    pub seed: u64,
}

fn load(common: &Common) -> Result<Input, CliError> {
    let (presentation, label, default_ideal) = match (&common.ring, &common.instance) {
        (_, Some(name)) => {
            let inst = instance(name)
                .ok_or_else(|| CliError::Usage(format!("unknown instance `{name}`")))?;
            let ideal = match inst.ideal {
                qci_core::instances::IdealSpec::Maximal => "maximal".to_string(),
                qci_core::instances::IdealSpec::Generators(g) => g.join(", "),
            };
            (inst.presentation(), inst.name.to_string(), Some(ideal))
        }
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
                std::io::ErrorKind::NotFound => {
                    CliError::Usage(format!("file not found: {}", path.display()))
                }
                _ => CliError::Usage(format!("cannot read {}: {e}", path.display())),
            })?;
            let p = parse_ring_spec(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            (p, path.display().to_string(), None)
        }
        (None, None) => {
            return Err(CliError::Usage(
                "a ring file or --instance is required".into(),
            ))
        }
    };
    Ok(Input {
        presentation,
        label,
        ideal: common.ideal.clone().or(default_ideal),
        bound: common.bound as usize,
        seed: common.seed,
    })
}

fn run(verb: &Verb) -> Result<report::Report, CliError> {
    let common = verb.common();
    let input = load(common)?;
    let start = Instant::now();
    let mut report = match input.presentation.field {
        FieldSpec::Prime(p) => {
            execute(verb, &input, PrimeField::new(p).map_err(CliError::Algebra)?)
        }
        FieldSpec::Rationals => execute(verb, &input, RationalField),
    }?;
    if common.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.verb) {
        Ok(report) => {
            match cli.verb.common().format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            if report.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
