//! Command-line front end for the `flattice` library.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use report::{Failure, Report};

#[derive(Parser, Debug)]
#[command(name = "flattice", version, about = "Exact f-algebras on finite function lattices")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input documents, in the order the subcommand expects.
    #[arg(long = "in", value_name = "FILE", num_args = 1.., global = true)]
    inputs: Vec<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    out: Format,

    /// Seed for randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Bound on points for sign-cell enumeration (overrides FLATTICE_MAX_POINTS).
    #[arg(long, global = true)]
    max_points: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Verify the f-algebra axioms of an algebra document.
    Check,
    /// Print the weight representing the multiplication.
    Weight,
    /// Sublattice generated by a subspace document, with certificates.
    Closure,
    /// Tensor product of two algebras.
    Tensor,
    /// Decide whether the algebra is semi-prime.
    Semiprime,
    /// Find the multiplicative identity.
    Identity,
    /// Quotient by the nilpotent band.
    Quotient,
    /// Check a homomorphism A → C: lattice and algebra properties.
    HomCheck,
    /// Multiplicative extension from a subalgebra X (inputs: A B T X).
    HomExtend,
    /// Universal property of the tensor product (inputs: A B C T_A T_B).
    Universal,
    /// Run the randomized property suite.
    Selftest {
        /// Instances per property (costlier properties run half as many).
        #[arg(long)]
        instances: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Weight => "weight",
            Command::Closure => "closure",
            Command::Tensor => "tensor",
            Command::Semiprime => "semiprime",
            Command::Identity => "identity",
            Command::Quotient => "quotient",
            Command::HomCheck => "hom-check",
            Command::HomExtend => "hom-extend",
            Command::Universal => "universal",
            Command::Selftest { .. } => "selftest",
        }
    }
}

/// `--max-points`, else `FLATTICE_MAX_POINTS`, else the library default.
fn enumeration_bound(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var("FLATTICE_MAX_POINTS") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("FLATTICE_MAX_POINTS={s:?} is not a number"))),
        Err(_) => Ok(flattice::DEFAULT_MAX_POINTS),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = enumeration_bound(cli.max_points).and_then(|bound| {
        let ctx = commands::Context {
            inputs: &cli.inputs,
            seed: cli.seed,
            max_points: bound,
        };
        commands::run(&cli.command, &ctx)
    });
    let report = Report::new(cli.command.name(), &cli.inputs, outcome, start.elapsed());
    match cli.out {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    ExitCode::from(report.exit_code())
}
