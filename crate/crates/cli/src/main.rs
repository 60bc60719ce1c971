mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Spectral diagnosis and simple-spectrum regularization of quantum channels
/// and Lindbladians.
#[derive(Debug, Parser)]
#[command(name = "scf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spectrum, multiplicities, defectiveness and certificates of a map.
    Inspect {
        file: PathBuf,
    },
    /// Write a channel document for a built-in construction.
    Construct(ConstructArgs),
    /// Move a channel or generator to a nearby simple-spectrum map.
    Regularize {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        eps: f64,
        #[arg(long, value_enum, default_value_t = Budget::Fro)]
        budget: Budget,
        #[arg(long, value_enum, default_value_t = Class::Auto)]
        class: Class,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regularize the Markovian channel e^L, or a product of them.
    Markovian {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        eps: f64,
        /// Further generators L2, L3, ... for the product e^L1 e^L2 ...
        #[arg(long, num_args = 1..)]
        product: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan eigenvalue gaps along the straight path between two maps.
    Scan {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long, default_value_t = 1001)]
        grid: usize,
        #[arg(long)]
        csv: PathBuf,
    },
    /// Exit 0 iff the map certifies as a member of the class.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        class: VerifyClass,
    },
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[command(subcommand)]
    which: Construction,
    /// Representation of the written document.
    #[arg(long, value_enum, default_value_t = RepArg::Superop, global = true)]
    rep: RepArg,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write the generator Φ − id instead of the channel Φ.
    #[arg(long, global = true)]
    generator: bool,
}

#[derive(Debug, Subcommand)]
enum Construction {
    /// The unital channel with n² distinct eigenvalues.
    Psi {
        #[arg(long)]
        dim: usize,
    },
    /// Named qubit examples.
    Example {
        #[arg(long, value_enum)]
        name: Example,
        #[arg(long)]
        mu: Option<f64>,
    },
    /// Unital qubit channel with nilpotent block [[0,a,0],[0,0,b],[0,0,0]].
    Remark {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Example {
    Eq1,
    Reset,
    PhiMu,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Budget {
    Fro,
    Diamond,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Class {
    Auto,
    Cptp,
    Unital,
    Ptp,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerifyClass {
    Cptp,
    Unital,
    Gksl,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RepArg {
    Superop,
    Choi,
    Kraus,
    Ptm,
}

/// Failure modes with distinct exit codes.
#[derive(Debug)]
enum Failure {
    /// Bad input: exit 2.
    Invalid(String),
    /// A procedure error: exit 1.
    Procedure(scf_core::Error),
    /// A certificate did not pass: exit 1.
    NotCertified(String),
}

impl From<scf_core::Error> for Failure {
    fn from(e: scf_core::Error) -> Self {
        Failure::Procedure(e)
    }
}

fn seed() -> Result<u64, Failure> {
    match std::env::var("SCF_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Invalid(format!("SCF_SEED must be an unsigned integer, got {v:?}"))),
        Err(_) => Ok(0),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = seed().and_then(|seed| commands::run(cli.command, seed));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Procedure(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
        Err(Failure::NotCertified(msg)) => {
            eprintln!("not certified: {msg}");
            ExitCode::from(1)
        }
    }
}
