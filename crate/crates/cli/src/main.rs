use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "ngonlift", version, about = "Sum-of-squares certificates and psd lifts of regular polygons")]
pub struct Cli {
    /// Tolerance override; also read from NGONLIFT_TOL.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build and verify a certificate for the facet functional.
    Certify {
        /// Exponent for the 2^n-gon.
        #[arg(long)]
        n: Option<u32>,
        /// Number of vertices.
        #[arg(long = "N")]
        big_n: Option<usize>,
        #[arg(long, value_enum, default_value_t = CertScheme::PowersOfTwo)]
        scheme: CertScheme,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build, verify and export a psd lift.
    Lift {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long = "N")]
        big_n: Option<usize>,
        #[arg(long, value_enum, default_value_t = LiftKind::Chained)]
        scheme: LiftKind,
        #[arg(long, value_enum, default_value_t = Format::Sdpa)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Try to refute a frequency set with a valid clustering.
    Cluster {
        #[arg(long = "N")]
        big_n: usize,
        /// Comma-separated frequencies in 0..N.
        #[arg(long, value_delimiter = ',')]
        freqs: Vec<i64>,
        /// Close the set under negation first (real frequencies).
        #[arg(long)]
        symmetric: bool,
        /// Instead of --freqs, sample this many sets with |K| < ln(N/2).
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Nonnegative interpolant behind the theta-rank bound.
    ThetaRank {
        #[arg(long = "N")]
        big_n: usize,
    },
    /// CSV samples of a polynomial and one of its tangent lines.
    Figures {
        #[arg(long, value_enum)]
        which: Figure,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long = "N")]
        big_n: Option<usize>,
        /// Tangent point for tangent-lemma (default cos(pi/N)).
        #[arg(long)]
        u: Option<f64>,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a certificate JSON, lift JSON or SDPA file.
    Verify {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertScheme {
    PowersOfTwo,
    Hierarchy,
    Hexagon,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftKind {
    Chained,
    Single,
    Hierarchy,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Sdpa,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    Arithmetic,
    Chebyshev,
    TangentLemma,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(commands::Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
