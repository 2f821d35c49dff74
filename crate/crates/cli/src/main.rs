//! Command-line driver: identity suites, scans and point evaluations.
//!
//! Exit status: 0 when every checked residual is within tolerance, 1 when
//! one is not (or a computation fails), 2 on invalid input.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "heegner",
    version,
    about = "Heegner points, Eisenstein series and moments of class group L-functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Residual tolerance; defaults to the suite's own value.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for random point grids.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced forms and group structure.
    Classgroup {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
    /// Heegner points of level 1 or of level N.
    Heegner {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long)]
        level: Option<i64>,
    },
    /// Evaluate E(s, z), eta(z) or j(z).
    Eval {
        #[arg(value_enum)]
        what: EvalKind,
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        s: Option<(f64, f64)>,
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        z: (f64, f64),
        #[arg(long)]
        level: Option<i64>,
        #[arg(long, value_enum, default_value_t = CuspArg::Inf)]
        cusp: CuspArg,
    },
    /// Exact identities at one discriminant.
    Verify {
        #[arg(value_enum)]
        suite: VerifySuite,
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        s: Option<(f64, f64)>,
    },
    /// Second moment against its main term at s = 1/2 + iT.
    Moment {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// Twisted second moment at s = 1/2 + iT.
    Twisted {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long = "N")]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// Scans over a range of discriminants.
    Scan {
        #[arg(value_enum)]
        kind: ScanKind,
        #[arg(long, allow_hyphen_values = true)]
        dmin: i64,
        #[arg(long, allow_hyphen_values = true)]
        dmax: i64,
        #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
        t: f64,
        /// Largest prime level for twisted-scaling.
        #[arg(long, default_value_t = 110)]
        nmax: i64,
        #[arg(long)]
        out: PathBuf,
        /// Run on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
    /// Truncated integral of B or C over a fundamental domain.
    Integral {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long = "N")]
        n: Option<i64>,
        #[arg(long = "Y")]
        y: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalKind {
    Eisenstein,
    Eta,
    J,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CuspArg {
    Inf,
    #[value(name = "0")]
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifySuite {
    Hecke,
    Kronecker,
    Average,
    Identities,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanKind {
    Remainder,
    TwistedScaling,
    Weyl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
}

fn parse_pair(text: &str) -> Result<(f64, f64), String> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| format!("expected 'a,b', got '{text}'"))?;
    let a: f64 = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let b: f64 = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
    Ok((a, b))
}

pub fn complex((re, im): (f64, f64)) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
