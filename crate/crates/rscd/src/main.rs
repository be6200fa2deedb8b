//! Command-line front end: parameter validation, artifact generation and
//! verification suites with machine-readable reports.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid parameters.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rscd::{cmd_classical, cmd_eigenbasis, cmd_operators, cmd_spectrum, cmd_validate, cmd_verify};

#[derive(Parser)]
#[command(
    name = "rscd",
    about = "Quantized compactified trigonometric Ruijsenaars-Schneider systems on a finite lattice",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ModelArgs {
    /// Number of particles (n >= 2)
    #[arg(long)]
    n: usize,
    /// Base index, coprime to n
    #[arg(long)]
    p: usize,
    /// Nonzero integer M of the quantization condition
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
    /// Coupling constant g > 0
    #[arg(long, allow_hyphen_values = true)]
    g: f64,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Check parameters and report derived quantities
    Validate {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Eigenvalue tables for every lattice label
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Dense matrices of the difference operators
    Operators {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Which operator family to dump: s, d or h
        #[arg(long, default_value = "s")]
        kind: String,
    },
    /// Build the full eigenbasis and report its diagnostics
    Eigenbasis {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Run the full invariant suite; exit 1 if any check fails
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol_eigen: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol_gram: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol_identity: f64,
    },
    /// Sample the classical Hamiltonians and their identities
    Classical {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn emit<T: Serialize>(report: &T, out: &OutputArgs, csv: Option<String>) -> anyhow::Result<()> {
    let text = match (out.format, csv) {
        (Format::Csv, Some(s)) => s,
        (Format::Csv, None) => anyhow::bail!("this report has no CSV form; use --format json"),
        (Format::Json, _) => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            s
        }
    };
    match &out.output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run() -> anyhow::Result<u8> {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { model, out } => {
            match cmd_validate(model.n, model.p, model.m, model.g) {
                Ok(report) => {
                    emit(&report, &out, None)?;
                    Ok(0)
                }
                Err(e) => {
                    eprintln!("invalid parameters: {e}");
                    Ok(2)
                }
            }
        }
        Command::Spectrum { model, out } => {
            let report = param_err(cmd_spectrum(model.n, model.p, model.m, model.g))?;
            let csv = rscd::spectrum_csv(&report);
            emit(&report, &out, Some(csv))?;
            Ok(0)
        }
        Command::Operators { model, out, kind } => {
            let report = param_err(cmd_operators(model.n, model.p, model.m, model.g, &kind))?;
            emit(&report, &out, None)?;
            Ok(0)
        }
        Command::Eigenbasis { model, out, seed } => {
            let report = param_err(cmd_eigenbasis(model.n, model.p, model.m, model.g, seed))?;
            emit(&report, &out, None)?;
            Ok(0)
        }
        Command::Verify {
            model,
            out,
            seed,
            tol_eigen,
            tol_gram,
            tol_identity,
        } => {
            let tol = rscd::Tolerances {
                tol_eigen,
                tol_gram,
                tol_identity,
            };
            let report = param_err(cmd_verify(model.n, model.p, model.m, model.g, seed, &tol))?;
            emit(&report, &out, None)?;
            if report.all_pass {
                Ok(0)
            } else {
                for c in report.checks.iter().filter(|c| !c.pass) {
                    eprintln!(
                        "FAIL {}: residual {} exceeds tolerance {}",
                        c.name, c.residual, c.tolerance
                    );
                }
                Ok(1)
            }
        }
        Command::Classical {
            model,
            out,
            samples,
            seed,
        } => {
            let report = param_err(cmd_classical(
                model.n, model.p, model.m, model.g, samples, seed,
            ))?;
            emit(&report, &out, None)?;
            Ok(0)
        }
    }
}

/// Maps invalid-parameter errors to exit code 2 through a marker.
fn param_err<T>(r: rscd_core::error::Result<T>) -> anyhow::Result<T> {
    r.map_err(|e| match e {
        rscd_core::Error::InvalidParameter(_) => {
            anyhow::anyhow!(ParamError(format!("invalid parameters: {e}")))
        }
        other => anyhow::anyhow!("{other}"),
    })
}

#[derive(Debug)]
struct ParamError(String);

impl std::fmt::Display for ParamError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ParamError {}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            if e.downcast_ref::<ParamError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
