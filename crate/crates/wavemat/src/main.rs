//! Command-line front end: every verb is a pure function from input
//! documents and flags to an output document on stdout (or `--out`).
//!
//! Exit codes: 0 success, 2 parse/format errors, 3 mathematical errors
//! (certification failures, singularities, class violations). Failures
//! emit a machine-readable JSON payload on stderr.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wavemat::error::{Error, Result};
use wavemat::field::{Qi, TolerancePolicy, C64};
use wavemat::io::{
    approx_report_json, chain_from_json, chain_to_json, check_report_json, matrix_from_json,
    matrix_to_csv, matrix_to_json, params_from_json, params_to_json, row_from_json,
    to_canonical_string, unitary_from_json, ScalarCodec,
};
use wavemat::{complete_from_row, factorize, generate, product_chain, rational_approximate,
    wavelet_to_params};

#[derive(Parser)]
#[command(name = "wavemat", version, about = "Compact wavelet matrices: generate, factor, complete, approximate")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Scalar backend: complex doubles or exact Gaussian rationals.
    #[arg(long, value_enum, default_value_t = Field::C64, global = true)]
    field: Field,

    /// Output file ("-" or omitted for stdout).
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Field {
    C64,
    Qi,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the wavelet matrix attached to a parameter document.
    Generate { input: String },
    /// Recover the parameter point of a wavelet matrix document.
    Params { input: String },
    /// Factor a matrix into its chain of primitive factors.
    Factor { input: String },
    /// Multiply a chain of primitive factors back into a matrix.
    Product { input: String },
    /// Complete a matrix from a first-row document.
    Complete {
        input: String,
        /// Unitary value at z = 1 (defaults to the identity).
        #[arg(long)]
        unitary: Option<String>,
    },
    /// Certify a matrix document and report order, degree, rank, class.
    Check { input: String },
    /// Replace a float matrix by an exactly paraunitary rational one.
    Approx {
        input: String,
        /// Denominator cap for the parameter rounding.
        #[arg(long = "max-den", default_value_t = 10_000)]
        max_den: u64,
    },
    /// Emit the flat row form as CSV (one line per row, m(N+1) scalars).
    Export {
        input: String,
        /// CSV output (the only export format; accepted for explicitness).
        #[arg(long)]
        csv: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let code: u8 = match e {
                Error::Parse(_) => 2,
                _ => 3,
            };
            let payload = json!({ "error": { "exit": code, "message": e.to_string() } });
            eprintln!("{payload}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    match cli.field {
        Field::C64 => run_typed::<C64>(cli),
        Field::Qi => run_typed::<Qi>(cli),
    }
}

fn policy<S: ScalarCodec>() -> Result<TolerancePolicy> {
    let mut pol = TolerancePolicy::for_scalar::<S>();
    if !S::EXACT {
        if let Ok(raw) = std::env::var("WAVEMAT_EPS") {
            let eps: f64 = raw
                .parse()
                .map_err(|_| Error::Parse(format!("WAVEMAT_EPS must be a float, got {raw:?}")))?;
            if !(eps.is_finite() && eps >= 0.0) {
                return Err(Error::Parse(format!("WAVEMAT_EPS must be nonnegative, got {raw}")));
            }
            pol.residual_eps = eps;
        }
    }
    Ok(pol)
}

fn run_typed<S: ScalarCodec>(cli: &Cli) -> Result<()> {
    let pol = policy::<S>()?;
    match &cli.cmd {
        Cmd::Generate { input } => {
            let point = params_from_json::<S>(&read_json(input)?)?;
            let a = generate(&point, &pol)?;
            emit(cli, to_canonical_string(&matrix_to_json(&a)))
        }
        Cmd::Params { input } => {
            let a = matrix_from_json::<S>(&read_json(input)?, &pol)?;
            let point = wavelet_to_params(&a, &pol)?;
            emit(cli, to_canonical_string(&params_to_json(&point)))
        }
        Cmd::Factor { input } => {
            let a = matrix_from_json::<S>(&read_json(input)?, &pol)?;
            let chain = factorize(&a, &pol)?;
            emit(cli, to_canonical_string(&chain_to_json(&chain)))
        }
        Cmd::Product { input } => {
            let chain = chain_from_json::<S>(&read_json(input)?, &pol)?;
            let a = product_chain(&chain, &pol)?;
            emit(cli, to_canonical_string(&matrix_to_json(&a)))
        }
        Cmd::Complete { input, unitary } => {
            let row = row_from_json::<S>(&read_json(input)?)?;
            let v = match unitary {
                Some(path) => Some(unitary_from_json::<S>(&read_json(path)?)?),
                None => None,
            };
            let a = complete_from_row(&row, v, &pol)?;
            emit(cli, to_canonical_string(&matrix_to_json(&a)))
        }
        Cmd::Check { input } => {
            let a = matrix_from_json::<S>(&read_json(input)?, &pol)?;
            emit(cli, to_canonical_string(&check_report_json(&a, &pol)?))
        }
        Cmd::Approx { input, max_den } => {
            // approximation always reads floats and writes exact rationals
            let pol = policy::<C64>()?;
            let a = matrix_from_json::<C64>(&read_json(input)?, &pol)?;
            let (out, report) = rational_approximate(&a, *max_den, &pol)?;
            let doc = json!({
                "matrix": matrix_to_json(&out),
                "report": approx_report_json(&report),
            });
            emit(cli, to_canonical_string(&doc))
        }
        Cmd::Export { input, csv: _ } => {
            let a = matrix_from_json::<S>(&read_json(input)?, &pol)?;
            emit(cli, matrix_to_csv(&a))
        }
    }
}

fn read_json(path: &str) -> Result<Value> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("invalid JSON in {path}: {e}")))
}

fn emit(cli: &Cli, text: String) -> Result<()> {
    match cli.out.as_deref() {
        None | Some("-") => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parse(format!("cannot write {path}: {e}"))),
    }
}
