//! Command-line front end: generate colligations, extract their variety
//! polynomials and moduli invariants, decide same-variety, reconstruct
//! polynomials from invariants, run the verification suite, and export
//! variety samples as CSV.
//!
//! Exit codes: 0 success / semantic true, 1 semantic false or
//! verification failure, 2 invalid input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use distvar::io::{
    sheets_csv, BivariatePolyJson, BlockUnitaryJson, InvariantsJson, LOAD_UNITARITY_TOL,
};
use distvar::moduli;
use distvar::transfer::BlockUnitary;
use distvar::variety;
use distvar::verify::{verify, VerifyTolerances};

#[derive(Parser)]
#[command(name = "distvar", version, about = "Distinguished varieties of the bidisk from block unitaries")]
struct Cli {
    /// Halve every tolerance in use.
    #[arg(long, global = true)]
    strict: bool,

    /// Unitarity tolerance applied when loading colligation JSON.
    #[arg(long, global = true, default_value_t = LOAD_UNITARITY_TOL)]
    unitary_tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded Haar-random colligation as JSON.
    Gen {
        m: usize,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute the variety polynomial of a colligation file.
    Poly {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the invariant triple (eig A, eig D, tr BC) as JSON.
    Invariants { input: PathBuf },
    /// Decide whether two colligations cut out the same variety.
    SameVariety {
        input_a: PathBuf,
        input_b: PathBuf,
        #[arg(long, default_value_t = moduli::SAME_VARIETY_TOL)]
        tol: f64,
    },
    /// Rebuild the variety polynomial from an invariants file.
    Reconstruct {
        invariants: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the verification suite and print the report as JSON.
    Verify {
        input: PathBuf,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Export variety samples over a polar mesh as CSV.
    Sheets {
        input: PathBuf,
        #[arg(long, default_value_t = 16)]
        grid: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let unitary_tol = if cli.strict {
        cli.unitary_tol / 2.0
    } else {
        cli.unitary_tol
    };

    match cli.command {
        Command::Gen { m, n, seed, out } => {
            if m == 0 || n == 0 {
                return Err("block sizes m, n must be at least 1".into());
            }
            let u = BlockUnitary::haar(m, n, seed);
            write_json(&out, &BlockUnitaryJson::from_unitary(&u))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Poly { input, out } => {
            let u = load_unitary(&input, unitary_tol)?;
            let q = variety::variety_poly(&u).map_err(|e| e.to_string())?;
            write_json(&out, &BivariatePolyJson::from_poly(&q))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Invariants { input } => {
            let u = load_unitary(&input, unitary_tol)?;
            let inv = moduli::invariants(&u).map_err(|e| e.to_string())?;
            println!("{}", to_pretty(&InvariantsJson::from_invariants(&inv))?);
            Ok(ExitCode::SUCCESS)
        }
        Command::SameVariety { input_a, input_b, tol } => {
            let tol = if cli.strict { tol / 2.0 } else { tol };
            let a = load_unitary(&input_a, unitary_tol)?;
            let b = load_unitary(&input_b, unitary_tol)?;
            let same = moduli::same_variety(&a, &b, tol).map_err(|e| e.to_string())?;
            if same {
                println!("SAME");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("DIFFERENT");
                Ok(ExitCode::from(1))
            }
        }
        Command::Reconstruct { invariants, out } => {
            let raw = fs::read_to_string(&invariants)
                .map_err(|e| format!("{}: {e}", invariants.display()))?;
            let parsed: InvariantsJson =
                serde_json::from_str(&raw).map_err(|e| format!("invalid invariants JSON: {e}"))?;
            let inv = parsed.into_invariants().map_err(|e| e.to_string())?;
            let q = moduli::reconstruct_q(&inv).map_err(|e| e.to_string())?;
            write_json(&out, &BivariatePolyJson::from_poly(&q))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input, samples } => {
            // lenient load: loss of unitarity must be reported, not rejected
            let u = load_unitary_unchecked(&input)?;
            let tols = if cli.strict {
                VerifyTolerances::default().strict()
            } else {
                VerifyTolerances::default()
            };
            let (report, notices) = verify(&u, samples, &tols).map_err(|e| e.to_string())?;
            for notice in notices {
                eprintln!("notice: {notice}");
            }
            println!("{}", to_pretty(&report)?);
            if report.all_passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Sheets { input, grid, out } => {
            let u = load_unitary(&input, unitary_tol)?;
            let points = variety::sample_variety(&u, grid).map_err(|e| e.to_string())?;
            fs::write(&out, sheets_csv(&points)).map_err(|e| format!("{}: {e}", out.display()))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load_unitary(path: &PathBuf, tol: f64) -> Result<BlockUnitary, String> {
    let parsed = read_unitary_json(path)?;
    parsed.into_unitary(tol).map_err(|e| e.to_string())
}

fn load_unitary_unchecked(path: &PathBuf) -> Result<BlockUnitary, String> {
    let parsed = read_unitary_json(path)?;
    parsed.into_unitary_unchecked().map_err(|e| e.to_string())
}

fn read_unitary_json(path: &PathBuf) -> Result<BlockUnitaryJson, String> {
    let raw = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&raw).map_err(|e| format!("invalid colligation JSON: {e}"))
}

fn to_pretty<T: serde::Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value).map_err(|e| e.to_string())
}

fn write_json<T: serde::Serialize>(path: &PathBuf, value: &T) -> Result<(), String> {
    let mut text = to_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}
