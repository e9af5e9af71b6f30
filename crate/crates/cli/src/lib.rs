//! cck command-line front end.
//!
//! Every invocation prints one JSON document on stdout: a report
//! `{subcommand, input_digest, result, warnings, version}` or an error
//! `{subcommand, input_digest, error: {kind, message}, version}`.
//! Exit codes: 0 success, 1 corpus mismatch, 2 bad input, 3 internal
//! consistency failure.

pub mod commands;
pub mod corpus;
pub mod request;
pub mod wire;

use std::collections::BTreeMap;
use std::path::PathBuf;

use cck_core::Error;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use request::{load_json_text, Request};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "cck", version, about = "Exact homology of infinite cyclic covers and related checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a ℤ[t^±1]-module is finitely generated over ℤ.
    Fingen(Flags),
    /// Order ideal (gcd of maximal minors) of a module presentation.
    OrderIdeal(Flags),
    /// Twisted complex of a mapping torus and its infinite-cover homology.
    MappingTorus(Flags),
    /// Homology of the q-fold cover (or the infinite cover without --q).
    CoverHomology(Flags),
    /// Cover dimensions from the Wang sequence.
    Wang(Flags),
    /// Check hbar T = T^(±k) hbar on infinite-cover homology for given hbar.
    VerifySelfcover(Flags),
    /// Check dim H_j(X_q) <= rank C_j for a list of q.
    DimensionBound(Flags),
    /// Minimal m with A^m = I given B A^k B^-1 = A^(±1).
    PropMatrix(Flags),
    /// Period of a monodromy from conjugation witnesses.
    Periodicity(Flags),
    /// Relative class number h_p^- of the p-th cyclotomic field.
    HpMinus(Flags),
    /// Class-number gate for a prime p.
    Gate(Flags),
    /// Run every case in a corpus directory.
    Corpus(CorpusArgs),
}

#[derive(Args, Debug, Default)]
struct Flags {
    /// Module presentation, inline JSON or @file.
    #[arg(long)]
    module: Option<String>,
    /// Twisted chain complex or mapping-torus input, inline JSON or @file.
    #[arg(long)]
    complex: Option<String>,
    /// Map data, inline JSON or @file.
    #[arg(long)]
    f: Option<String>,
    /// Residue field: Q or Fp:<p>.
    #[arg(long)]
    kappa: Option<String>,
    /// Cover degree, or a comma-separated list for dimension-bound.
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    k: Option<String>,
    /// 1 or -1.
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<String>,
    #[arg(long)]
    p: Option<String>,
    /// h_p^+ table (CSV).
    #[arg(long)]
    fixture: Option<String>,
    /// Chain homotopy data for verify-selfcover, inline JSON or @file.
    #[arg(long)]
    hbar: Option<String>,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CorpusArgs {
    #[arg(default_value = "data/corpus")]
    dir: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::MixedRings { .. } => "mixed_rings",
        Error::InvalidInput(_) => "invalid_input",
        Error::ShapeMismatch(_) => "shape_mismatch",
        Error::NotSquare { .. } => "not_square",
        Error::NotInvertible(_) => "not_invertible",
        Error::InvalidComplex(_) => "invalid_complex",
        Error::FreePart { .. } => "free_part",
        Error::Precondition(_) => "precondition",
        Error::Parse(_) => "parse",
        Error::Internal(_) => "internal",
    }
}

pub fn error_json(e: &Error) -> Value {
    json!({"kind": error_kind(e), "message": e.to_string()})
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_internal() {
        3
    } else {
        2
    }
}

/// Runs a request and wraps the outcome in a report; returns the exit code
/// alongside.
pub fn report(req: &Request) -> (i32, Value) {
    let mut obj = json!({
        "subcommand": req.subcommand,
        "input_digest": req.digest(),
        "version": VERSION,
    });
    let code = match commands::execute(req) {
        Ok(out) => {
            obj["result"] = out.result;
            obj["warnings"] = json!(out.warnings);
            0
        }
        Err(e) => {
            obj["error"] = error_json(&e);
            exit_code(&e)
        }
    };
    (code, obj)
}

fn flags_request(subcommand: &str, flags: Flags) -> Result<(Request, Option<PathBuf>), Error> {
    let base_dir = PathBuf::from(".");
    let mut args = BTreeMap::new();
    // Structured flags are parsed up front so the digest covers content,
    // not the spelling of the command line.
    for (key, val) in [("module", flags.module), ("complex", flags.complex), ("f", flags.f), ("hbar", flags.hbar)] {
        if let Some(text) = val {
            args.insert(key.to_string(), load_json_text(&text, &base_dir)?);
        }
    }
    for (key, val) in [
        ("kappa", flags.kappa),
        ("q", flags.q),
        ("k", flags.k),
        ("sign", flags.sign),
        ("p", flags.p),
        ("fixture", flags.fixture),
    ] {
        if let Some(text) = val {
            args.insert(key.to_string(), Value::String(text));
        }
    }
    Ok((Request { subcommand: subcommand.to_string(), args, base_dir }, flags.out))
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn usage_error(message: String) -> (i32, String) {
    let v = json!({
        "subcommand": null,
        "error": {"kind": "usage", "message": message},
        "version": VERSION,
    });
    (2, render(&v))
}

fn write_out(path: Option<PathBuf>, text: &str) -> Option<(i32, String)> {
    let path = path?;
    std::fs::write(&path, text)
        .err()
        .map(|e| usage_error(format!("cannot write {}: {e}", path.display())))
}

/// Parses `argv` (including the program name) and returns the exit code
/// and the text for stdout.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                _ => usage_error(e.to_string()),
            };
        }
    };
    let (name, flags) = match cli.command {
        Command::Corpus(c) => {
            let (code, v) = corpus::run_corpus(&c.dir);
            let text = render(&v);
            if let Some(fail) = write_out(c.out, &text) {
                return fail;
            }
            return (code, text);
        }
        Command::Fingen(f) => ("fingen", f),
        Command::OrderIdeal(f) => ("order-ideal", f),
        Command::MappingTorus(f) => ("mapping-torus", f),
        Command::CoverHomology(f) => ("cover-homology", f),
        Command::Wang(f) => ("wang", f),
        Command::VerifySelfcover(f) => ("verify-selfcover", f),
        Command::DimensionBound(f) => ("dimension-bound", f),
        Command::PropMatrix(f) => ("prop-matrix", f),
        Command::Periodicity(f) => ("periodicity", f),
        Command::HpMinus(f) => ("hp-minus", f),
        Command::Gate(f) => ("gate", f),
    };
    let (req, out) = match flags_request(name, flags) {
        Ok(r) => r,
        Err(e) => {
            let v = json!({"subcommand": name, "error": error_json(&e), "version": VERSION});
            return (exit_code(&e), render(&v));
        }
    };
    let (code, v) = report(&req);
    let text = render(&v);
    if let Some(fail) = write_out(out, &text) {
        return fail;
    }
    (code, text)
}
