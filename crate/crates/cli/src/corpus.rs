//! Corpus runner. A directory holds `<name>.case.json` files of the form
//! `{"subcommand": ..., "args": {...}}`, each paired with
//! `<name>.expected.json`. The expectation is matched as a subset of
//! `{"result", "warnings"}` (or `{"error"}` for a failing case), with
//! numbers compared by their decimal strings.

use std::path::Path;

use cck_core::{Error, Result};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::request::{canonicalize, Request};
use crate::{error_json, exit_code, VERSION};

const CASE_SUFFIX: &str = ".case.json";
const EXPECTED_SUFFIX: &str = ".expected.json";

struct Case {
    name: String,
    request: Request,
    expected: Value,
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_cases(dir: &Path) -> Result<Vec<Case>> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| Error::InvalidInput(format!("cannot read corpus directory {}: {e}", dir.display())))?;
    let mut names = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::InvalidInput(format!("{}: {e}", dir.display())))?;
        let file = entry.file_name().to_string_lossy().into_owned();
        if let Some(name) = file.strip_suffix(CASE_SUFFIX) {
            names.push(name.to_string());
        }
    }
    names.sort();
    names
        .into_iter()
        .map(|name| {
            let case_path = dir.join(format!("{name}{CASE_SUFFIX}"));
            let expected_path = dir.join(format!("{name}{EXPECTED_SUFFIX}"));
            if !expected_path.exists() {
                return Err(Error::InvalidInput(format!(
                    "missing expectation file {}",
                    expected_path.display()
                )));
            }
            let case = read_json(&case_path)?;
            let expected = read_json(&expected_path)?;
            let subcommand = case
                .get("subcommand")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse(format!("{}: missing string `subcommand`", case_path.display())))?
                .to_string();
            let args = match case.get("args") {
                None => Default::default(),
                Some(Value::Object(o)) => o.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
                Some(_) => return Err(Error::Parse(format!("{}: `args` must be an object", case_path.display()))),
            };
            Ok(Case { name, request: Request { subcommand, args, base_dir: dir.to_path_buf() }, expected })
        })
        .collect()
}

/// Records every place where `actual` fails to contain `expected`.
fn subset_mismatches(expected: &Value, actual: &Value, path: &str, out: &mut Vec<String>) {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => {
            for (k, ev) in e {
                let p = format!("{path}.{k}");
                match a.get(k) {
                    Some(av) => subset_mismatches(ev, av, &p, out),
                    None => out.push(format!("{p}: missing")),
                }
            }
        }
        (Value::Array(e), Value::Array(a)) => {
            if e.len() != a.len() {
                out.push(format!("{path}: expected {} items, got {}", e.len(), a.len()));
                return;
            }
            for (i, (ev, av)) in e.iter().zip(a).enumerate() {
                subset_mismatches(ev, av, &format!("{path}[{i}]"), out);
            }
        }
        _ => {
            let (e, a) = (canonicalize(expected), canonicalize(actual));
            if e != a {
                out.push(format!("{path}: expected {e}, got {a}"));
            }
        }
    }
}

/// Runs every case in `dir` in name order. Exit code 0 when all cases
/// match, 1 on any mismatch, 2 when the corpus itself cannot be read.
pub fn run_corpus(dir: &Path) -> (i32, Value) {
    let cases = match load_cases(dir) {
        Ok(c) => c,
        Err(e) => {
            return (
                exit_code(&e),
                json!({"subcommand": "corpus", "error": error_json(&e), "version": VERSION}),
            )
        }
    };
    let mut digest = Sha256::new();
    let mut results = Vec::with_capacity(cases.len());
    let mut failed = 0usize;
    for case in &cases {
        digest.update(case.request.digest().as_bytes());
        let observed = match crate::commands::execute(&case.request) {
            Ok(out) => json!({"result": out.result, "warnings": out.warnings}),
            Err(e) => json!({"error": error_json(&e)}),
        };
        let mut mismatches = Vec::new();
        subset_mismatches(&case.expected, &observed, "", &mut mismatches);
        if !mismatches.is_empty() {
            failed += 1;
        }
        results.push(json!({
            "case": case.name,
            "input_digest": case.request.digest(),
            "status": if mismatches.is_empty() { "pass" } else { "fail" },
            "mismatches": mismatches,
        }));
    }
    let input_digest: String = digest.finalize().iter().map(|b| format!("{b:02x}")).collect();
    let report = json!({
        "subcommand": "corpus",
        "input_digest": input_digest,
        "result": {
            "cases": cases.len().to_string(),
            "passed": (cases.len() - failed).to_string(),
            "failed": failed.to_string(),
            "results": results,
        },
        "warnings": [],
        "version": VERSION,
    });
    (if failed == 0 { 0 } else { 1 }, report)
}
