//! A subcommand invocation as data: the name plus a map of arguments. Both
//! the command line and corpus case files are turned into this form, which
//! is also what the input digest is computed from.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use cck_core::{Error, Result};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq)]
pub struct Request {
    pub subcommand: String,
    pub args: BTreeMap<String, Value>,
    /// Directory that relative `@file` references and fixture paths are
    /// resolved against.
    pub base_dir: PathBuf,
}

/// Sorted keys, every number rewritten as its decimal string.
pub fn canonicalize(v: &Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.iter().map(canonicalize).collect()),
        Value::Object(o) => {
            let sorted: BTreeMap<&String, Value> = o.iter().map(|(k, v)| (k, canonicalize(v))).collect();
            Value::Object(sorted.into_iter().map(|(k, v)| (k.clone(), v)).collect::<Map<_, _>>())
        }
        other => other.clone(),
    }
}

/// Parses inline JSON text or `@path` (relative to `base`).
pub fn load_json_text(text: &str, base: &Path) -> Result<Value> {
    let (source, body) = match text.strip_prefix('@') {
        Some(file) => {
            let path = base.join(file);
            let body = std::fs::read_to_string(&path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
            (path.display().to_string(), body)
        }
        None => ("inline JSON".to_string(), text.to_string()),
    };
    serde_json::from_str(&body).map_err(|e| Error::Parse(format!("{source}: {e}")))
}

impl Request {
    pub fn digest(&self) -> String {
        let mut obj = Map::new();
        obj.insert("subcommand".into(), Value::String(self.subcommand.clone()));
        obj.insert(
            "args".into(),
            Value::Object(self.args.iter().map(|(k, v)| (k.clone(), v.clone())).collect()),
        );
        let canonical = canonicalize(&Value::Object(obj));
        let bytes = serde_json::to_vec(&canonical).expect("JSON values always serialize");
        let hash = Sha256::digest(&bytes);
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// A structured argument: a JSON value, or a string holding JSON text
    /// or `@path`.
    pub fn json(&self, key: &str) -> Result<Value> {
        match self.args.get(key) {
            None => Err(Error::InvalidInput(format!("missing --{key}"))),
            Some(Value::String(s)) => load_json_text(s, &self.base_dir),
            Some(v) => Ok(v.clone()),
        }
    }

    pub fn text(&self, key: &str) -> Option<String> {
        match self.args.get(key)? {
            Value::String(s) => Some(s.clone()),
            Value::Number(n) => Some(n.to_string()),
            other => Some(other.to_string()),
        }
    }

    pub fn required_text(&self, key: &str) -> Result<String> {
        self.text(key).ok_or_else(|| Error::InvalidInput(format!("missing --{key}")))
    }

    pub fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let s = self.required_text(key)?;
        s.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("--{key}: cannot parse `{s}`")))
    }

    pub fn path(&self, key: &str) -> Option<PathBuf> {
        self.text(key).map(|p| self.base_dir.join(p))
    }
}
