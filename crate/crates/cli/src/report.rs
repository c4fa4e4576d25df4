use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::FieldExt;

#[derive(Debug)]
pub enum CliError {
    /// Input that does not parse or does not match the schema.
    Schema(String),
    /// A violated mathematical precondition.
    Math(kirwan_core::Error),
    /// The result needs a quadratic extension and `--field-ext deny` was given.
    FieldExtension(BTreeSet<i64>),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Schema(_) => 1,
            CliError::Math(_) | CliError::FieldExtension(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Schema(m) => write!(f, "schema: {m}"),
            CliError::Math(e) => write!(f, "precondition: {e}"),
            CliError::FieldExtension(d) => {
                let ds: Vec<String> = d.iter().map(|d| format!("sqrt({d})")).collect();
                write!(f, "precondition: the result needs {} and --field-ext deny was given", ds.join(", "))
            }
        }
    }
}

impl From<kirwan_core::Error> for CliError {
    fn from(e: kirwan_core::Error) -> Self {
        CliError::Math(e)
    }
}

/// Payload of a command with the notes it produced.
pub struct Output {
    pub result: Value,
    pub notes: Vec<String>,
}

impl Output {
    pub fn new(result: impl Serialize, notes: Vec<String>) -> Result<Self, CliError> {
        let result = serde_json::to_value(result).map_err(|e| CliError::Schema(e.to_string()))?;
        Ok(Output { result, notes })
    }
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    /// SHA-256 of the payload in compact JSON with sorted keys.
    pub input_digest: String,
    pub result: Value,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, payload: &Value, out: Output, policy: FieldExt) -> Result<Self, CliError> {
        let mut exts = BTreeSet::new();
        extensions(payload, &mut exts);
        extensions(&out.result, &mut exts);
        let mut notes = out.notes;
        if !exts.is_empty() {
            if policy == FieldExt::Deny {
                return Err(CliError::FieldExtension(exts));
            }
            for d in &exts {
                notes.push(format!("values lie in Q(sqrt({d})), written as {{a, b, d}} = a + b*sqrt(d)"));
            }
        }
        let canonical = serde_json::to_string(payload).expect("values serialize");
        Ok(Report {
            command: command.into(),
            input_digest: hex::encode(Sha256::digest(canonical.as_bytes())),
            result: out.result,
            notes,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Whether `v` is a scalar written as `{"a", "b", "d"}`.
pub fn as_extension(v: &Value) -> Option<(&Value, &Value, i64)> {
    let m = v.as_object()?;
    if m.len() != 3 {
        return None;
    }
    Some((m.get("a")?, m.get("b")?, m.get("d")?.as_i64()?))
}

fn extensions(v: &Value, out: &mut BTreeSet<i64>) {
    if let Some((_, _, d)) = as_extension(v) {
        out.insert(d);
        return;
    }
    match v {
        Value::Array(a) => a.iter().for_each(|x| extensions(x, out)),
        Value::Object(m) => m.values().for_each(|x| extensions(x, out)),
        _ => {}
    }
}
