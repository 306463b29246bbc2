//! The machine-readable report envelope. See `docs/schema.md`.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "chainalg.report/v1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub input_digest: String,
    pub exit_code: String,
    pub results: Value,
    pub rules: Vec<String>,
    pub timing: Timing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timing {
    pub elapsed_us: String,
}

impl Report {
    pub fn new(command: &str, digest: String, exit_code: i32, results: Value, rules: Vec<String>, elapsed_us: u128) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            input_digest: digest,
            exit_code: exit_code.to_string(),
            results: stringify_numbers(results),
            rules,
            timing: Timing {
                elapsed_us: elapsed_us.to_string(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }
}

/// SHA-256 over the input documents, each prefixed by its byte length so
/// that different splits of the same bytes hash differently.
pub fn digest(inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update((bytes.len() as u64).to_be_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

/// Reports carry every number as a decimal string.
pub fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(items) => Value::Array(items.into_iter().map(stringify_numbers).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, stringify_numbers(v))).collect()),
        other => other,
    }
}
