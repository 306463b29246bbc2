//! JSON documents for posets and weight functions.
//!
//! A poset document lists its elements and its cover pairs:
//!
//! ```json
//! {
//!   "elements": ["a", "b", "c", "d"],
//!   "covers": [
//!     ["a", "b"],
//!     ["a", "c"],
//!     ["b", "d"],
//!     ["c", "d"]
//!   ]
//! }
//! ```
//!
//! [`emit_poset`] sorts both lists, so parsing and re-emitting a sorted
//! document reproduces it byte for byte.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{BuildOptions, Poset, RankedPoset};
use crate::weight::WeightFunction;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDocument {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsDocument {
    pub weights: BTreeMap<String, u64>,
}

pub fn parse_poset_document(text: &str) -> Result<PosetDocument> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

pub fn parse_poset(text: &str, options: BuildOptions) -> Result<Poset> {
    let doc = parse_poset_document(text)?;
    Poset::build(&doc.elements, &doc.covers, options)
}

pub fn parse_ranked_poset(text: &str, options: BuildOptions) -> Result<RankedPoset> {
    parse_poset(text, options)?.certify_pure()
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// Canonical text of a poset: elements and covers sorted, one cover per
/// line, trailing newline.
pub fn emit_poset(p: &Poset) -> String {
    let mut elements: Vec<&str> = p.labels().iter().map(String::as_str).collect();
    elements.sort_unstable();
    let mut covers = p.cover_labels();
    covers.sort();
    emit(&elements, &covers)
}

pub fn emit_ranked_poset(rp: &RankedPoset) -> String {
    emit_poset(&rp.to_poset())
}

fn emit(elements: &[&str], covers: &[(String, String)]) -> String {
    let elements: Vec<String> = elements.iter().map(|e| quote(e)).collect();
    let mut out = format!("{{\n  \"elements\": [{}],\n  \"covers\": [", elements.join(", "));
    if covers.is_empty() {
        out.push_str("]\n}\n");
        return out;
    }
    out.push('\n');
    let lines: Vec<String> = covers
        .iter()
        .map(|(a, b)| format!("    [{}, {}]", quote(a), quote(b)))
        .collect();
    out.push_str(&lines.join(",\n"));
    out.push_str("\n  ]\n}\n");
    out
}

pub fn parse_weights(text: &str, rp: &RankedPoset) -> Result<WeightFunction> {
    let doc: WeightsDocument = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    WeightFunction::from_labels(rp, &doc.weights)
}

pub fn emit_weights(f: &WeightFunction, rp: &RankedPoset) -> String {
    let doc = WeightsDocument {
        weights: f.to_labels(rp),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("weights always serialize");
    s.push('\n');
    s
}
