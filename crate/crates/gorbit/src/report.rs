//! Schema-versioned JSON reports. Reports are deterministic for a fixed
//! seed and field tower: timing is kept out of the serialized body (it goes
//! to stderr) so that identical runs produce byte-identical files.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::exactmath::Scalar;
use crate::liecore::{Algebra, Element};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One certified (or failed) step of a reproduction run. `data` carries the
/// re-checkable exact payload: scalar strings, element expansions,
/// dimensions, ranks, and provenance labels.
#[derive(Serialize, Deserialize, Clone)]
pub struct StepReport {
    pub name: String,
    pub passed: bool,
    pub data: Value,
}

#[derive(Serialize, Deserialize)]
pub struct ReproReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub seed: u64,
    pub field_tower: Vec<u64>,
    /// Chevalley sign convention used throughout.
    pub sign_convention: String,
    pub steps: Vec<StepReport>,
    pub verdict: String,
}

impl ReproReport {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

/// Machine-readable certificate (witness or counterexample) for the
/// geodesic-orbit property of one metric or one parameter family.
#[derive(Serialize, Deserialize)]
pub struct GoReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub seed: u64,
    pub field_tower: Vec<u64>,
    pub subalgebra: String,
    pub verdict: String,
    pub detail: Value,
}

impl GoReport {
    pub fn passed(&self) -> bool {
        matches!(self.verdict.as_str(), "pass" | "certified-go" | "refuted")
    }
}

/// An element rendered over the basis labels, e.g. "1*F[a+b] + -1/2*iH[a]".
/// Scalars use the exact "a/b" / "a/b*sqrt(d)" summand format.
pub fn element_string(alg: &Algebra, x: &Element) -> String {
    let labels = alg.labels();
    let parts: Vec<String> = x
        .coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("{}*{}", c, labels[i]))
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

pub fn scalar_strings(values: &[Scalar]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

pub fn to_json_string<T: Serialize>(r: &T) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serialization cannot fail");
    s.push('\n');
    s
}

/// Writes the report; the byte content depends only on the report itself.
pub fn report_emit<T: Serialize>(r: &T, path: &Path) -> std::io::Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(to_json_string(r).as_bytes())
}
