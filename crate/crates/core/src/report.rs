//! Machine-readable output: a versioned JSON envelope and flat CSV rows.

use serde::{Deserialize, Serialize};

use crate::classifier::{ClassificationResult, Evidence};
use crate::completeness::CompletenessReport;
use crate::error::{Error, Result};
use crate::recurrence::{RecurrenceSpec, Variant};
use crate::variant_u::UVerdict;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Envelope<T> {
    pub schema_version: u32,
    /// Which analysis produced `data`, e.g. `"period"` or `"classify"`.
    pub kind: String,
    pub variant: Variant,
    pub data: T,
}

pub fn to_json<T: Serialize>(kind: &str, variant: Variant, data: &T) -> Result<String> {
    let envelope = Envelope {
        schema_version: SCHEMA_VERSION,
        kind: kind.to_string(),
        variant,
        data,
    };
    serde_json::to_string_pretty(&envelope).map_err(|e| Error::Serialization(e.to_string()))
}

/// Header row from the field names of `R`, then one row per item.
pub fn to_csv<R: Serialize>(rows: &[R]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| Error::Serialization(e.to_string()))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Serialization(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletenessRow {
    pub variant: Variant,
    pub a: i64,
    pub b: i64,
    pub q: i64,
    pub modulus: u64,
    pub complete: bool,
    pub uniform: bool,
    pub period_length: u64,
    pub missing: usize,
    pub gcd_invariant: u64,
}

impl CompletenessRow {
    pub fn new(spec: &RecurrenceSpec, r: &CompletenessReport) -> Self {
        Self {
            variant: spec.variant,
            a: spec.a,
            b: spec.b,
            q: spec.q,
            modulus: r.modulus,
            complete: r.complete,
            uniform: r.uniform,
            period_length: r.period_length,
            missing: r.missing.len(),
            gcd_invariant: r.gcd_invariant,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceRow {
    pub modulus: u64,
    pub complete: bool,
    pub source: String,
    pub parent: Option<u64>,
    pub prime: Option<u64>,
}

impl From<&Evidence> for EvidenceRow {
    fn from(e: &Evidence) -> Self {
        Self {
            modulus: e.modulus,
            complete: e.complete,
            source: e.source.tag().to_string(),
            parent: e.parent,
            prime: e.prime,
        }
    }
}

pub fn classification_rows(result: &ClassificationResult) -> Vec<EvidenceRow> {
    result.evidence.iter().map(EvidenceRow::from).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UVerdictRow {
    pub variant: Variant,
    pub a: i64,
    pub b: i64,
    pub q: i64,
    pub modulus: u64,
    pub verdict: bool,
    pub route: String,
    pub multiplicative_reading: bool,
    pub brute_force: Option<bool>,
}

impl From<&UVerdict> for UVerdictRow {
    fn from(v: &UVerdict) -> Self {
        let route = serde_json::to_value(v.route)
            .ok()
            .and_then(|x| x.as_str().map(str::to_string))
            .unwrap_or_default();
        Self {
            variant: v.spec.variant,
            a: v.spec.a,
            b: v.spec.b,
            q: v.spec.q,
            modulus: v.modulus,
            verdict: v.verdict,
            route,
            multiplicative_reading: v.multiplicative_reading,
            brute_force: v.brute_force,
        }
    }
}
