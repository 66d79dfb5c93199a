use injdom::criteria::{CriterionVerdict, StructuralPredicates};
use injdom::Bounds;
use serde::Serialize;
use serde_json::Value;

use crate::Format;

pub const SCHEMA: &str = "injdom-report/1";

#[derive(Debug, Serialize)]
pub struct Timings {
    pub build_ms: u128,
    pub total_ms: u128,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub verb: String,
    pub recipe: String,
    pub size: usize,
    pub predicates: Option<StructuralPredicates>,
    pub verdicts: Vec<CriterionVerdict>,
    pub evidence_kind: Option<String>,
    pub bounds: Bounds,
    /// Null unless requested, so that reports stay byte-identical.
    pub timings: Option<Timings>,
    pub seed: u64,
    pub details: Value,
    #[serde(skip)]
    pub text: Vec<String>,
}

/// Kebab-case name of a serde enum value.
pub fn kebab<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => String::new(),
    }
}

fn text(r: &Report) -> String {
    let mut out = vec![format!("ring: {} ({} elements)", r.recipe, r.size)];
    out.extend(r.text.iter().cloned());
    if let Some(k) = &r.evidence_kind {
        out.push(format!("evidence: {k}"));
    }
    for v in &r.verdicts {
        out.push(format!("  [{}] {}: {}", v.verdict, v.id, v.anchor));
    }
    if let Some(t) = &r.timings {
        out.push(format!("time: {} ms (build {} ms)", t.total_ms, t.build_ms));
    }
    out.push(format!("seed: {}", r.seed));
    out.join("\n")
}

pub fn emit(r: &Report, format: Format) -> String {
    match format {
        Format::Text => text(r),
        Format::Json => serde_json::to_string_pretty(r).expect("report serializes"),
    }
}
