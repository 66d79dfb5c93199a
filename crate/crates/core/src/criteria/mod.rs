//! Decision procedures for the middle-class questions, each returning a
//! re-checkable certificate.

mod classify;
mod predicates;
mod tri;

use std::fmt;

use serde::Serialize;
use serde_json::Value;

pub use classify::{
    bounded_consistency, classify_ring, classify_ring_no_middle_class, classify_simple_middle_class, theorem_shape_validators,
    ClassificationReport, ConsistencyEvidence, DecisionPath, Decomposition, EvidenceKind, MiddleClassDecision, RingVerdict,
    SimpleMiddleClassDecision,
};
pub use predicates::{simple_right_ideals, structural_predicates, StructuralPredicates};
pub use tri::{
    companion_subfield, conjugate_obstruction, is_division_subring, lem1_hom_formula, lem1_pairs,
    lem2_local_factor_iso, prime_degree_span_check, prop1_unique_local, rem1_triangularity, row_span_criterion,
    HomPair, SpanFailure, SpanMode,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    Inapplicable,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inapplicable => "inapplicable",
            Verdict::Undecided => "undecided",
        })
    }
}

/// Outcome of one criterion. `Undecided` certificates always carry a
/// `reason` naming the exhausted resource.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionVerdict {
    pub id: String,
    pub anchor: String,
    pub verdict: Verdict,
    pub certificate: Value,
}

impl CriterionVerdict {
    pub(crate) fn new(id: &str, anchor: &str, verdict: Verdict, certificate: Value) -> Self {
        Self {
            id: id.to_string(),
            anchor: anchor.to_string(),
            verdict,
            certificate,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}
