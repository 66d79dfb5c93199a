use std::sync::Arc;
use std::time::Instant;

use clap::ValueEnum;
use injdom::criteria::{
    classify_ring, classify_ring_no_middle_class, classify_simple_middle_class, structural_predicates,
    ClassificationReport, MiddleClassDecision, RingVerdict, SimpleMiddleClassDecision,
};
use injdom::dsl::parse_spec;
use injdom::injdom::{has_no_simple_middle_class, middle_witness_search, Oracle, WitnessSearch};
use injdom::ringkit::{build_ring, FiniteRing, VerifyMode};
use injdom::{Error, Result};
use serde_json::{json, Value};

use crate::report::{kebab, Report, Timings, SCHEMA};
use crate::{Command, Verb};

const FULL_AXIOM_LIMIT: usize = 64;
const SAMPLED_TRIPLES: usize = 100_000;

fn build(cmd: &Command) -> Result<(Arc<FiniteRing>, Value)> {
    let spec = parse_spec(&cmd.spec)?;
    let ring = build_ring(&spec, &cmd.bounds())?;
    let mode = if ring.size() <= FULL_AXIOM_LIMIT {
        VerifyMode::Full
    } else {
        VerifyMode::Sampled { triples: SAMPLED_TRIPLES, seed: cmd.seed }
    };
    if let Err(v) = ring.verify_axioms(mode) {
        return Err(Error::Invalid(format!("{} violates {} at {:?}", ring.recipe(), v.law, v.triple)));
    }
    let axioms = match mode {
        VerifyMode::Full => json!({ "mode": "full" }),
        VerifyMode::Sampled { triples, seed } => json!({ "mode": "sampled", "triples": triples, "seed": seed }),
    };
    Ok((Arc::new(ring), axioms))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report data serializes")
}

fn witness_line(s: Option<&WitnessSearch>, err: Option<&String>) -> String {
    match (s, err) {
        (Some(s), _) => match &s.witness {
            Some(w) => format!(
                "witness: {} module of size {} ({} candidates examined)",
                if w.cyclic { "cyclic" } else { "noncyclic" },
                w.module.size(),
                s.examined
            ),
            None => format!("witness: none within bound {} ({} candidates examined)", s.bound, s.examined),
        },
        (None, Some(e)) => format!("witness: search stopped, {e}"),
        (None, None) => "witness: not searched".to_string(),
    }
}

fn middle_lines(m: &MiddleClassDecision) -> Vec<String> {
    vec![
        format!("middle class: {}", m.summary),
        format!("decision path: {}", kebab(&m.path)),
        witness_line(m.witness_search.as_ref(), m.witness_search_error.as_ref()),
    ]
}

fn simple_lines(s: &SimpleMiddleClassDecision) -> Vec<String> {
    let mut out = vec![format!(
        "simple middle class: {}",
        if s.no_simple_middle_class { "none" } else { "present" }
    )];
    if let Some(c) = &s.structure_case {
        out.push(format!("structure: {c}"));
    }
    if let Some(i) = s.oracle.witness {
        let w = &s.oracle.simples[i];
        out.push(format!("simple witness: {} (size {})", w.name, w.size));
    }
    out.push(format!("simple-destitute: {}", s.simple_destitute));
    out
}

fn classification(r: ClassificationReport, verb: Verb, out: &mut Report) {
    if let Some(m) = &r.middle_class {
        out.text.extend(middle_lines(m));
        out.evidence_kind = Some(kebab(&m.evidence_kind));
    }
    if let Some(s) = &r.simple_middle_class {
        out.text.extend(simple_lines(s));
        if verb == Verb::SimpleMc {
            out.evidence_kind = Some("exhaustive-oracle".into());
        }
    }
    out.verdicts = r.verdicts().into_iter().cloned().collect();
    out.details = json!({
        "decomposition": r.decomposition,
        "t_predicates": r.t_predicates,
        "middle_class": r.middle_class,
        "simple_middle_class": r.simple_middle_class,
    });
    out.predicates = Some(r.predicates);
}

fn cross_check(r: ClassificationReport, out: &mut Report) {
    let m = r.middle_class.as_ref().expect("middle class decided");
    let search = m.witness_search.as_ref();
    let found = search.and_then(|s| s.witness.as_ref());
    let oracle = match (search, found) {
        (_, Some(w)) => format!("witness found (size {})", w.module.size()),
        (Some(_), None) => "no witness within bound".to_string(),
        (None, _) => "search incomplete".to_string(),
    };
    let agreement = match (m.verdict, search.is_some(), found.is_some()) {
        (RingVerdict::NoMiddleClass, true, false) | (RingVerdict::HasMiddleClass, _, true) => "agreement ✓",
        (RingVerdict::NoMiddleClass, _, true) => "agreement ✗",
        _ => "agreement undetermined",
    };
    out.text.push(format!("criteria: {}; oracle: {oracle}; {agreement}", kebab(&m.verdict)));
    out.text.push(format!("middle class: {}", m.summary));
    out.evidence_kind = Some(kebab(&m.evidence_kind));
    out.verdicts = r.verdicts().into_iter().cloned().collect();
    out.details = json!({
        "criteria": kebab(&m.verdict),
        "oracle": oracle,
        "agreement": agreement,
        "middle_class": r.middle_class,
    });
    out.predicates = Some(r.predicates);
}

fn oracle_verb(ring: &Arc<FiniteRing>, cmd: &Command, out: &mut Report) -> Result<()> {
    let o = Oracle::new(ring.clone(), cmd.bounds())?;
    let mut profiles = vec![o.profile(o.regular())?];
    let simples = has_no_simple_middle_class(&o)?;
    for s in injdom::modkit::simples_up_to_iso(ring, o.bounds())? {
        profiles.push(o.profile(&s.module)?);
    }
    for m in o.locals() {
        profiles.push(o.profile(m)?);
    }
    for p in &profiles {
        out.text.push(format!("{} (size {}): {}", p.subject, p.size, p.class));
    }
    out.predicates = Some(structural_predicates(&o)?);
    out.details = json!({
        "local_length_two_classes": o.locals().count(),
        "simple_classes": simples.simples.len(),
        "profiles": profiles,
    });
    Ok(())
}

fn witness_verb(ring: &Arc<FiniteRing>, cmd: &Command, out: &mut Report) -> Result<()> {
    let o = Oracle::new(ring.clone(), cmd.bounds())?;
    let s = middle_witness_search(&o, cmd.bounds().max_module_size)?;
    if let Some(w) = &s.witness {
        if !w.recheck(o.bounds())? {
            return Err(Error::Invalid("witness failed its own recheck".into()));
        }
    }
    out.text.push(witness_line(Some(&s), None));
    out.details = to_value(&s);
    Ok(())
}

fn simples_verb(ring: &Arc<FiniteRing>, cmd: &Command, out: &mut Report) -> Result<()> {
    let o = Oracle::new(ring.clone(), cmd.bounds())?;
    let s = has_no_simple_middle_class(&o)?;
    for v in &s.simples {
        out.text.push(format!(
            "{} (size {}): {}{}",
            v.name,
            v.size,
            v.class,
            if v.projective { ", projective" } else { "" }
        ));
    }
    out.details = to_value(&s);
    Ok(())
}

pub fn run(cmd: &Command) -> Result<Report> {
    let start = Instant::now();
    let (ring, axioms) = build(cmd)?;
    let built = start.elapsed();
    let bounds = cmd.bounds();
    let mut out = Report {
        schema: SCHEMA,
        verb: cmd.verb.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default(),
        recipe: ring.recipe().to_string(),
        size: ring.size(),
        predicates: None,
        verdicts: Vec::new(),
        evidence_kind: None,
        bounds,
        timings: None,
        seed: cmd.seed,
        details: Value::Null,
        text: Vec::new(),
    };
    match cmd.verb {
        Verb::Classify => classification(classify_ring_no_middle_class(&ring, &bounds)?, cmd.verb, &mut out),
        Verb::SimpleMc => classification(classify_simple_middle_class(&ring, &bounds)?, cmd.verb, &mut out),
        Verb::Report => classification(classify_ring(&ring, &bounds)?, cmd.verb, &mut out),
        Verb::CrossCheck => cross_check(classify_ring_no_middle_class(&ring, &bounds)?, &mut out),
        Verb::Oracle => oracle_verb(&ring, cmd, &mut out)?,
        Verb::Witness => witness_verb(&ring, cmd, &mut out)?,
        Verb::Simples => simples_verb(&ring, cmd, &mut out)?,
    }
    if let Value::Object(map) = &mut out.details {
        map.insert("axioms".into(), axioms);
    } else {
        out.details = json!({ "result": out.details, "axioms": axioms });
    }
    if cmd.timings {
        out.timings = Some(Timings {
            build_ms: built.as_millis(),
            total_ms: start.elapsed().as_millis(),
        });
    }
    Ok(out)
}
