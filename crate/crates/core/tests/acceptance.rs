//! Acceptance gate: one line per criterion, then a single assertion that
//! every criterion passed.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use injdom::criteria::{
    bounded_consistency, classify_ring, classify_ring_no_middle_class, classify_simple_middle_class,
    is_division_subring, prop1_unique_local, rem1_triangularity, row_span_criterion, structural_predicates,
    RingVerdict, SpanMode, Verdict,
};
use injdom::dsl::{parse_spec, RingSpec};
use injdom::injdom::{middle_witness_search, ModuleClass, Oracle};
use injdom::modkit::{is_isomorphic, right_socle, simples_up_to_iso, singular};
use injdom::ringkit::{build_tri, jacobson_radical, FiniteRing, TriRing};
use injdom::Bounds;

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn tri(spec: &str) -> TriRing {
    match parse_spec(spec).unwrap() {
        RingSpec::Tri { field, n, source } => build_tri(&field, n as usize, &source, &Bounds::default()).unwrap(),
        other => panic!("{other} is not a tri recipe"),
    }
}

fn labels(r: &FiniteRing, xs: &[u16]) -> BTreeSet<String> {
    xs.iter().map(|&x| r.label(x).to_string()).collect()
}

fn element(r: &FiniteRing, label: &str) -> u16 {
    r.elements().find(|&x| r.label(x) == label).unwrap()
}

fn sey2() -> Outcome {
    let r = ring("trimat(zmod(4),zmod(2))");
    let b = Bounds::default();
    let o = Oracle::new(r.clone(), b).map_err(|e| e.to_string())?;
    ensure(r.size() == 16, "ring has 16 elements")?;
    let soc = right_socle(&r);
    let j = jacobson_radical(&r);
    let z = singular(o.regular());
    let shown: BTreeSet<String> = ["[[0,0],[0,0]]", "[[2,0],[0,0]]", "[[0,0],[1,0]]", "[[2,0],[1,0]]"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    ensure(labels(&r, &soc) == shown, "Soc(R_R) is the displayed set")?;
    ensure(labels(&r, &j) == shown, "J(R) is the displayed set")?;
    ensure(labels(&r, z.members()) == shown, "Z(R_R) is the displayed set")?;
    ensure(o.locals().count() == 2, "two local length-two classes")?;
    let simples = simples_up_to_iso(&r, &b).unwrap();
    ensure(simples.len() == 2, "two simple classes")?;
    let e11 = element(&r, "[[1,0],[0,0]]");
    for s in &simples {
        let is_s = s.module.elements().any(|m| s.module.act(m, e11) != 0);
        let inj = o.is_injective(&s.module).unwrap();
        ensure(inj != is_s, "S is not injective and S' is injective")?;
    }
    ensure(o.is_poor(o.regular()).unwrap(), "R_R is poor")?;
    let w = middle_witness_search(&o, b.max_module_size).unwrap();
    let w = w.witness.ok_or("no middle witness")?;
    ensure(w.cyclic && w.module.size() == 4, "witness is cyclic of size 4")?;
    ensure(w.recheck(&b).unwrap(), "witness rechecks")?;
    Ok("Soc = J = Z has 4 elements; 2 local length-two classes; S' injective, S not; R_R poor; cyclic witness of size 4".into())
}

fn ex2() -> Outcome {
    let t = tri("tri(gf(3);2;gen[[1,2],[1,1]])");
    let b = Bounds::default();
    ensure(t.ring.size() == 243, "ring has 243 elements")?;
    let d = &t.dprime;
    ensure(d.len() == 9 && is_division_subring(&t.field, 2, d), "D' is a division ring of 9 elements")?;
    let commutative = d.iter().all(|x| d.iter().all(|y| x.mul(y, &t.field) == y.mul(x, &t.field)));
    ensure(commutative, "D' is a field")?;
    let span = row_span_criterion(&t.field, 2, d, SpanMode::AllConjugates, &b).unwrap();
    ensure(span.holds() && span.certificate["conjugates_checked"] == 48, "row span holds over 48 units")?;
    ensure(prop1_unique_local(&t.field, 2, d).holds(), "unique-local formula holds")?;
    let o = Oracle::new(t.ring.clone(), b).unwrap();
    ensure(o.locals().count() == 1, "one local length-two class")?;
    let s = middle_witness_search(&o, t.ring.size()).unwrap();
    ensure(s.witness.is_none(), "no middle module among subquotients of R_R")?;
    Ok(format!("|D'| = 9, field; 48 conjugates span; 1 local class; {} subquotients, none middle", s.distinct))
}

fn rem1() -> Outcome {
    let t = tri("tri(gf(2);2;scalars)");
    let b = Bounds::default();
    let c = rem1_triangularity(&t.field, &t.dprime);
    ensure(c.certificate["middle_class_predicted"] == true, "triangularity predicts a middle class")?;
    let o = Oracle::new(t.ring.clone(), b).unwrap();
    let w = middle_witness_search(&o, b.max_module_size).unwrap().witness.ok_or("no witness")?;
    ensure(w.recheck(&b).unwrap(), "witness rechecks")?;
    Ok(format!("predicted; witness of size {} found", w.module.size()))
}

fn companion() -> Outcome {
    let spec = "tri(gf(2);2;companion[1,1,1])";
    let t = tri(spec);
    let b = Bounds::default();
    ensure(t.ring.size() == 32, "ring has 32 elements")?;
    let span = row_span_criterion(&t.field, 2, &t.dprime, SpanMode::AllConjugates, &b).unwrap();
    ensure(span.holds() && span.certificate["conjugates_checked"] == 6, "row span holds over 6 units")?;
    let rep = classify_ring_no_middle_class(&t.ring, &b).map_err(|e| e.to_string())?;
    let m = rep.middle_class.unwrap();
    ensure(m.verdict == RingVerdict::NoMiddleClass, "criteria: no middle class")?;
    let s = m.witness_search.ok_or("witness search did not run")?;
    ensure(s.witness.is_none() && s.bound >= 32, "oracle: no witness among all subquotients")?;
    Ok(format!("6 conjugates span; criteria and oracle agree over {} subquotients", s.distinct))
}

/// Isomorphism classes of nonzero modules over the lower triangular 2x2
/// GF(2)-matrices with at most `2^dim` elements: `S1^a + S2^b + P^c` with
/// `a + b + 2c <= dim`.
fn a2_count(dim: usize) -> usize {
    let mut n = 0;
    for c in 0..=dim / 2 {
        for a in 0..=dim - 2 * c {
            n += dim - 2 * c - a + 1;
        }
    }
    n - 1
}

fn cor1() -> Outcome {
    let r = ring("tri(gf(2);1;full)");
    let b = Bounds::default();
    ensure(r.size() == 8, "ring has 8 elements")?;
    let m = classify_ring_no_middle_class(&r, &b).map_err(|e| e.to_string())?.middle_class.unwrap();
    ensure(m.verdict == RingVerdict::NoMiddleClass, "classified no middle class")?;
    let o = Oracle::new(r, b).unwrap();
    let c = bounded_consistency(&o, 64).unwrap();
    ensure(c.indecomposables == vec![2, 2, 4], "three indecomposables of sizes 2, 2, 4")?;
    ensure(c.modules_checked == a2_count(6), "every module of size at most 64 enumerated")?;
    ensure(c.middle.is_none(), "no module of size at most 64 is middle")?;
    Ok(format!("no middle class; {} modules of size <= 64, none middle", c.modules_checked))
}

fn commutative() -> Outcome {
    let b = Bounds::default();
    let z4 = classify_ring_no_middle_class(&ring("zmod(4)"), &b).map_err(|e| e.to_string())?;
    let m = z4.middle_class.unwrap();
    ensure(m.verdict == RingVerdict::NoMiddleClass, "Z/4 has no middle class")?;
    ensure(m.summary == "no middle class (commutative local, composition length 2)", "Z/4 summary")?;
    let z8 = classify_ring_no_middle_class(&ring("zmod(8)"), &b).map_err(|e| e.to_string())?;
    let m = z8.middle_class.unwrap();
    ensure(m.verdict == RingVerdict::HasMiddleClass, "Z/8 has a middle class")?;
    let w = m.witness_search.and_then(|s| s.witness).ok_or("Z/8 witness")?;
    ensure(w.module.size() == 4 && w.cyclic, "witness is Z/4")?;
    ensure(!w.profile.injective && w.domain_member.size() == 4, "witness is Z/4-injective, not injective")?;
    for p in [3, 5] {
        let r = classify_ring_no_middle_class(&ring(&format!("zmod({})", 4 * p)), &b).map_err(|e| e.to_string())?;
        ensure(r.decomposition.s_size == p && r.decomposition.t_size == 4, "S = Z/p, T = Z/4")?;
        ensure(r.middle_class.unwrap().verdict == RingVerdict::NoMiddleClass, "Z/4p has no middle class")?;
    }
    Ok("Z/4 none; Z/8 has witness Z/4; Z/12 and Z/20 split as Z/p x Z/4 with no middle class".into())
}

fn simple_mc() -> Outcome {
    let b = Bounds::default();
    let z8 = classify_simple_middle_class(&ring("zmod(8)"), &b).map_err(|e| e.to_string())?;
    let s = z8.simple_middle_class.unwrap();
    ensure(s.no_simple_middle_class && s.simple_destitute, "Z/8: none, simple-destitute")?;
    let sey = classify_simple_middle_class(&ring("trimat(zmod(4),zmod(2))"), &b).map_err(|e| e.to_string())?;
    let s = sey.simple_middle_class.unwrap();
    ensure(s.no_simple_middle_class, "sey2: none")?;
    ensure(
        s.structure_case.as_deref() == Some("T has a unique noninjective simple and singular socle"),
        "sey2: unique noninjective simple with singular socle",
    )?;
    let r = ring("prod(zmod(4),zmod(4))");
    let p = classify_simple_middle_class(&r, &b).map_err(|e| e.to_string())?;
    let s = p.simple_middle_class.unwrap();
    let i = s.oracle.witness.ok_or("Z/4 x Z/4: no simple witness")?;
    let o = Oracle::new(r.clone(), b).unwrap();
    let simple = &simples_up_to_iso(&r, &b).unwrap()[i];
    ensure(o.classify(&simple.module).unwrap() == ModuleClass::Middle, "simple witness is middle")?;
    Ok(format!("Z/8 none (destitute); sey2 none (unique noninjective simple); Z/4 x Z/4 witness {}", s.oracle.simples[i].name))
}

fn idealization() -> Outcome {
    let r = ring("idealize(gf(2),2)");
    let b = Bounds::default();
    let o = Oracle::new(r.clone(), b).unwrap();
    let p = structural_predicates(&o).unwrap();
    ensure(p.soc_eq_j_eq_z, "Soc = J = Z")?;
    ensure(o.is_poor(o.regular()).unwrap(), "R_R poor")?;
    ensure(p.radical_ideal_flag, "radical properly contains a nonzero ideal")?;
    let j = jacobson_radical(&r);
    let lines: Vec<_> = o
        .right_ideals()
        .iter()
        .filter(|l| l.len() == 2 && l.members().iter().all(|x| j.contains(x)))
        .collect();
    ensure(lines.len() == 3, "three lines in J")?;
    let quotients: Vec<_> = lines.iter().map(|l| o.regular().quotient(l).module).collect();
    for a in 0..3 {
        for c in a + 1..3 {
            ensure(!is_isomorphic(&quotients[a], &quotients[c], &b).unwrap(), "M_L pairwise non-isomorphic")?;
        }
    }
    let w = middle_witness_search(&o, b.max_module_size).unwrap().witness.ok_or("no witness")?;
    ensure(w.cyclic, "witness is cyclic")?;
    let mut among = false;
    for q in &quotients {
        among |= is_isomorphic(q, &w.module, &b).unwrap();
    }
    ensure(among, "witness is some M_L")?;
    let middle = quotients.iter().filter(|q| o.classify(q).unwrap() == ModuleClass::Middle).count();
    Ok(format!("Soc = J = Z; R_R poor; flag set; 3 pairwise distinct M_L, {middle} of them middle"))
}

fn tally_outcome(t: Tally) -> Outcome {
    if t.violations.is_empty() && t.checked > 0 {
        Ok(format!("{} checks, 0 violations", t.checked))
    } else {
        Err(format!("{} checks, violations: {:?}", t.checked, t.violations))
    }
}

fn formulas() -> Outcome {
    let t = over_tri_fleet();
    let rings = tri_fleet().iter().filter(|t| t.ring.size() <= 256).count();
    tally_outcome(t).map(|s| format!("{rings} tri rings; {s}"))
}

fn properties() -> Outcome {
    let mut t = Tally::default();
    for check in [
        subfactor_closure as fn(&Arc<FiniteRing>) -> Tally,
        baer_equivalence,
        poor_injective_exclusive,
        factor_ring_heredity,
        semisimple_summand,
        length_additivity,
        qf_double_annihilator,
    ] {
        t.absorb(over_fleet(check));
    }
    tally_outcome(t).map(|s| format!("{} rings; {s}", fleet().len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("sey2 reproduction", sey2, 10),
        ("GF(9) inside M_2(GF(3))", ex2, 600),
        ("triangular scalars", rem1, 60),
        ("companion construction", companion, 60),
        ("lower triangular GF(2)", cor1, 60),
        ("commutative suite", commutative, 30),
        ("simple middle class", simple_mc, 60),
        ("idealization", idealization, 60),
        ("formulas vs oracle", formulas, 1800),
        ("property suites", properties, 1800),
    ];
    let mut failed = Vec::new();
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut out = run();
        let took = start.elapsed();
        if out.is_ok() && took > Duration::from_secs(*limit) {
            out = Err(format!("took {took:?}, limit {limit} s"));
        }
        match &out {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why} ({took:.2?})", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn full_report_on_sey2() {
    let rep = classify_ring(&ring("trimat(zmod(4),zmod(2))"), &Bounds::default()).unwrap();
    assert!(rep.verdicts().iter().all(|v| v.verdict != Verdict::Undecided));
    assert_eq!(rep.middle_class.unwrap().verdict, RingVerdict::HasMiddleClass);
}
