//! The ring fleet and the checks run over it by several test targets.
#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use injdom::criteria::{
    classify_ring_no_middle_class, companion_subfield, lem1_hom_formula, lem2_local_factor_iso, prop1_unique_local, structural_predicates,
    RingVerdict,
};
use injdom::dsl::parse_spec;
use injdom::injdom::{has_no_simple_middle_class, middle_witness_search, relatively_injective, Oracle};
use injdom::modkit::{
    all_matrices, composition_length, hom_enumerate, indecomposable_subquotients, is_isomorphic, lattice,
    realize_paired, RightModule,
};
use injdom::dsl::RingSpec;
use injdom::exactalg::{field_make, Poly};
use injdom::ringkit::{build_ring, build_tri, quotient_ring, tri_from_matrices, two_sided_ideals, FiniteRing, TriRing};
use injdom::Bounds;

pub const FLEET: &[&str] = &[
    "zmod(2)",
    "zmod(4)",
    "zmod(6)",
    "zmod(8)",
    "zmod(9)",
    "zmod(12)",
    "zmod(16)",
    "zmod(20)",
    "zmod(27)",
    "gf(2,2)",
    "idealize(gf(2),1)",
    "idealize(gf(2),2)",
    "idealize(gf(3),1)",
    "idealize(gf(2),3)",
    "prod(zmod(2),zmod(4))",
    "prod(zmod(4),zmod(4))",
    "prod(zmod(4),zmod(9))",
    "mat(zmod(2),2)",
    "mat(zmod(4),2)",
    "trimat(zmod(2),zmod(2))",
    "trimat(zmod(4),zmod(2))",
    "trimat(zmod(4),zmod(4))",
    "trimat(gf(3),gf(3))",
    "trimat(zmod(8),zmod(2))",
    "prod(gf(2),trimat(zmod(4),zmod(2)))",
    "prod(gf(3),tri(gf(2);2;scalars))",
    "prod(gf(2),tri(gf(2);2;companion[1,1,1]))",
    "tri(gf(2);1;full)",
    "tri(gf(3);1;full)",
    "tri(gf(5);1;full)",
    "tri(gf(2,2);1;full)",
    "tri(gf(2);2;scalars)",
    "tri(gf(2);2;companion[1,1,1])",
    "tri(gf(3);2;scalars)",
    "tri(gf(3);2;gen[[1,2],[1,1]])",
    "tri(gf(2);3;scalars)",
    "tri(gf(2);3;companion[1,1,0,1])",
    "tri(gf(2,2);2;scalars)",
];

pub fn ring(spec: &str) -> Arc<FiniteRing> {
    Arc::new(build_ring(&parse_spec(spec).unwrap(), &Bounds::default()).unwrap())
}

/// `tri(GF(4); 2; K)` with `K` the GF(2)-span of the powers of the
/// companion matrix of `x^2+x+1`: a division subring that is not a
/// GF(4)-subspace, so no recipe describes it.
pub fn gf4_ambient() -> TriRing {
    let b = Bounds::default();
    let f2 = field_make(2, 1, 256).unwrap();
    let f4 = field_make(2, 2, 256).unwrap();
    let k = companion_subfield(&f2, &Poly::new(&f2, vec![1, 1, 1]), &b).unwrap();
    tri_from_matrices(f4, 2, k, &b).unwrap()
}

/// Every tri ring of the fleet.
pub fn tri_fleet() -> Vec<TriRing> {
    let mut out: Vec<TriRing> = FLEET
        .iter()
        .filter_map(|s| match parse_spec(s).unwrap() {
            RingSpec::Tri { field, n, source } => Some(build_tri(&field, n as usize, &source, &Bounds::default()).unwrap()),
            _ => None,
        })
        .collect();
    out.push(gf4_ambient());
    out
}

pub fn fleet() -> Vec<Arc<FiniteRing>> {
    let mut out: Vec<Arc<FiniteRing>> = FLEET.iter().map(|s| ring(s)).collect();
    out.push(gf4_ambient().ring);
    out
}

pub fn oracle(r: &Arc<FiniteRing>) -> Oracle {
    Oracle::new(r.clone(), Bounds::default()).unwrap()
}

/// Number of individual checks made and a description of each violation.
#[derive(Debug, Default)]
pub struct Tally {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl Tally {
    pub fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(what());
        }
    }

    pub fn absorb(&mut self, other: Tally) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }

    pub fn assert_clean(&self, name: &str) {
        assert!(self.checked > 0, "{name}: nothing checked");
        assert!(self.violations.is_empty(), "{name}: {:#?}", self.violations);
    }
}

/// Distinct subquotients `L/K` of `R_R` with at most `max_size` elements,
/// smallest first, at most `cap` of them.
pub fn subquotients(o: &Oracle, max_size: usize, cap: usize) -> Vec<RightModule> {
    let lat = o.right_ideals();
    let reg = o.regular();
    let mut pairs = Vec::new();
    for l in lat {
        for k in lat.iter().filter(|k| k.len() < l.len() && k.is_subset(l)) {
            if l.len() / k.len() <= max_size {
                pairs.push((l.len() / k.len(), l, k));
            }
        }
    }
    pairs.sort_by_key(|p| p.0);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (_, l, k) in pairs {
        let m = reg.subquotient(l, k);
        let (add, act) = m.tables();
        if seen.insert((add.to_vec(), act.to_vec())) {
            out.push(m);
            if out.len() == cap {
                break;
            }
        }
    }
    out
}

/// Modules whose injectivity domains the property suites inspect.
fn subjects(o: &Oracle) -> Vec<RightModule> {
    let mut out: Vec<RightModule> = indecomposable_subquotients(o.ring(), 32, o.bounds())
        .unwrap()
        .into_iter()
        .take(8)
        .collect();
    out.push(o.regular().clone());
    out
}

const TEST_MODULES: usize = 16;
const TEST_SIZE: usize = 64;

/// If `M` is `N`-injective, it is injective relative to every submodule
/// and every factor module of `N`.
pub fn subfactor_closure(r: &Arc<FiniteRing>) -> Tally {
    let spec = r.recipe();
    let o = oracle(r);
    let b = o.bounds();
    let mut t = Tally::default();
    let tests = subquotients(&o, TEST_SIZE, TEST_MODULES);
    for m in subjects(&o) {
        for n in &tests {
            if !relatively_injective(&m, n, b).unwrap() {
                continue;
            }
            for k in lattice(n, b.max_lattice).unwrap() {
                let sub = n.restrict(&k).module;
                let quo = n.quotient(&k).module;
                let ok = relatively_injective(&m, &sub, b).unwrap() && relatively_injective(&m, &quo, b).unwrap();
                t.expect(ok, || format!("{spec}: {} is {}-injective but not for a subfactor", m.name(), n.name()));
            }
        }
    }
    t
}

/// Injectivity decided by right ideals alone agrees with injectivity
/// relative to every tested module.
pub fn baer_equivalence(r: &Arc<FiniteRing>) -> Tally {
    let spec = r.recipe();
    let o = oracle(r);
    let b = o.bounds();
    let mut t = Tally::default();
    let mut tests = subquotients(&o, TEST_SIZE, TEST_MODULES);
    if o.ring().size() <= 16 {
        tests.push(o.regular().direct_sum(o.regular()).unwrap());
    }
    for m in subjects(&o) {
        let baer = o.is_injective(&m).unwrap();
        let full = tests.iter().all(|n| relatively_injective(&m, n, b).unwrap())
            && relatively_injective(&m, o.regular(), b).unwrap();
        t.expect(baer == full, || format!("{spec}: Baer says {baer} for {}, relative tests say {full}", m.name()));
    }
    t
}

/// Over a nonsemisimple ring no module is both injective and poor.
pub fn poor_injective_exclusive(r: &Arc<FiniteRing>) -> Tally {
    let spec = r.recipe();
    let o = oracle(r);
    let mut t = Tally::default();
    let mut mods = subjects(&o);
    mods.extend(subquotients(&o, TEST_SIZE, TEST_MODULES));
    for m in &mods {
        let p = o.profile(m).unwrap();
        if o.is_semisimple_ring() {
            t.expect(p.injective, || format!("{spec}: {} not injective over a semisimple ring", m.name()));
        } else {
            t.expect(!(p.injective && p.poor), || format!("{spec}: {} is injective and poor", m.name()));
        }
    }
    t
}

fn no_middle_class(r: &Arc<FiniteRing>) -> Option<bool> {
    match classify_ring_no_middle_class(r, &Bounds::default()).unwrap().middle_class.unwrap().verdict {
        RingVerdict::NoMiddleClass => Some(true),
        RingVerdict::HasMiddleClass => Some(false),
        RingVerdict::Undecided => None,
    }
}

/// Having no middle class, and having no simple middle class, pass to
/// every factor ring.
pub fn factor_ring_heredity(r: &Arc<FiniteRing>) -> Tally {
    let spec = r.recipe();
    let b = Bounds::default();
    let mut t = Tally::default();
    let o = Oracle::new(r.clone(), b).unwrap();
    let none = no_middle_class(r) == Some(true);
    let simple_none = has_no_simple_middle_class(&o).unwrap().no_simple_middle_class;
    for ideal in two_sided_ideals(r, b.max_lattice).unwrap() {
        if ideal.len() == 1 || ideal.len() == r.size() {
            continue;
        }
        let q = Arc::new(quotient_ring(r, &ideal).unwrap());
        let qo = Oracle::new(q.clone(), b).unwrap();
        if none {
            let found = middle_witness_search(&qo, b.max_module_size).unwrap().witness.is_some();
            t.expect(!found && no_middle_class(&q) != Some(false), || {
                format!("{spec}: factor by an ideal of size {} has a middle class", ideal.len())
            });
        }
        if simple_none {
            let ok = has_no_simple_middle_class(&qo).unwrap().no_simple_middle_class;
            t.expect(ok, || format!("{spec}: factor by an ideal of size {} has a simple middle class", ideal.len()));
        }
    }
    t
}

/// `R` and `GF(2) x R` receive the same verdicts.
pub fn semisimple_summand(r: &Arc<FiniteRing>) -> Tally {
    let mut t = Tally::default();
    let spec = r.recipe();
    if r.size() > 128 || r.spec().is_none() {
        return t;
    }
    let s = ring(&format!("prod(gf(2),{spec})"));
    let b = Bounds::default();
    let (ro, so) = (Oracle::new(r.clone(), b).unwrap(), Oracle::new(s.clone(), b).unwrap());
    let (rv, sv) = (no_middle_class(r), no_middle_class(&s));
    t.expect(rv.is_none() || sv.is_none() || rv == sv, || format!("{spec}: verdicts {rv:?} and {sv:?}"));
    let rw = middle_witness_search(&ro, 64).unwrap().witness.is_some();
    let sw = middle_witness_search(&so, 128).unwrap().witness.is_some();
    t.expect(!rw || sw, || format!("{spec}: witness lost after adding GF(2)"));
    t.expect(!sw || rv != Some(true), || format!("{spec}: witness appears after adding GF(2)"));
    let rs = has_no_simple_middle_class(&ro).unwrap().no_simple_middle_class;
    let ss = has_no_simple_middle_class(&so).unwrap().no_simple_middle_class;
    t.expect(rs == ss, || format!("{spec}: simple verdicts {rs} and {ss}"));
    t
}

/// `length(N) = length(K) + length(N/K)` for every submodule `K`.
pub fn length_additivity(r: &Arc<FiniteRing>) -> Tally {
    let spec = r.recipe();
    let o = oracle(r);
    let b = o.bounds();
    let mut t = Tally::default();
    let mut mods = subquotients(&o, TEST_SIZE, TEST_MODULES);
    mods.push(o.regular().clone());
    for n in &mods {
        let ln = composition_length(n);
        for k in lattice(n, b.max_lattice).unwrap() {
            let lk = composition_length(&n.restrict(&k).module);
            let lq = composition_length(&n.quotient(&k).module);
            t.expect(ln == lk + lq, || format!("{spec}: {} has length {ln} but {lk} + {lq}", n.name()));
        }
    }
    t
}

/// QF and the double annihilator conditions agree on rings of at most 64
/// elements.
pub fn qf_double_annihilator(r: &Arc<FiniteRing>) -> Tally {
    let spec = r.recipe();
    let o = oracle(r);
    let mut t = Tally::default();
    if o.ring().size() <= 64 {
        let p = structural_predicates(&o).unwrap();
        t.expect(p.double_annihilator == Some(p.qf), || format!("{spec}: QF {} vs {:?}", p.qf, p.double_annihilator));
    }
    t
}

/// Hom formulas, isomorphism and unique-local verdicts on a tri ring
/// against brute force.
pub fn tri_formulas(tri: &TriRing) -> Tally {
    let mut t = Tally::default();
    let spec = tri.ring.recipe();
    if tri.ring.size() > 256 {
        return t;
    }
    let big = Bounds {
        max_module_size: 1024,
        ..Bounds::default()
    };
    let n = tri.n;
    let all = all_matrices(&tri);
    let locals: Vec<RightModule> = (1..=n).map(|i| realize_paired(&tri, &tri.dprime, i, &big).unwrap()).collect();
    for i in 1..=n {
        for j in 1..=n {
            let formula = lem1_hom_formula(&tri, i, j, &big).unwrap();
            let cod = realize_paired(&tri, &all, j, &big).unwrap();
            let mut brute = hom_enumerate(&locals[i - 1], &cod, big.max_hom_candidates).unwrap();
            brute.sort();
            t.expect(formula == brute, || {
                format!("{spec}: ({i},{j}) formula gives {} maps, brute force {}", formula.len(), brute.len())
            });
            let iso = is_isomorphic(&locals[i - 1], &locals[j - 1], &big).unwrap();
            let lem2 = lem2_local_factor_iso(n, &tri.dprime, i, j).holds();
            t.expect(iso == lem2, || format!("{spec}: ({i},{j}) isomorphic {iso}, formula {lem2}"));
        }
    }
    let o = Oracle::new(tri.ring.clone(), big).unwrap();
    let classes = o.locals().count();
    let prop1 = prop1_unique_local(&tri.field, n, &tri.dprime).holds();
    t.expect(prop1 == (classes == 1), || format!("{spec}: {classes} local classes, formula {prop1}"));
    t
}

pub fn over_fleet(check: fn(&Arc<FiniteRing>) -> Tally) -> Tally {
    let mut t = Tally::default();
    for r in fleet() {
        t.absorb(check(&r));
    }
    t
}

pub fn over_tri_fleet() -> Tally {
    let mut t = Tally::default();
    for tri in tri_fleet() {
        t.absorb(tri_formulas(&tri));
    }
    t
}
