use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::bounds::Bounds;
use crate::error::Result;
use crate::modkit::{find_isomorphism, is_essential, lattice, maximal_submodules, RightModule, Submodule};
use crate::ringkit::{idempotents, jacobson_radical, Elem, FiniteRing};

/// `{m : mJ = 0}`; over a finite ring this is the socle.
pub fn socle(m: &RightModule) -> Submodule {
    let j = jacobson_radical(m.ring());
    let mut bits = FixedBitSet::with_capacity(m.size());
    for x in m.elements() {
        if j.iter().all(|&r| m.act(x, r) == 0) {
            bits.insert(x as usize);
        }
    }
    Submodule::from_bits(bits)
}

/// `MJ`.
pub fn radical(m: &RightModule) -> Submodule {
    let j = jacobson_radical(m.ring());
    m.additive_span(m.elements().flat_map(|x| j.iter().map(move |&r| m.act(x, r))))
}

/// Intersection of the maximal submodules of a lattice of `m`.
pub fn radical_by_maximals(m: &RightModule, lat: &[Submodule]) -> Submodule {
    maximal_submodules(lat, m.size())
        .into_iter()
        .fold(m.full(), |acc, k| m.intersection(&acc, k))
}

/// `Soc(R_R) = {x : xJ = 0}`.
pub fn right_socle(r: &FiniteRing) -> Vec<Elem> {
    let j = jacobson_radical(r);
    r.elements()
        .filter(|&x| j.iter().all(|&y| r.mul(x, y) == 0))
        .collect()
}

/// `Z(M)`: elements whose annihilator contains the right socle of the ring,
/// i.e. is an essential right ideal.
pub fn singular(m: &RightModule) -> Submodule {
    let soc = right_socle(m.ring());
    let mut bits = FixedBitSet::with_capacity(m.size());
    for x in m.elements() {
        if soc.iter().all(|&s| m.act(x, s) == 0) {
            bits.insert(x as usize);
        }
    }
    Submodule::from_bits(bits)
}

/// `Z(M)` straight from the definition, given the lattice of `R_R`.
pub fn singular_by_essentiality(m: &RightModule, regular_lattice: &[Submodule]) -> Submodule {
    let reg = RightModule::regular(m.ring());
    let mut bits = FixedBitSet::with_capacity(m.size());
    for x in m.elements() {
        let ann = reg
            .submodule_from(&m.annihilator_of(x))
            .expect("annihilators are right ideals");
        if is_essential(&reg, regular_lattice, &ann) {
            bits.insert(x as usize);
        }
    }
    Submodule::from_bits(bits)
}

fn smallest_nonzero_cyclic(m: &RightModule) -> Option<Submodule> {
    let mut best: Option<Submodule> = None;
    for x in m.elements().skip(1) {
        let c = m.cyclic(x);
        if best.as_ref().map_or(true, |b| c.len() < b.len()) {
            best = Some(c);
        }
    }
    best
}

/// Length of a composition series, built by repeatedly factoring out a
/// smallest nonzero cyclic submodule (which is simple).
pub fn composition_length(m: &RightModule) -> usize {
    let mut cur = m.clone();
    let mut n = 0;
    while let Some(c) = smallest_nonzero_cyclic(&cur) {
        cur = cur.quotient(&c).module;
        n += 1;
    }
    n
}

pub fn is_simple(m: &RightModule) -> bool {
    m.size() > 1 && m.elements().skip(1).all(|x| m.cyclic(x).len() == m.size())
}

pub fn is_semisimple(m: &RightModule) -> bool {
    radical(m).is_zero()
}

/// Unique maximal submodule, i.e. `M/MJ` is simple.
pub fn is_local(m: &RightModule) -> bool {
    m.size() > 1 && is_simple(&m.quotient(&radical(m)).module)
}

/// Composition lengths of `M J^k / M J^(k+1)` down to zero.
pub fn radical_layers(m: &RightModule) -> Vec<usize> {
    let mut layers = Vec::new();
    let mut cur = m.clone();
    while cur.size() > 1 {
        let rad = radical(&cur);
        layers.push(composition_length(&cur.quotient(&rad).module));
        cur = cur.restrict(&rad).module;
    }
    layers
}

/// Uniserial: every radical layer is simple.
pub fn is_uniserial(m: &RightModule) -> bool {
    radical_layers(m).iter().all(|&l| l <= 1)
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureProfile {
    pub size: usize,
    pub socle: Submodule,
    pub radical: Submodule,
    pub singular: Submodule,
    pub composition_length: usize,
    pub is_semisimple: bool,
    pub is_local: bool,
}

pub fn structure_profile(m: &RightModule) -> StructureProfile {
    let rad = radical(m);
    let top_simple = m.size() > 1 && is_simple(&m.quotient(&rad).module);
    StructureProfile {
        size: m.size(),
        socle: socle(m),
        is_semisimple: rad.is_zero(),
        radical: rad,
        singular: singular(m),
        composition_length: composition_length(m),
        is_local: top_simple,
    }
}

/// Invariant screen followed by a search for a bijective homomorphism.
pub fn is_isomorphic(a: &RightModule, b: &RightModule, bounds: &Bounds) -> Result<bool> {
    if a.size() != b.size() {
        return Ok(false);
    }
    let key = |m: &RightModule| {
        (
            composition_length(m),
            socle(m).len(),
            radical(m).len(),
            singular(m).len(),
            m.annihilator(),
        )
    };
    if key(a) != key(b) {
        return Ok(false);
    }
    Ok(find_isomorphism(a, b, bounds.max_hom_candidates)?.is_some())
}

fn push_new_class(classes: &mut Vec<RightModule>, m: RightModule, bounds: &Bounds) -> Result<Option<usize>> {
    for (i, c) in classes.iter().enumerate() {
        if is_isomorphic(c, &m, bounds)? {
            return Ok(Some(i));
        }
    }
    classes.push(m);
    Ok(None)
}

/// A simple module class, realized as `R/K` for a maximal right ideal `K`.
#[derive(Debug, Clone)]
pub struct SimpleClass {
    pub module: RightModule,
    pub maximal_ideal: Vec<Elem>,
    /// Isomorphic to `eR` for an idempotent `e` with `eR` simple.
    pub projective: bool,
}

pub fn simples_up_to_iso(ring: &Arc<FiniteRing>, bounds: &Bounds) -> Result<Vec<SimpleClass>> {
    let reg = RightModule::regular(ring);
    let j = reg
        .submodule_from(jacobson_radical(ring))
        .expect("the radical is a right ideal");
    let top = reg.quotient(&j);
    let q = &top.module;
    let mut classes = Vec::new();
    let mut ideals = Vec::new();
    let mut seen = FixedBitSet::with_capacity(q.size());
    for x in q.elements().skip(1) {
        if seen.contains(x as usize) {
            continue;
        }
        let c = q.cyclic(x);
        if !is_simple(&q.restrict(&c).module) {
            continue;
        }
        seen.union_with(c.bits());
        let ann = reg.submodule_from(&q.annihilator_of(x)).expect("right ideal");
        let s = reg.quotient(&ann).module.with_name(format!("R/ann({})", ring.label(top.representatives[x as usize])));
        if push_new_class(&mut classes, s, bounds)?.is_none() {
            ideals.push(ann.members().to_vec());
        }
    }
    let simple_corners: Vec<RightModule> = idempotents(ring)
        .into_iter()
        .filter(|&e| e != 0)
        .map(|e| reg.restrict(&reg.cyclic(e)).module)
        .filter(is_simple)
        .collect();
    let mut out = Vec::with_capacity(classes.len());
    for (module, maximal_ideal) in classes.into_iter().zip(ideals) {
        let mut projective = false;
        for c in &simple_corners {
            if is_isomorphic(c, &module, bounds)? {
                projective = true;
                break;
            }
        }
        out.push(SimpleClass {
            module,
            maximal_ideal,
            projective,
        });
    }
    Ok(out)
}

/// Local modules of composition length two, one per isomorphism class,
/// found among the cyclic modules `R/K`.
pub fn local_length_two_modules(ring: &Arc<FiniteRing>, bounds: &Bounds) -> Result<Vec<RightModule>> {
    let reg = RightModule::regular(ring);
    let lat = lattice(&reg, bounds.max_lattice)?;
    let mut classes = Vec::new();
    for k in &lat {
        let q = reg.quotient(k).module;
        if q.size() < 4 || !is_local(&q) || composition_length(&q) != 2 {
            continue;
        }
        let name = format!("R/K{}", k.len());
        push_new_class(&mut classes, q.with_name(name), bounds)?;
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_spec;
    use crate::ringkit::build_ring;

    fn ring(s: &str) -> Arc<FiniteRing> {
        Arc::new(build_ring(&parse_spec(s).unwrap(), &Bounds::default()).unwrap())
    }

    #[test]
    fn sey2_regular_profile() {
        let r = ring("trimat(zmod(4),zmod(2))");
        let m = RightModule::regular(&r);
        let p = structure_profile(&m);
        assert_eq!(p.socle.members(), jacobson_radical(&r));
        assert_eq!(p.singular, p.socle);
        assert_eq!(p.socle.len(), 4);
        let lat = lattice(&m, 1000).unwrap();
        assert_eq!(singular_by_essentiality(&m, &lat), p.singular);
        assert_eq!(radical_by_maximals(&m, &lat), p.radical);
    }

    #[test]
    fn z4_is_local_of_length_two() {
        let m = RightModule::regular(&ring("zmod(4)"));
        assert_eq!(composition_length(&m), 2);
        assert!(is_local(&m));
        assert!(is_uniserial(&m));
    }

    #[test]
    fn simple_classes() {
        let r = ring("trimat(zmod(4),zmod(2))");
        let s = simples_up_to_iso(&r, &Bounds::default()).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.iter().all(|c| !c.projective));
        let t = simples_up_to_iso(&ring("tri(gf(2);2;companion[1,1,1])"), &Bounds::default()).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.iter().filter(|c| c.projective).count(), 1);
        assert_eq!(simples_up_to_iso(&ring("zmod(8)"), &Bounds::default()).unwrap().len(), 1);
    }

    #[test]
    fn length_two_locals() {
        let b = Bounds::default();
        assert_eq!(local_length_two_modules(&ring("trimat(zmod(4),zmod(2))"), &b).unwrap().len(), 2);
        assert_eq!(local_length_two_modules(&ring("zmod(4)"), &b).unwrap().len(), 1);
    }

    #[test]
    fn composition_length_is_additive() {
        let m = RightModule::regular(&ring("trimat(zmod(4),zmod(2))"));
        let total = composition_length(&m);
        for k in lattice(&m, 1000).unwrap() {
            let sub = m.restrict(&k).module;
            let quo = m.quotient(&k).module;
            assert_eq!(composition_length(&sub) + composition_length(&quo), total);
        }
    }
}
