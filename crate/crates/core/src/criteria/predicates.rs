use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::bounds::Bounds;
use crate::error::Result;
use crate::injdom::Oracle;
use crate::modkit::{
    composition_length, is_isomorphic, is_simple, is_uniserial, lattice, right_socle, simples_up_to_iso, singular,
    RightModule,
};
use crate::ringkit::{
    ideals_within_radical, is_commutative, is_local_ring, jacobson_radical, primitive_idempotents, Elem, FiniteRing,
};

/// Flags of a finite ring, computed directly from its tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralPredicates {
    pub size: usize,
    pub commutative: bool,
    pub local: bool,
    pub semisimple: bool,
    /// Composition length of `R_R`.
    pub length: usize,
    pub serial: bool,
    /// Every simple module is injective or projective.
    #[serde(rename = "GV")]
    pub gv: bool,
    /// Equal to `gv` for finite rings, which are semilocal.
    #[serde(rename = "SI")]
    pub si: bool,
    #[serde(rename = "QF")]
    pub qf: bool,
    /// Double annihilator conditions on both sides; computed for rings of
    /// at most 64 elements.
    pub double_annihilator: Option<bool>,
    pub homogeneous_socle: bool,
    #[serde(rename = "Soc=J=Z")]
    pub soc_eq_j_eq_z: bool,
    #[serde(rename = "J^2=0")]
    pub j_squared_zero: bool,
    /// The radical properly contains a nonzero two-sided ideal.
    pub radical_ideal_flag: bool,
    pub simple_classes: usize,
}

/// Distinct simple right ideals of `R`.
pub fn simple_right_ideals(ring: &Arc<FiniteRing>) -> Vec<RightModule> {
    let reg = RightModule::regular(ring);
    let mut seen = FixedBitSet::with_capacity(ring.size());
    let mut out = Vec::new();
    for x in right_socle(ring).into_iter().skip(1) {
        if seen.contains(x as usize) {
            continue;
        }
        let c = reg.cyclic(x);
        let m = reg.restrict(&c).module;
        if is_simple(&m) {
            seen.union_with(c.bits());
            out.push(m.with_name(format!("{}R", ring.label(x))));
        }
    }
    out
}

fn homogeneous(parts: &[RightModule], bounds: &Bounds) -> Result<bool> {
    for p in parts.iter().skip(1) {
        if !is_isomorphic(&parts[0], p, bounds)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_serial(ring: &Arc<FiniteRing>) -> bool {
    let op = Arc::new(ring.opposite());
    let reg = RightModule::regular(ring);
    let reg_op = RightModule::regular(&op);
    primitive_idempotents(ring).into_iter().all(|e| {
        is_uniserial(&reg.restrict(&reg.cyclic(e)).module) && is_uniserial(&reg_op.restrict(&reg_op.cyclic(e)).module)
    })
}

fn annihilator_closed(r: &FiniteRing, ideal: &[Elem]) -> bool {
    let left: Vec<Elem> = r.elements().filter(|&x| ideal.iter().all(|&i| r.mul(x, i) == 0)).collect();
    let back: Vec<Elem> = r.elements().filter(|&y| left.iter().all(|&l| r.mul(l, y) == 0)).collect();
    back == ideal
}

fn double_annihilator(ring: &Arc<FiniteRing>, bounds: &Bounds) -> Result<bool> {
    let op = Arc::new(ring.opposite());
    for r in [ring, &op] {
        let reg = RightModule::regular(r);
        for i in lattice(&reg, bounds.max_lattice)? {
            if !annihilator_closed(r, i.members()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn structural_predicates(oracle: &Oracle) -> Result<StructuralPredicates> {
    let ring = oracle.ring();
    let bounds = oracle.bounds();
    let j = jacobson_radical(ring);
    let reg = oracle.regular();
    let simples = simples_up_to_iso(ring, bounds)?;
    let mut gv = true;
    for s in &simples {
        if !s.projective && !oracle.is_injective(&s.module)? {
            gv = false;
            break;
        }
    }
    let soc = right_socle(ring);
    let z = singular(reg);
    let j_squared_zero = j.iter().all(|&a| j.iter().all(|&b| ring.mul(a, b) == 0));
    Ok(StructuralPredicates {
        size: ring.size(),
        commutative: is_commutative(ring),
        local: is_local_ring(ring),
        semisimple: oracle.is_semisimple_ring(),
        length: composition_length(reg),
        serial: is_serial(ring),
        gv,
        si: gv,
        qf: oracle.is_injective(reg)?,
        double_annihilator: if ring.size() <= 64 {
            Some(double_annihilator(ring, bounds)?)
        } else {
            None
        },
        homogeneous_socle: homogeneous(&simple_right_ideals(ring), bounds)?,
        soc_eq_j_eq_z: soc == j && z.members() == j,
        j_squared_zero,
        radical_ideal_flag: ideals_within_radical(ring, bounds.max_lattice)?.properly_contains_nonzero,
        simple_classes: simples.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_spec;
    use crate::ringkit::build_ring;

    fn preds(s: &str) -> StructuralPredicates {
        let r = Arc::new(build_ring(&parse_spec(s).unwrap(), &Bounds::default()).unwrap());
        structural_predicates(&Oracle::new(r, Bounds::default()).unwrap()).unwrap()
    }

    #[test]
    fn sey2_flags() {
        let p = preds("trimat(zmod(4),zmod(2))");
        assert!(p.soc_eq_j_eq_z);
        assert!(p.homogeneous_socle);
        assert!(!p.gv);
        assert!(!p.qf);
        assert!(!p.serial);
        assert!(p.radical_ideal_flag);
        assert_eq!(p.double_annihilator, Some(false));
    }

    #[test]
    fn z4_flags() {
        let p = preds("zmod(4)");
        assert!(p.serial && p.qf && p.j_squared_zero && p.local && p.commutative);
        assert_eq!(p.double_annihilator, Some(true));
        assert_eq!(p.length, 2);
    }

    #[test]
    fn lower_triangular_gf2_flags() {
        let p = preds("tri(gf(2);1;full)");
        assert!(p.si && p.gv);
        assert!(p.homogeneous_socle);
        assert!(p.serial);
        assert!(!p.qf);
    }
}
