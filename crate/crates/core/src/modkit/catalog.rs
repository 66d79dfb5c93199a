use std::sync::Arc;

use crate::bounds::Bounds;
use crate::error::Result;
use crate::modkit::{hom_enumerate, is_isomorphic, lattice, RightModule};
use crate::ringkit::FiniteRing;

/// `End(M)` has no idempotents besides 0 and 1.
pub fn is_indecomposable(m: &RightModule, bounds: &Bounds) -> Result<bool> {
    if m.size() == 1 {
        return Ok(false);
    }
    let ends = hom_enumerate(m, m, bounds.max_hom_candidates)?;
    let identity: Vec<_> = m.elements().collect();
    let nontrivial = ends.iter().any(|f| {
        let zero = f.values.iter().all(|&v| v == 0);
        let idempotent = f.values.iter().all(|&v| f.apply(v) == v);
        idempotent && !zero && f.values != identity
    });
    Ok(!nontrivial)
}

/// Indecomposable subquotients `L/K` of `R_R` up to isomorphism, sorted by
/// size. Every subquotient of a cyclic module has this form.
pub fn indecomposable_subquotients(ring: &Arc<FiniteRing>, max_size: usize, bounds: &Bounds) -> Result<Vec<RightModule>> {
    let reg = RightModule::regular(ring);
    let lat = lattice(&reg, bounds.max_lattice)?;
    let mut found: Vec<RightModule> = Vec::new();
    for l in &lat {
        for k in lat.iter().filter(|k| k.len() < l.len() && k.is_subset(l)) {
            if l.len() / k.len() > max_size {
                continue;
            }
            let q = reg.subquotient(l, k);
            if !is_indecomposable(&q, bounds)? {
                continue;
            }
            let mut new = true;
            for c in &found {
                if is_isomorphic(c, &q, bounds)? {
                    new = false;
                    break;
                }
            }
            if new {
                found.push(q);
            }
        }
    }
    found.sort_by_key(|m| m.size());
    Ok(found)
}

/// Every direct sum of the given modules (with repetition) of size at most
/// `max_size`, together with its multiplicity vector.
pub fn direct_sums_up_to(parts: &[RightModule], max_size: usize) -> Result<Vec<(Vec<usize>, RightModule)>> {
    fn go(
        parts: &[RightModule],
        i: usize,
        current: RightModule,
        mult: &mut Vec<usize>,
        max_size: usize,
        out: &mut Vec<(Vec<usize>, RightModule)>,
    ) -> Result<()> {
        if i == parts.len() {
            if current.size() > 1 {
                out.push((mult.clone(), current));
            }
            return Ok(());
        }
        go(parts, i + 1, current.clone(), mult, max_size, out)?;
        let mut acc = current;
        let mut k = 0;
        while acc.size() * parts[i].size() <= max_size {
            acc = acc.direct_sum(&parts[i])?;
            k += 1;
            mult[i] = k;
            go(parts, i + 1, acc.clone(), mult, max_size, out)?;
        }
        mult[i] = 0;
        Ok(())
    }
    let Some(first) = parts.first() else {
        return Ok(Vec::new());
    };
    let zero = first.quotient(&first.full()).module.with_name("0");
    let mut out = Vec::new();
    go(parts, 0, zero, &mut vec![0; parts.len()], max_size, &mut out)?;
    Ok(out)
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
    fn z4_indecomposables() {
        let b = Bounds::default();
        let ind = indecomposable_subquotients(&ring("zmod(4)"), 64, &b).unwrap();
        assert_eq!(ind.iter().map(|m| m.size()).collect::<Vec<_>>(), vec![2, 4]);
        let sums = direct_sums_up_to(&ind, 16).unwrap();
        // (Z/2)^a + (Z/4)^b with a + 2b <= 4
        assert_eq!(sums.len(), 8);
    }
}
