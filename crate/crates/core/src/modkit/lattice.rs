use std::collections::BTreeSet;

use crate::error::{check_bound, Result};
use crate::modkit::{RightModule, Submodule};

/// Distinct cyclic submodules `mR`, sorted.
pub fn cyclic_submodules(m: &RightModule) -> Vec<Submodule> {
    let set: BTreeSet<Submodule> = m.elements().map(|x| m.cyclic(x)).collect();
    set.into_iter().collect()
}

/// Every submodule of `m`, in ascending size then lexicographic order.
///
/// Starts from the zero submodule and adds cyclic submodules until no new
/// sum appears.
pub fn lattice(m: &RightModule, max: usize) -> Result<Vec<Submodule>> {
    let cyclics = cyclic_submodules(m);
    let mut found: BTreeSet<Submodule> = BTreeSet::new();
    let zero = m.zero_submodule();
    found.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(k) = frontier.pop() {
        for c in &cyclics {
            if c.is_subset(&k) {
                continue;
            }
            let s = m.sum(&k, c);
            if !found.contains(&s) {
                found.insert(s.clone());
                check_bound("submodule lattice size", found.len() as u64, max as u64)?;
                frontier.push(s);
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Maximal proper members of a lattice.
pub fn maximal_submodules<'a>(lat: &'a [Submodule], total: usize) -> Vec<&'a Submodule> {
    let proper: Vec<&Submodule> = lat.iter().filter(|k| k.len() < total).collect();
    proper
        .iter()
        .copied()
        .filter(|k| !proper.iter().any(|l| l.len() > k.len() && k.is_subset(l)))
        .collect()
}

/// Minimal nonzero members of a lattice.
pub fn minimal_submodules(lat: &[Submodule]) -> Vec<&Submodule> {
    let nonzero: Vec<&Submodule> = lat.iter().filter(|k| !k.is_zero()).collect();
    nonzero
        .iter()
        .copied()
        .filter(|k| !nonzero.iter().any(|l| l.len() < k.len() && l.is_subset(k)))
        .collect()
}

/// Essential in the definitional sense: meets every nonzero submodule.
pub fn is_essential(m: &RightModule, lat: &[Submodule], k: &Submodule) -> bool {
    lat.iter()
        .filter(|l| !l.is_zero())
        .all(|l| !m.intersection(k, l).is_zero())
}
