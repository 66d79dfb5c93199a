use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{check_bound, Error, Result};
use crate::modkit::{lattice, RightModule};
use crate::ringkit::{Elem, FiniteRing};

/// Additive subgroup generated by `seeds`, sorted.
pub fn span(r: &FiniteRing, seeds: impl IntoIterator<Item = Elem>) -> Vec<Elem> {
    let mut seen = FixedBitSet::with_capacity(r.size());
    seen.insert(0);
    let mut members = vec![0];
    let mut queue: Vec<Elem> = seeds.into_iter().collect();
    while let Some(x) = queue.pop() {
        if seen.contains(x as usize) {
            continue;
        }
        let snapshot = members.len();
        seen.insert(x as usize);
        members.push(x);
        for i in 0..snapshot {
            let s = r.add(x, members[i]);
            if !seen.contains(s as usize) {
                queue.push(s);
            }
        }
    }
    members.sort_unstable();
    members
}

/// Two-sided ideal generated by `seeds`, sorted.
pub fn ideal_generated(r: &FiniteRing, seeds: impl IntoIterator<Item = Elem>) -> Vec<Elem> {
    let mut current = span(r, seeds);
    loop {
        let mut seen = FixedBitSet::with_capacity(r.size());
        let mut products = Vec::new();
        for &x in &current {
            for a in r.elements() {
                for p in [r.mul(a, x), r.mul(x, a)] {
                    if !seen.put(p as usize) {
                        products.push(p);
                    }
                }
            }
        }
        let next = span(r, products.into_iter().chain(current.iter().copied()));
        if next.len() == current.len() {
            return current;
        }
        current = next;
    }
}

/// The Jacobson radical as the set of `x` with `1 - xr` a unit for every `r`.
pub fn jacobson_radical(r: &FiniteRing) -> &[Elem] {
    r.radical_cache().get_or_init(|| {
        r.elements()
            .filter(|&x| r.elements().all(|y| r.is_unit(r.sub(r.one(), r.mul(x, y)))))
            .collect()
    })
}

/// Cross-checks the radical: it must be nilpotent, and for rings of at
/// most 128 elements it must equal the intersection of the maximal right
/// ideals.
pub fn verify_radical(r: &FiniteRing) -> Result<()> {
    let j = jacobson_radical(r).to_vec();
    let mut power = j.clone();
    for _ in 0..=r.size() {
        if power.len() == 1 {
            break;
        }
        let prods = power.iter().flat_map(|&a| j.iter().map(move |&b| (a, b)));
        power = span(r, prods.map(|(a, b)| r.mul(a, b)).collect::<Vec<_>>());
    }
    if power.len() != 1 {
        return Err(Error::TheoremMismatch("radical is not nilpotent".into()));
    }
    if r.size() <= 128 && !r.is_zero_ring() {
        let regular = RightModule::regular(&std::sync::Arc::new(r.clone()));
        let lat = lattice(&regular, 20_000)?;
        let proper: Vec<_> = lat.iter().filter(|k| k.len() < r.size()).collect();
        let maximal: Vec<_> = proper
            .iter()
            .filter(|k| !proper.iter().any(|l| l.len() > k.len() && k.is_subset(l)))
            .collect();
        let inter: Vec<Elem> = r
            .elements()
            .filter(|&x| maximal.iter().all(|k| k.contains(x)))
            .collect();
        if inter != j {
            return Err(Error::TheoremMismatch(
                "quasi-regular radical differs from the intersection of maximal right ideals".into(),
            ));
        }
    }
    Ok(())
}

pub fn is_commutative(r: &FiniteRing) -> bool {
    r.elements()
        .all(|a| r.elements().all(|b| r.mul(a, b) == r.mul(b, a)))
}

/// True iff the non-units form an additive subgroup.
pub fn is_local_ring(r: &FiniteRing) -> bool {
    if r.is_zero_ring() {
        return false;
    }
    let non_units: Vec<Elem> = r.elements().filter(|&a| !r.is_unit(a)).collect();
    non_units
        .iter()
        .all(|&a| non_units.iter().all(|&b| !r.is_unit(r.add(a, b))))
}

pub fn idempotents(r: &FiniteRing) -> Vec<Elem> {
    r.elements().filter(|&e| r.mul(e, e) == e).collect()
}

pub fn central_idempotents(r: &FiniteRing) -> Vec<Elem> {
    idempotents(r)
        .into_iter()
        .filter(|&e| r.elements().all(|x| r.mul(e, x) == r.mul(x, e)))
        .collect()
}

/// Nonzero idempotents `e` whose corner ring `eRe` has no idempotents other
/// than `0` and `e`.
pub fn primitive_idempotents(r: &FiniteRing) -> Vec<Elem> {
    let all = idempotents(r);
    all.iter()
        .copied()
        .filter(|&e| e != 0)
        .filter(|&e| {
            all.iter()
                .all(|&f| f == 0 || f == e || r.mul(r.mul(e, f), e) != f)
        })
        .collect()
}

/// The corner `eR` for a central idempotent `e`, as a ring with identity `e`.
fn corner(r: &FiniteRing, e: Elem) -> FiniteRing {
    let members: BTreeSet<Elem> = r.elements().map(|x| r.mul(e, x)).collect();
    let members: Vec<Elem> = members.into_iter().collect();
    let pos: HashMap<Elem, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let m = members.len();
    let labels = members.iter().map(|&x| r.label(x).to_string()).collect();
    FiniteRing::tabulate(
        m,
        |a, b| pos[&r.add(members[a], members[b])],
        |a, b| pos[&r.mul(members[a], members[b])],
        pos[&e],
        labels,
        format!("{}*{}", r.label(e), r.recipe()),
    )
}

/// `R / I` for a two-sided ideal `I`; cosets are ordered by their least
/// element, so the zero coset is element 0.
pub fn quotient_ring(r: &FiniteRing, ideal: &[Elem]) -> Result<FiniteRing> {
    let closed = ideal.iter().all(|&i| {
        ideal.iter().all(|&k| ideal.binary_search(&r.add(i, k)).is_ok())
            && r.elements()
                .all(|a| ideal.binary_search(&r.mul(a, i)).is_ok() && ideal.binary_search(&r.mul(i, a)).is_ok())
    });
    if !closed || ideal.binary_search(&0).is_err() {
        return Err(Error::Invalid("not a two-sided ideal".into()));
    }
    let mut class = vec![usize::MAX; r.size()];
    let mut reps = Vec::new();
    for x in r.elements() {
        if class[x as usize] == usize::MAX {
            for &i in ideal {
                class[r.add(x, i) as usize] = reps.len();
            }
            reps.push(x);
        }
    }
    let labels = reps.iter().map(|&x| format!("{}+I", r.label(x))).collect();
    Ok(FiniteRing::tabulate(
        reps.len(),
        |a, b| class[r.add(reps[a], reps[b]) as usize],
        |a, b| class[r.mul(reps[a], reps[b]) as usize],
        class[r.one() as usize],
        labels,
        format!("{}/<ideal of size {}>", r.recipe(), ideal.len()),
    ))
}

/// Every two-sided ideal: principal ideals closed under sums.
pub fn two_sided_ideals(r: &FiniteRing, max: usize) -> Result<Vec<Vec<Elem>>> {
    ideals_closure(r, r.elements().collect(), max)
}

fn ideals_closure(r: &FiniteRing, generators: Vec<Elem>, max: usize) -> Result<Vec<Vec<Elem>>> {
    let mut found: BTreeSet<Vec<Elem>> = BTreeSet::new();
    found.insert(vec![0]);
    let principal: BTreeSet<Vec<Elem>> =
        generators.iter().map(|&x| ideal_generated(r, [x])).collect();
    let principal: Vec<Vec<Elem>> = principal.into_iter().collect();
    let mut frontier: Vec<Vec<Elem>> = vec![vec![0]];
    while let Some(i) = frontier.pop() {
        for p in &principal {
            if p.iter().all(|x| i.binary_search(x).is_ok()) {
                continue;
            }
            let sum = span(r, i.iter().chain(p.iter()).copied().collect::<Vec<_>>());
            if found.insert(sum.clone()) {
                check_bound("ideal lattice size", found.len() as u64, max as u64)?;
                frontier.push(sum);
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Two-sided ideals contained in the radical.
#[derive(Debug, Clone, Serialize)]
pub struct RadicalIdeals {
    pub radical: Vec<Elem>,
    pub ideals: Vec<Vec<Elem>>,
    /// Some ideal `I` has `0 != I` and `I` properly inside the radical.
    pub properly_contains_nonzero: bool,
    pub witness: Option<Vec<Elem>>,
}

pub fn ideals_within_radical(r: &FiniteRing, max: usize) -> Result<RadicalIdeals> {
    let j = jacobson_radical(r).to_vec();
    let ideals = ideals_closure(r, j.clone(), max)?;
    let witness = ideals
        .iter()
        .filter(|i| i.len() > 1 && i.len() < j.len())
        .min_by_key(|i| (i.len(), (*i).clone()))
        .cloned();
    Ok(RadicalIdeals {
        radical: j,
        ideals,
        properly_contains_nonzero: witness.is_some(),
        witness,
    })
}

/// One indecomposable ring direct summand `eR`.
#[derive(Debug, Clone)]
pub struct Factor {
    pub idempotent: Elem,
    pub ring: FiniteRing,
    pub semisimple: bool,
}

/// `R = S x T` with `S` the product of the semisimple indecomposable
/// factors and `T` the product of the others.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub factors: Vec<Factor>,
    pub s_idempotent: Elem,
    pub t_idempotent: Elem,
    pub s: FiniteRing,
    pub t: FiniteRing,
}

pub fn decompose_ring(r: &FiniteRing) -> Result<Decomposition> {
    let central = central_idempotents(r);
    let primitive: Vec<Elem> = central
        .iter()
        .copied()
        .filter(|&e| e != 0)
        .filter(|&e| central.iter().all(|&f| f == 0 || f == e || r.mul(f, e) != f))
        .collect();
    let factors: Vec<Factor> = primitive
        .iter()
        .map(|&e| {
            let ring = corner(r, e);
            let semisimple = jacobson_radical(&ring).len() == 1;
            Factor { idempotent: e, ring, semisimple }
        })
        .collect();
    // x -> (e_1 x, ..., e_k x) must be a ring isomorphism onto the product.
    let images: BTreeSet<Vec<Elem>> = r
        .elements()
        .map(|x| primitive.iter().map(|&e| r.mul(e, x)).collect())
        .collect();
    let product_size: usize = factors.iter().map(|f| f.ring.size()).product();
    let sum_is_one = primitive.iter().fold(0, |acc, &e| r.add(acc, e)) == r.one();
    let orthogonal = primitive
        .iter()
        .all(|&e| primitive.iter().all(|&f| e == f || r.mul(e, f) == 0));
    if images.len() != r.size() || product_size != r.size() || !sum_is_one || !orthogonal {
        return Err(Error::TheoremMismatch(
            "central idempotent decomposition does not reassemble the ring".into(),
        ));
    }
    let pick = |semi: bool| {
        factors
            .iter()
            .filter(|f| f.semisimple == semi)
            .fold(0, |acc, f| r.add(acc, f.idempotent))
    };
    let (s_idem, t_idem) = (pick(true), pick(false));
    let s = corner(r, s_idem).with_provenance(format!("S-part of {}", r.recipe()), None);
    let t = corner(r, t_idem).with_provenance(format!("T-part of {}", r.recipe()), None);
    Ok(Decomposition {
        factors,
        s_idempotent: s_idem,
        t_idempotent: t_idem,
        s,
        t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Bounds;
    use crate::dsl::parse_spec;
    use crate::ringkit::build_ring;

    fn ring(s: &str) -> FiniteRing {
        build_ring(&parse_spec(s).unwrap(), &Bounds::default()).unwrap()
    }

    fn labels(r: &FiniteRing, set: &[Elem]) -> Vec<String> {
        set.iter().map(|&x| r.label(x).to_string()).collect()
    }

    #[test]
    fn radicals() {
        let z4 = ring("zmod(4)");
        assert_eq!(jacobson_radical(&z4), &[0, 2]);
        assert_eq!(jacobson_radical(&ring("gf(3)")), &[0]);
        let sey2 = ring("trimat(zmod(4),zmod(2))");
        assert_eq!(
            labels(&sey2, jacobson_radical(&sey2)),
            ["[[0,0],[0,0]]", "[[0,0],[1,0]]", "[[2,0],[0,0]]", "[[2,0],[1,0]]"]
        );
        for s in ["zmod(8)", "trimat(zmod(4),zmod(2))", "idealize(gf(2),2)", "tri(gf(2);2;scalars)", "mat(zmod(4),2)"] {
            verify_radical(&ring(s)).unwrap();
        }
    }

    #[test]
    fn decompositions() {
        let d = decompose_ring(&ring("zmod(12)")).unwrap();
        let mut sizes: Vec<usize> = d.factors.iter().map(|f| f.ring.size()).collect();
        sizes.sort();
        assert_eq!(sizes, [3, 4]);
        assert_eq!((d.s.size(), d.t.size()), (3, 4));
        assert_eq!(decompose_ring(&ring("trimat(zmod(4),zmod(2))")).unwrap().factors.len(), 1);
        let d = decompose_ring(&ring("prod(gf(2),zmod(4))")).unwrap();
        assert_eq!((d.s.size(), d.t.size()), (2, 4));
        let d = decompose_ring(&ring("gf(5)")).unwrap();
        assert_eq!((d.s.size(), d.t.size()), (5, 1));
    }

    #[test]
    fn radical_ideals() {
        let z4 = ideals_within_radical(&ring("zmod(4)"), 1000).unwrap();
        assert_eq!(z4.ideals.len(), 2);
        assert!(!z4.properly_contains_nonzero);
        let sey2 = ring("trimat(zmod(4),zmod(2))");
        let ri = ideals_within_radical(&sey2, 1000).unwrap();
        assert!(ri.properly_contains_nonzero);
        assert!(ri.ideals.iter().any(|i| labels(&sey2, i) == ["[[0,0],[0,0]]", "[[2,0],[0,0]]"]));
        let ide = ring("idealize(gf(2),2)");
        let ri = ideals_within_radical(&ide, 1000).unwrap();
        assert_eq!(ri.ideals.iter().filter(|i| i.len() == 2).count(), 3);
        assert!(ri.properly_contains_nonzero);
    }

    #[test]
    fn locality_and_commutativity() {
        assert!(is_local_ring(&ring("zmod(8)")));
        assert!(!is_local_ring(&ring("prod(gf(2),gf(2))")));
        assert!(is_local_ring(&ring("idealize(gf(2),2)")));
        assert!(is_commutative(&ring("zmod(9)")));
        assert!(!is_commutative(&ring("trimat(zmod(4),zmod(2))")));
        assert!(is_commutative(&ring("idealize(gf(2),2)")));
    }

    #[test]
    fn quotient_by_radical_is_semisimple() {
        for s in ["zmod(8)", "trimat(zmod(4),zmod(2))", "idealize(gf(2),2)", "tri(gf(2);2;companion[1,1,1])"] {
            let r = ring(s);
            let q = quotient_ring(&r, jacobson_radical(&r)).unwrap();
            assert_eq!(jacobson_radical(&q).len(), 1, "{s}");
        }
    }

    #[test]
    fn ideal_counts() {
        assert_eq!(two_sided_ideals(&ring("zmod(12)"), 100).unwrap().len(), 6);
        assert_eq!(two_sided_ideals(&ring("mat(gf(2),2)"), 100).unwrap().len(), 2);
    }
}
