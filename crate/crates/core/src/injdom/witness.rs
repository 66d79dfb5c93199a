use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::injdom::{relatively_injective, ExtensionFailure, InjectivityProfile, ModuleClass, Oracle};
use crate::modkit::{radical, simples_up_to_iso, RightModule};
use crate::ringkit::Elem;

/// A module that is neither injective nor poor, with everything needed to
/// confirm that without repeating the search.
#[derive(Debug, Clone, Serialize)]
pub struct MiddleWitness {
    pub module: RightModule,
    /// The witness is `L/K` for right ideals `K < L`.
    pub numerator: Vec<Elem>,
    pub denominator: Vec<Elem>,
    pub cyclic: bool,
    pub profile: InjectivityProfile,
    /// A nonsemisimple module relative to which the witness is injective.
    pub domain_member: RightModule,
    pub baer_failure: ExtensionFailure,
}

impl MiddleWitness {
    pub fn recheck(&self, bounds: &Bounds) -> Result<bool> {
        let n = &self.domain_member;
        let reg = RightModule::regular(self.module.ring());
        Ok(!radical(n).is_zero()
            && relatively_injective(&self.module, n, bounds)?
            && self.baer_failure.recheck(&self.module, &reg, bounds)?)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessSearch {
    pub witness: Option<MiddleWitness>,
    /// Candidate subquotients scanned, before removing repeated tables.
    pub examined: usize,
    /// Candidates actually classified.
    pub distinct: usize,
    pub bound: usize,
}

fn table_hash(m: &RightModule) -> u64 {
    let mut h = DefaultHasher::new();
    m.tables().hash(&mut h);
    h.finish()
}

const BATCH: usize = 32;

/// Scans the cyclic modules `R/K` and then their submodules `L/K`, each
/// phase by ascending size and then lattice order, for the first module of
/// size at most `bound` that is neither injective nor poor.
pub fn middle_witness_search(oracle: &Oracle, bound: usize) -> Result<WitnessSearch> {
    let lat = oracle.right_ideals();
    let reg = oracle.regular();
    let top = lat.len() - 1;
    let mut order: Vec<(bool, usize, usize, usize)> = Vec::new();
    for (li, l) in lat.iter().enumerate() {
        for (ki, k) in lat.iter().enumerate() {
            if k.len() < l.len() && k.is_subset(l) {
                let size = l.len() / k.len();
                if size <= bound {
                    order.push((li != top, size, li, ki));
                }
            }
        }
    }
    order.sort();
    let build = |&(_, _, li, ki): &(bool, usize, usize, usize)| reg.subquotient(&lat[li], &lat[ki]);
    let mut seen: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut distinct = 0;
    let mut batch: Vec<(usize, RightModule)> = Vec::with_capacity(BATCH);
    let mut pos = 0;
    while pos < order.len() || !batch.is_empty() {
        while batch.len() < BATCH && pos < order.len() {
            let m = build(&order[pos]);
            let h = table_hash(&m);
            let bucket = seen.entry(h).or_default();
            let repeat = bucket.iter().any(|&j| build(&order[j]).tables() == m.tables());
            if !repeat {
                bucket.push(pos);
                batch.push((pos, m));
                distinct += 1;
            }
            pos += 1;
        }
        let classes: Vec<Result<ModuleClass>> = batch.par_iter().map(|(_, m)| oracle.classify(m)).collect();
        for ((idx, m), class) in batch.drain(..).zip(classes) {
            if class? == ModuleClass::Middle {
                let (cyclic, _, li, ki) = order[idx];
                let witness = certify(oracle, m, lat[li].members().to_vec(), lat[ki].members().to_vec(), !cyclic)?;
                return Ok(WitnessSearch {
                    witness: Some(witness),
                    examined: idx + 1,
                    distinct,
                    bound,
                });
            }
        }
    }
    Ok(WitnessSearch {
        witness: None,
        examined: order.len(),
        distinct,
        bound,
    })
}

fn certify(
    oracle: &Oracle,
    module: RightModule,
    numerator: Vec<Elem>,
    denominator: Vec<Elem>,
    cyclic: bool,
) -> Result<MiddleWitness> {
    let profile = oracle.profile(&module)?;
    let member = (0..oracle.locals.len())
        .find(|&i| profile.verdicts[i + 1].relatively_injective)
        .ok_or_else(|| Error::Invalid("middle module without a nonsemisimple domain member".into()))?;
    let baer_failure = oracle
        .baer_failure(&module)?
        .ok_or_else(|| Error::Invalid("middle module passes Baer's test".into()))?;
    Ok(MiddleWitness {
        domain_member: oracle.locals[member].module.clone(),
        module,
        numerator,
        denominator,
        cyclic,
        profile,
        baer_failure,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SimpleVerdict {
    pub name: String,
    pub size: usize,
    pub projective: bool,
    pub injective: bool,
    pub poor: bool,
    pub class: ModuleClass,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimpleMiddleClass {
    pub no_simple_middle_class: bool,
    pub simples: Vec<SimpleVerdict>,
    /// Index into `simples` of the first simple module in the middle class.
    pub witness: Option<usize>,
}

/// Complete decision: the simple modules are finitely many and each is
/// classified exactly.
pub fn has_no_simple_middle_class(oracle: &Oracle) -> Result<SimpleMiddleClass> {
    let simples = simples_up_to_iso(oracle.ring(), oracle.bounds())?;
    let mut out = Vec::with_capacity(simples.len());
    for s in &simples {
        let p = oracle.profile(&s.module)?;
        out.push(SimpleVerdict {
            name: s.module.name().to_string(),
            size: s.module.size(),
            projective: s.projective,
            injective: p.injective,
            poor: p.poor,
            class: p.class,
        });
    }
    let witness = out.iter().position(|v| v.class == ModuleClass::Middle);
    Ok(SimpleMiddleClass {
        no_simple_middle_class: witness.is_none(),
        simples: out,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::dsl::parse_spec;
    use crate::ringkit::build_ring;

    fn oracle(s: &str) -> Oracle {
        let r = Arc::new(build_ring(&parse_spec(s).unwrap(), &Bounds::default()).unwrap());
        Oracle::new(r, Bounds::default()).unwrap()
    }

    #[test]
    fn z8_witness_is_z4() {
        let o = oracle("zmod(8)");
        let w = middle_witness_search(&o, 64).unwrap().witness.unwrap();
        assert_eq!(w.module.size(), 4);
        assert!(w.cyclic);
        assert!(w.recheck(o.bounds()).unwrap());
    }

    #[test]
    fn z4_has_no_witness() {
        let o = oracle("zmod(4)");
        let s = middle_witness_search(&o, 64).unwrap();
        assert!(s.witness.is_none());
        assert!(s.distinct >= 2);
    }

    #[test]
    fn simple_middle_classes() {
        assert!(has_no_simple_middle_class(&oracle("zmod(8)")).unwrap().no_simple_middle_class);
        let p = has_no_simple_middle_class(&oracle("prod(zmod(4),zmod(4))")).unwrap();
        assert!(!p.no_simple_middle_class);
        assert!(p.witness.is_some());
    }
}
