//! Exhaustive injectivity oracle: relative and Baer injectivity, poorness
//! and the injective / poor / middle trichotomy for single modules.
//!
//! `M` is `N`-injective iff restriction `Hom(N, M) -> Hom(K, M)` is onto for
//! every `K <= N`. Its kernel is `Hom(N/K, M)`, so this is the counting
//! condition `|Hom(N, M)| = |Hom(K, M)| * |Hom(N/K, M)|`.

mod witness;

use std::borrow::Cow;
use std::collections::HashSet;
use std::ops::ControlFlow;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::modkit::{
    is_semisimple, lattice, local_length_two_modules, radical, HomPlan, HomSearch, ModuleMap,
    RightModule, Submodule,
};
use crate::ringkit::{jacobson_radical, Elem, FiniteRing};

pub use witness::{
    has_no_simple_middle_class, middle_witness_search, MiddleWitness, SimpleMiddleClass,
    SimpleVerdict, WitnessSearch,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleClass {
    Injective,
    Poor,
    Middle,
}

impl std::fmt::Display for ModuleClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Injective => "injective",
            Self::Poor => "poor",
            Self::Middle => "middle",
        })
    }
}

/// A map `K -> M` on a submodule `K <= N` with no extension to `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionFailure {
    pub submodule: Vec<Elem>,
    /// `(k, f(k))` for every `k` in the submodule.
    pub map: Vec<(Elem, Elem)>,
    /// Image candidates examined by the exhausted extension search.
    pub candidates_examined: u64,
}

impl ExtensionFailure {
    /// Re-runs the certificate: `K` is a submodule, the map is a
    /// homomorphism on it, and an exhaustive search finds no extension.
    pub fn recheck(&self, m: &RightModule, n: &RightModule, bounds: &Bounds) -> Result<bool> {
        let Ok(k) = n.submodule_from(&self.submodule) else {
            return Ok(false);
        };
        if self.map.len() != k.len() || self.map.iter().zip(k.members()).any(|(p, &x)| p.0 != x) {
            return Ok(false);
        }
        let sub = n.restrict(&k);
        let f = ModuleMap {
            values: self.map.iter().map(|p| p.1).collect(),
        };
        if !f.is_homomorphism(&sub.module, m) {
            return Ok(false);
        }
        let (found, examined) = extension_exists(m, n, &k, &self.map, bounds)?;
        Ok(!found && examined == self.candidates_examined)
    }
}

fn extension_exists(
    m: &RightModule,
    n: &RightModule,
    k: &Submodule,
    map: &[(Elem, Elem)],
    bounds: &Bounds,
) -> Result<(bool, u64)> {
    let search = HomSearch::new(n, k, &n.full(), m);
    let mut found = false;
    let stats = search.for_each(map, bounds.max_hom_candidates, |_| {
        found = true;
        ControlFlow::Break(())
    })?;
    Ok((found, stats.candidates))
}

fn hom_total(n: &RightModule, m: &RightModule, bounds: &Bounds) -> Result<u128> {
    Ok(HomSearch::from_submodule(n, &n.full(), m)
        .count(&[], bounds.max_hom_candidates)?
        .0)
}

/// Counts for one `K <= N`: `(|Hom(K, M)|, |Hom(N/K, M)|)`.
fn split_counts(m: &RightModule, n: &RightModule, k: &Submodule, bounds: &Bounds) -> Result<(u128, u128)> {
    let limit = bounds.max_hom_candidates;
    let on_k = HomSearch::from_submodule(n, k, m).count(&[], limit)?.0;
    let zero_on_k: Vec<(Elem, Elem)> = k.members().iter().map(|&x| (x, 0)).collect();
    let on_quotient = HomSearch::new(n, k, &n.full(), m).count(&zero_on_k, limit)?.0;
    Ok((on_k, on_quotient))
}

/// The first `K <= N` (in lattice order) at which restriction fails to be
/// onto, or `None` when `M` is `N`-injective.
fn first_obstruction(m: &RightModule, n: &RightModule, bounds: &Bounds) -> Result<Option<Submodule>> {
    if is_semisimple(n) {
        return Ok(None);
    }
    let lat = lattice(n, bounds.max_lattice)?;
    let total = hom_total(n, m, bounds)?;
    let proper: Vec<&Submodule> = lat.iter().filter(|k| !k.is_zero() && k.len() < n.size()).collect();
    let checks: Vec<Result<bool>> = proper
        .par_iter()
        .map(|k| split_counts(m, n, k, bounds).map(|(a, b)| a * b == total))
        .collect();
    for (k, ok) in proper.into_iter().zip(checks) {
        if !ok? {
            return Ok(Some(k.clone()));
        }
    }
    Ok(None)
}

/// `M` is `N`-injective: every map from a submodule of `N` into `M`
/// extends to `N`. Semisimple `N` is accepted without search.
pub fn relatively_injective(m: &RightModule, n: &RightModule, bounds: &Bounds) -> Result<bool> {
    Ok(first_obstruction(m, n, bounds)?.is_none())
}

/// A concrete map witnessing that `M` is not `N`-injective.
pub fn extension_failure(m: &RightModule, n: &RightModule, bounds: &Bounds) -> Result<Option<ExtensionFailure>> {
    let Some(k) = first_obstruction(m, n, bounds)? else {
        return Ok(None);
    };
    failure_at(m, n, &k, bounds).map(Some)
}

fn failure_at(m: &RightModule, n: &RightModule, k: &Submodule, bounds: &Bounds) -> Result<ExtensionFailure> {
    let limit = bounds.max_hom_candidates;
    let mut restrictions: HashSet<Vec<Elem>> = HashSet::new();
    HomSearch::from_submodule(n, &n.full(), m).for_each(&[], limit, |f| {
        restrictions.insert(k.members().iter().map(|&x| f[x as usize]).collect());
        ControlFlow::Continue(())
    })?;
    let mut missing = None;
    HomSearch::from_submodule(n, k, m).for_each(&[], limit, |f| {
        let key: Vec<Elem> = k.members().iter().map(|&x| f[x as usize]).collect();
        if restrictions.contains(&key) {
            ControlFlow::Continue(())
        } else {
            missing = Some(key);
            ControlFlow::Break(())
        }
    })?;
    let values = missing.ok_or_else(|| {
        Error::Invalid("hom counts and enumeration disagree on a restriction".into())
    })?;
    let map: Vec<(Elem, Elem)> = k.members().iter().copied().zip(values).collect();
    let (found, examined) = extension_exists(m, n, k, &map, bounds)?;
    if found {
        return Err(Error::Invalid("a missing restriction has an extension".into()));
    }
    Ok(ExtensionFailure {
        submodule: k.members().to_vec(),
        map,
        candidates_examined: examined,
    })
}

/// Relative injectivity against one fixed test module, with the domain-side
/// search plans prepared once.
struct TestModule {
    module: RightModule,
    /// `(K, plan for Hom(K, -), plan for maps vanishing on K)` per proper
    /// nonzero `K`.
    pieces: Vec<(Submodule, HomPlan, HomPlan)>,
    full: HomPlan,
}

impl TestModule {
    fn new(module: RightModule, bounds: &Bounds) -> Result<Self> {
        let lat = lattice(&module, bounds.max_lattice)?;
        let zero = module.zero_submodule();
        let all = module.full();
        let pieces = lat
            .into_iter()
            .filter(|k| !k.is_zero() && k.len() < module.size())
            .map(|k| {
                let on_k = HomPlan::new(&module, &zero, &k);
                let rel = HomPlan::new(&module, &k, &all);
                (k, on_k, rel)
            })
            .collect();
        let full = HomPlan::new(&module, &zero, &all);
        Ok(Self { module, pieces, full })
    }

    fn injects_into(&self, m: &RightModule, bounds: &Bounds) -> Result<bool> {
        let n = &self.module;
        let limit = bounds.max_hom_candidates;
        let total = HomSearch::with_plan(n, Cow::Borrowed(&self.full), m).count(&[], limit)?.0;
        for (k, on_k, rel) in &self.pieces {
            let a = HomSearch::with_plan(n, Cow::Borrowed(on_k), m).count(&[], limit)?.0;
            let zero: Vec<(Elem, Elem)> = k.members().iter().map(|&x| (x, 0)).collect();
            let b = HomSearch::with_plan(n, Cow::Borrowed(rel), m).count(&zero, limit)?.0;
            if a * b != total {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// One entry of an injectivity profile.
#[derive(Debug, Clone, Serialize)]
pub struct DomainVerdict {
    pub test_module: String,
    pub size: usize,
    pub semisimple: bool,
    pub relatively_injective: bool,
}

/// Verdicts of `M` against `R_R` and every local module of length two.
#[derive(Debug, Clone, Serialize)]
pub struct InjectivityProfile {
    pub subject: String,
    pub size: usize,
    pub semisimple_ring: bool,
    pub verdicts: Vec<DomainVerdict>,
    pub injective: bool,
    pub poor: bool,
    pub class: ModuleClass,
}

/// Ring-level data shared by all injectivity questions over one ring.
pub struct Oracle {
    ring: Arc<FiniteRing>,
    bounds: Bounds,
    regular: RightModule,
    /// Proper nonzero right ideals with their `Hom(K, -)` plans.
    baer: Vec<(Submodule, HomPlan)>,
    right_ideals: Vec<Submodule>,
    locals: Vec<TestModule>,
    semisimple: bool,
}

impl Oracle {
    pub fn new(ring: Arc<FiniteRing>, bounds: Bounds) -> Result<Self> {
        let regular = RightModule::regular(&ring);
        let right_ideals = lattice(&regular, bounds.max_lattice)?;
        let zero = regular.zero_submodule();
        let baer = right_ideals
            .iter()
            .filter(|k| !k.is_zero() && k.len() < ring.size())
            .map(|k| (k.clone(), HomPlan::new(&regular, &zero, k)))
            .collect();
        let locals = local_length_two_modules(&ring, &bounds)?
            .into_iter()
            .map(|m| TestModule::new(m, &bounds))
            .collect::<Result<Vec<_>>>()?;
        let semisimple = jacobson_radical(&ring).len() == 1;
        Ok(Self {
            ring,
            bounds,
            regular,
            baer,
            right_ideals,
            locals,
            semisimple,
        })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn regular(&self) -> &RightModule {
        &self.regular
    }

    pub fn right_ideals(&self) -> &[Submodule] {
        &self.right_ideals
    }

    /// Local modules of length two, one per isomorphism class.
    pub fn locals(&self) -> impl Iterator<Item = &RightModule> {
        self.locals.iter().map(|t| &t.module)
    }

    pub fn is_semisimple_ring(&self) -> bool {
        self.semisimple
    }

    fn check_ring(&self, m: &RightModule) -> Result<()> {
        if Arc::ptr_eq(m.ring(), &self.ring) || **m.ring() == *self.ring {
            Ok(())
        } else {
            Err(Error::Invalid("module over a different ring".into()))
        }
    }

    /// Baer's test in counting form: `|M| = |Hom(K, M)| * |ann_M(K)|` for
    /// every right ideal `K`.
    pub fn is_injective(&self, m: &RightModule) -> Result<bool> {
        self.check_ring(m)?;
        if self.semisimple {
            return Ok(true);
        }
        let limit = self.bounds.max_hom_candidates;
        for (k, plan) in &self.baer {
            let homs = HomSearch::with_plan(&self.regular, Cow::Borrowed(plan), m).count(&[], limit)?.0;
            let gens = plan.generators();
            let ann = m
                .elements()
                .filter(|&x| gens.iter().all(|&g| m.act(x, g) == 0))
                .count() as u128;
            debug_assert!(k.len() > 1);
            if homs * ann != m.size() as u128 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A right ideal and a map into `M` that does not extend to `R`.
    pub fn baer_failure(&self, m: &RightModule) -> Result<Option<ExtensionFailure>> {
        extension_failure(m, &self.regular, &self.bounds)
    }

    /// `M` is `N`-injective for the `i`-th local module of length two.
    pub fn injective_relative_to_local(&self, m: &RightModule, i: usize) -> Result<bool> {
        self.check_ring(m)?;
        self.locals[i].injects_into(m, &self.bounds)
    }

    /// Not injective relative to any local module of length two. Every
    /// nonsemisimple module has such a subfactor, and injectivity domains
    /// are closed under subfactors, so this is poorness.
    pub fn is_poor(&self, m: &RightModule) -> Result<bool> {
        for i in 0..self.locals.len() {
            if self.injective_relative_to_local(m, i)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Over a semisimple ring every module is injective (and poor); the
    /// class reported there is `Injective`.
    pub fn classify(&self, m: &RightModule) -> Result<ModuleClass> {
        if self.semisimple {
            return Ok(ModuleClass::Injective);
        }
        if self.is_poor(m)? {
            return Ok(ModuleClass::Poor);
        }
        Ok(if self.is_injective(m)? {
            ModuleClass::Injective
        } else {
            ModuleClass::Middle
        })
    }

    pub fn profile(&self, m: &RightModule) -> Result<InjectivityProfile> {
        let injective = self.is_injective(m)?;
        let mut verdicts = vec![DomainVerdict {
            test_module: "R_R".into(),
            size: self.regular.size(),
            semisimple: self.semisimple,
            relatively_injective: injective,
        }];
        for (i, t) in self.locals.iter().enumerate() {
            verdicts.push(DomainVerdict {
                test_module: t.module.name().to_string(),
                size: t.module.size(),
                semisimple: false,
                relatively_injective: self.injective_relative_to_local(m, i)?,
            });
        }
        let poor = verdicts[1..].iter().all(|v| !v.relatively_injective);
        let class = if self.semisimple || injective {
            ModuleClass::Injective
        } else if poor {
            ModuleClass::Poor
        } else {
            ModuleClass::Middle
        };
        Ok(InjectivityProfile {
            subject: m.name().to_string(),
            size: m.size(),
            semisimple_ring: self.semisimple,
            verdicts,
            injective,
            poor,
            class,
        })
    }
}

/// Poorness tested against every listed module directly: `M` is poor iff it
/// is not `N`-injective for each nonsemisimple `N` given.
pub fn poor_against(m: &RightModule, tests: &[RightModule], bounds: &Bounds) -> Result<bool> {
    for n in tests.iter().filter(|n| !radical(n).is_zero()) {
        if relatively_injective(m, n, bounds)? {
            return Ok(false);
        }
    }
    Ok(true)
}
