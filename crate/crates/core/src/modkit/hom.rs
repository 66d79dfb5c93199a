use std::borrow::Cow;
use std::collections::HashSet;
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modkit::{RightModule, Submodule};
use crate::ringkit::{Elem, FiniteRing};

const UNSET: Elem = Elem::MAX;

/// A module homomorphism recorded as its graph, indexed by domain element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ModuleMap {
    pub values: Vec<Elem>,
}

impl ModuleMap {
    pub fn apply(&self, x: Elem) -> Elem {
        self.values[x as usize]
    }

    /// Additive and action-equivariant on the whole domain.
    pub fn is_homomorphism(&self, dom: &RightModule, cod: &RightModule) -> bool {
        self.values.len() == dom.size()
            && self.values.iter().all(|&v| (v as usize) < cod.size())
            && dom.elements().all(|a| {
                dom.elements()
                    .all(|b| self.apply(dom.add(a, b)) == cod.add(self.apply(a), self.apply(b)))
                    && dom
                        .ring()
                        .elements()
                        .all(|r| self.apply(dom.act(a, r)) == cod.act(self.apply(a), r))
            })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.values.iter().all(|v| seen.insert(*v))
    }
}

/// Greedy generating set of `k`: repeatedly take the element whose cyclic
/// submodule enlarges the current span the most, ties to the smallest index.
pub fn greedy_generators(m: &RightModule, base: &Submodule, k: &Submodule) -> Vec<Elem> {
    let mut current = base.clone();
    let mut gens = Vec::new();
    while current.len() < k.len() {
        let mut best: Option<(usize, Elem)> = None;
        for &x in k.members() {
            if current.contains(x) {
                continue;
            }
            let c = m.cyclic(x);
            let overlap = c.members().iter().filter(|&&y| current.contains(y)).count();
            let gain = c.len() / overlap;
            if best.map_or(true, |(g, _)| gain > g) {
                best = Some((gain, x));
            }
        }
        let (_, g) = best.expect("k contains the base");
        current = m.sum(&current, &m.cyclic(g));
        gens.push(g);
    }
    gens
}

/// Greedy generators of a right ideal given as a sorted member list.
fn right_ideal_generators(r: &FiniteRing, ideal: &[Elem]) -> Vec<Elem> {
    let mut cur = FixedBitSet::with_capacity(r.size());
    cur.insert(0);
    let mut gens = Vec::new();
    for &x in ideal {
        if cur.contains(x as usize) {
            continue;
        }
        gens.push(x);
        let members: Vec<Elem> = cur.ones().map(|i| i as Elem).collect();
        let cyc: HashSet<Elem> = r.elements().map(|s| r.mul(x, s)).collect();
        for &a in &members {
            for &c in &cyc {
                cur.insert(r.add(a, c) as usize);
            }
        }
    }
    gens
}

#[derive(Debug, Clone)]
struct Level {
    g: Elem,
    /// Distinct values `g r` with one witness `r` each.
    cyclic: Vec<(Elem, Elem)>,
    /// Generators of the right ideal `{r : g r in K_prev}`.
    conditions: Vec<Elem>,
    prev: Vec<Elem>,
    fresh: Vec<Elem>,
}

/// The domain side of a hom search: a chain `base = K_0 < K_1 < ... = top`
/// with `K_j = K_(j-1) + g_j R`. Independent of the codomain, so it can be
/// built once and reused.
///
/// An image `m` for `g_j` is admissible iff `m r = f(g_j r)` whenever
/// `g_j r` lies in `K_(j-1)`, and it suffices to test this on generators
/// of that right ideal; the admissible images form a coset of
/// `{m : m r = 0 for those generators}`.
#[derive(Debug, Clone)]
pub struct HomPlan {
    dom_size: usize,
    levels: Vec<Level>,
}

impl HomPlan {
    pub fn new(dom: &RightModule, base: &Submodule, top: &Submodule) -> Self {
        let r = dom.ring();
        let gens = greedy_generators(dom, base, top);
        let mut current = base.clone();
        let mut levels = Vec::with_capacity(gens.len());
        for g in gens {
            let mut seen = FixedBitSet::with_capacity(dom.size());
            let mut cyclic = Vec::new();
            let mut inside = Vec::new();
            for x in r.elements() {
                let v = dom.act(g, x);
                if !seen.put(v as usize) {
                    cyclic.push((v, x));
                }
                if current.contains(v) {
                    inside.push(x);
                }
            }
            let next = dom.sum(&current, &dom.cyclic(g));
            let fresh = next.members().iter().copied().filter(|&x| !current.contains(x)).collect();
            levels.push(Level {
                g,
                cyclic,
                conditions: right_ideal_generators(r, &inside),
                prev: current.members().to_vec(),
                fresh,
            });
            current = next;
        }
        Self {
            dom_size: dom.size(),
            levels,
        }
    }

    pub fn generators(&self) -> Vec<Elem> {
        self.levels.iter().map(|l| l.g).collect()
    }
}

/// Search over homomorphisms `top -> cod` that agree with a fixed map on
/// `base`, where `base <= top <= dom`.
pub struct HomSearch<'a> {
    dom: &'a RightModule,
    cod: &'a RightModule,
    plan: Cow<'a, HomPlan>,
    kernels: Vec<Vec<Elem>>,
    injective: bool,
}

/// Number of image candidates tried by a bounded search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub candidates: u64,
}

impl<'a> HomSearch<'a> {
    pub fn new(dom: &'a RightModule, base: &Submodule, top: &Submodule, cod: &'a RightModule) -> Self {
        Self::with_plan(dom, Cow::Owned(HomPlan::new(dom, base, top)), cod)
    }

    /// All homomorphisms from `k` into `cod`.
    pub fn from_submodule(dom: &'a RightModule, k: &Submodule, cod: &'a RightModule) -> Self {
        Self::new(dom, &dom.zero_submodule(), k, cod)
    }

    pub fn with_plan(dom: &'a RightModule, plan: Cow<'a, HomPlan>, cod: &'a RightModule) -> Self {
        assert_eq!(plan.dom_size, dom.size(), "plan built for another domain");
        let kernels = plan
            .levels
            .iter()
            .map(|l| {
                cod.elements()
                    .filter(|&m| l.conditions.iter().all(|&c| cod.act(m, c) == 0))
                    .collect()
            })
            .collect();
        Self {
            dom,
            cod,
            plan,
            kernels,
            injective: false,
        }
    }

    /// Only visit injective maps. Has no effect on [`Self::count`].
    pub fn injective_only(mut self) -> Self {
        self.injective = true;
        self
    }

    pub fn generators(&self) -> Vec<Elem> {
        self.plan.generators()
    }

    fn particular(&self, level: &Level, f: &[Elem]) -> Option<Elem> {
        self.cod.elements().find(|&m| {
            level
                .conditions
                .iter()
                .all(|&c| self.cod.act(m, c) == f[self.dom.act(level.g, c) as usize])
        })
    }

    fn admissible_for_injective(&self, g: Elem, m: Elem) -> bool {
        self.dom
            .ring()
            .elements()
            .all(|r| (self.dom.act(g, r) == 0) == (self.cod.act(m, r) == 0))
    }

    fn extend(&self, level: &Level, m: Elem, f: &mut [Elem]) -> bool {
        for &x in &level.prev {
            let fx = f[x as usize];
            for &(v, r) in &level.cyclic {
                let y = self.dom.add(x, v);
                if f[y as usize] == UNSET {
                    f[y as usize] = self.cod.add(fx, self.cod.act(m, r));
                }
            }
        }
        !self.injective || level.fresh.iter().all(|&y| f[y as usize] != 0)
    }

    fn clear(level: &Level, f: &mut [Elem]) {
        for &y in &level.fresh {
            f[y as usize] = UNSET;
        }
    }

    fn bump(stats: &mut SearchStats, limit: u64) -> Result<()> {
        stats.candidates += 1;
        if stats.candidates > limit {
            return Err(Error::BoundExceeded {
                what: "hom search candidates",
                limit,
                needed: stats.candidates,
            });
        }
        Ok(())
    }

    /// Depth-first over levels `j..stop`, calling `visit` at depth `stop`.
    fn dfs(
        &self,
        j: usize,
        stop: usize,
        f: &mut Vec<Elem>,
        stats: &mut SearchStats,
        limit: u64,
        visit: &mut dyn FnMut(&[Elem]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        if j == stop {
            return Ok(visit(f));
        }
        let level = &self.plan.levels[j];
        let Some(m0) = self.particular(level, f) else {
            return Ok(ControlFlow::Continue(()));
        };
        for &a in &self.kernels[j] {
            let m = self.cod.add(m0, a);
            Self::bump(stats, limit)?;
            if self.injective && !self.admissible_for_injective(level.g, m) {
                continue;
            }
            let flow = if self.extend(level, m, f) {
                self.dfs(j + 1, stop, f, stats, limit, visit)?
            } else {
                ControlFlow::Continue(())
            };
            Self::clear(level, f);
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    fn initial_table(&self, initial: &[(Elem, Elem)]) -> Vec<Elem> {
        let mut f = vec![UNSET; self.dom.size()];
        for &(x, y) in initial {
            f[x as usize] = y;
        }
        f[0] = 0;
        f
    }

    /// Visits every map, given as a table over the domain carrier with
    /// `Elem::MAX` outside `top`. `initial` must list the map on all of
    /// `base`. The visitor may stop the search early.
    pub fn for_each(
        &self,
        initial: &[(Elem, Elem)],
        limit: u64,
        mut visit: impl FnMut(&[Elem]) -> ControlFlow<()>,
    ) -> Result<SearchStats> {
        let mut f = self.initial_table(initial);
        let mut stats = SearchStats { candidates: 0 };
        let _ = self.dfs(0, self.plan.levels.len(), &mut f, &mut stats, limit, &mut visit)?;
        Ok(stats)
    }

    /// Number of maps; the last level is counted as a coset, not visited.
    pub fn count(&self, initial: &[(Elem, Elem)], limit: u64) -> Result<(u128, SearchStats)> {
        let mut f = self.initial_table(initial);
        let mut stats = SearchStats { candidates: 0 };
        let Some(last) = self.plan.levels.last() else {
            return Ok((1, stats));
        };
        let width = self.kernels.last().map_or(0, Vec::len) as u128;
        let mut total: u128 = 0;
        let mut visit = |g: &[Elem]| {
            if self.particular(last, g).is_some() {
                total += width;
            }
            ControlFlow::Continue(())
        };
        let stop = self.plan.levels.len() - 1;
        let _ = self.dfs(0, stop, &mut f, &mut stats, limit, &mut visit)?;
        Ok((total, stats))
    }
}

/// Every homomorphism `dom -> cod`.
pub fn hom_enumerate(dom: &RightModule, cod: &RightModule, limit: u64) -> Result<Vec<ModuleMap>> {
    let search = HomSearch::from_submodule(dom, &dom.full(), cod);
    let mut out = Vec::new();
    search.for_each(&[], limit, |f| {
        out.push(ModuleMap { values: f.to_vec() });
        ControlFlow::Continue(())
    })?;
    out.sort();
    Ok(out)
}

/// `|Hom(k, cod)|` for a submodule `k` of `dom`.
pub fn hom_count(dom: &RightModule, k: &Submodule, cod: &RightModule, limit: u64) -> Result<u128> {
    Ok(HomSearch::from_submodule(dom, k, cod).count(&[], limit)?.0)
}

/// An isomorphism `a -> b`, if one exists.
pub fn find_isomorphism(a: &RightModule, b: &RightModule, limit: u64) -> Result<Option<ModuleMap>> {
    if a.size() != b.size() {
        return Ok(None);
    }
    let search = HomSearch::from_submodule(a, &a.full(), b).injective_only();
    let mut found = None;
    search.for_each(&[], limit, |f| {
        found = Some(ModuleMap { values: f.to_vec() });
        ControlFlow::Break(())
    })?;
    Ok(found)
}
