use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ringkit::{Elem, FiniteRing};

/// A finite right module over a [`FiniteRing`], element `0` being zero.
#[derive(Clone)]
pub struct RightModule {
    ring: Arc<FiniteRing>,
    size: usize,
    add: Vec<Elem>,
    neg: Vec<Elem>,
    act: Vec<Elem>,
    name: String,
    labels: Vec<String>,
}

impl fmt::Debug for RightModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RightModule({}, size {})", self.name, self.size)
    }
}

impl Serialize for RightModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[Elem]> = self.act.chunks(self.ring.size()).collect();
        let mut st = s.serialize_struct("RightModule", 4)?;
        st.serialize_field("ring_recipe", self.ring.recipe())?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("size", &self.size)?;
        st.serialize_field("action", &rows)?;
        st.end()
    }
}

/// A submodule, stored as its sorted member list plus a membership bitset.
#[derive(Clone, Debug)]
pub struct Submodule {
    members: Vec<Elem>,
    bits: FixedBitSet,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Submodule {}

impl Hash for Submodule {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Submodule {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ascending size, then lexicographic members.
impl Ord for Submodule {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}

impl Serialize for Submodule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(s)
    }
}

impl Submodule {
    pub(crate) fn from_bits(bits: FixedBitSet) -> Self {
        let members = bits.ones().map(|i| i as Elem).collect();
        Self { members, bits }
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.bits.contains(x as usize)
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }
}

/// `M / K` together with the projection and a representative per coset.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub module: RightModule,
    pub projection: Vec<Elem>,
    pub representatives: Vec<Elem>,
}

/// A submodule as a module in its own right, with its inclusion map.
#[derive(Debug, Clone)]
pub struct Restricted {
    pub module: RightModule,
    pub embedding: Vec<Elem>,
}

impl RightModule {
    /// Builds a module from tables; `act[m * |R| + r] = m r`.
    pub fn from_tables(
        ring: Arc<FiniteRing>,
        size: usize,
        add: Vec<Elem>,
        act: Vec<Elem>,
        name: impl Into<String>,
    ) -> Result<Self> {
        if size == 0 || add.len() != size * size || act.len() != size * ring.size() {
            return Err(Error::Invalid("module tables have the wrong shape".into()));
        }
        if add.iter().chain(act.iter()).any(|&x| x as usize >= size) {
            return Err(Error::Invalid("module table entry out of range".into()));
        }
        let neg = (0..size)
            .map(|a| {
                (0..size)
                    .find(|&b| add[a * size + b] == 0)
                    .map(|b| b as Elem)
                    .ok_or_else(|| Error::Invalid(format!("element {a} has no negative")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            ring,
            size,
            add,
            neg,
            act,
            name: name.into(),
            labels: (0..size).map(|i| i.to_string()).collect(),
        })
    }

    pub(crate) fn tabulate(
        ring: &Arc<FiniteRing>,
        size: usize,
        add: impl Fn(usize, usize) -> usize,
        act: impl Fn(usize, Elem) -> usize,
        name: String,
        labels: Vec<String>,
    ) -> Self {
        let mut at = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                at.push(add(a, b) as Elem);
            }
        }
        let mut ac = Vec::with_capacity(size * ring.size());
        for m in 0..size {
            for r in ring.elements() {
                ac.push(act(m, r) as Elem);
            }
        }
        let mut module = Self::from_tables(ring.clone(), size, at, ac, name)
            .expect("constructor produced malformed tables");
        module.labels = labels;
        module
    }

    /// `R_R`: the ring acting on itself by right multiplication.
    pub fn regular(ring: &Arc<FiniteRing>) -> Self {
        let r = ring.clone();
        let r2 = ring.clone();
        Self::tabulate(
            ring,
            ring.size(),
            move |a, b| r.add(a as Elem, b as Elem) as usize,
            move |a, x| r2.mul(a as Elem, x) as usize,
            "R_R".into(),
            ring.elements().map(|x| ring.label(x).to_string()).collect(),
        )
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn label(&self, m: Elem) -> &str {
        &self.labels[m as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn act(&self, m: Elem, r: Elem) -> Elem {
        self.act[m as usize * self.ring.size() + r as usize]
    }

    pub fn tables(&self) -> (&[Elem], &[Elem]) {
        (&self.add, &self.act)
    }

    /// Checks the module laws; exhaustive when `|M| * |R|^2` is at most
    /// `budget`, otherwise only the additive laws and `m 1 = m`.
    pub fn verify_axioms(&self, budget: u64) -> Result<()> {
        let r = &*self.ring;
        let fail = |law: &str| Err(Error::Invalid(format!("module law fails: {law}")));
        for a in self.elements() {
            if self.act(a, r.one()) != a || self.add(0, a) != a {
                return fail("identity");
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) {
                    return fail("additive commutativity");
                }
            }
        }
        let full = (self.size as u64) * (r.size() as u64).pow(2) <= budget;
        if !full {
            return Ok(());
        }
        for m in self.elements() {
            for x in r.elements() {
                let mx = self.act(m, x);
                for y in r.elements() {
                    if self.act(mx, y) != self.act(m, r.mul(x, y)) {
                        return fail("m(rs) = (mr)s");
                    }
                    if self.act(m, r.add(x, y)) != self.add(mx, self.act(m, y)) {
                        return fail("m(r+s) = mr + ms");
                    }
                }
                for n in self.elements() {
                    if self.act(self.add(m, n), x) != self.add(mx, self.act(n, x)) {
                        return fail("(m+n)r = mr + nr");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn full(&self) -> Submodule {
        let mut bits = FixedBitSet::with_capacity(self.size);
        bits.insert_range(..);
        Submodule::from_bits(bits)
    }

    pub fn zero_submodule(&self) -> Submodule {
        let mut bits = FixedBitSet::with_capacity(self.size);
        bits.insert(0);
        Submodule::from_bits(bits)
    }

    /// `mR`.
    pub fn cyclic(&self, m: Elem) -> Submodule {
        let mut bits = FixedBitSet::with_capacity(self.size);
        for r in self.ring.elements() {
            bits.insert(self.act(m, r) as usize);
        }
        Submodule::from_bits(bits)
    }

    pub fn sum(&self, a: &Submodule, b: &Submodule) -> Submodule {
        if a.is_subset(b) {
            return b.clone();
        }
        if b.is_subset(a) {
            return a.clone();
        }
        let mut bits = FixedBitSet::with_capacity(self.size);
        for &x in a.members() {
            for &y in b.members() {
                bits.insert(self.add(x, y) as usize);
            }
        }
        Submodule::from_bits(bits)
    }

    pub fn intersection(&self, a: &Submodule, b: &Submodule) -> Submodule {
        let mut bits = a.bits().clone();
        bits.intersect_with(b.bits());
        Submodule::from_bits(bits)
    }

    /// Additive subgroup generated by `seeds`.
    pub fn additive_span(&self, seeds: impl IntoIterator<Item = Elem>) -> Submodule {
        let mut bits = FixedBitSet::with_capacity(self.size);
        bits.insert(0);
        let mut members = vec![0];
        let mut queue: Vec<Elem> = seeds.into_iter().collect();
        while let Some(x) = queue.pop() {
            if bits.put(x as usize) {
                continue;
            }
            let snapshot = members.len();
            members.push(x);
            for i in 0..snapshot {
                let s = self.add(x, members[i]);
                if !bits.contains(s as usize) {
                    queue.push(s);
                }
            }
        }
        Submodule::from_bits(bits)
    }

    /// Submodule generated by `seeds`.
    pub fn generated(&self, seeds: impl IntoIterator<Item = Elem>) -> Submodule {
        seeds
            .into_iter()
            .fold(self.zero_submodule(), |acc, g| {
                if acc.contains(g) {
                    acc
                } else {
                    self.sum(&acc, &self.cyclic(g))
                }
            })
    }

    /// True iff the subset is closed under addition and the action.
    pub fn is_submodule(&self, members: &[Elem]) -> bool {
        let mut bits = FixedBitSet::with_capacity(self.size);
        for &m in members {
            bits.insert(m as usize);
        }
        bits.contains(0)
            && members.iter().all(|&a| {
                members.iter().all(|&b| bits.contains(self.add(a, b) as usize))
                    && self.ring.elements().all(|r| bits.contains(self.act(a, r) as usize))
            })
    }

    pub fn submodule_from(&self, members: &[Elem]) -> Result<Submodule> {
        if !self.is_submodule(members) {
            return Err(Error::NotActionClosed);
        }
        let mut bits = FixedBitSet::with_capacity(self.size);
        for &m in members {
            bits.insert(m as usize);
        }
        Ok(Submodule::from_bits(bits))
    }

    pub fn quotient(&self, k: &Submodule) -> Quotient {
        let mut projection = vec![Elem::MAX; self.size];
        let mut reps = Vec::new();
        for x in self.elements() {
            if projection[x as usize] == Elem::MAX {
                for &y in k.members() {
                    projection[self.add(x, y) as usize] = reps.len() as Elem;
                }
                reps.push(x);
            }
        }
        let labels = reps.iter().map(|&x| format!("{}+K", self.label(x))).collect();
        let module = Self::tabulate(
            &self.ring,
            reps.len(),
            |a, b| projection[self.add(reps[a], reps[b]) as usize] as usize,
            |a, r| projection[self.act(reps[a], r) as usize] as usize,
            format!("{}/<{}>", self.name, k.len()),
            labels,
        );
        Quotient {
            module,
            projection,
            representatives: reps,
        }
    }

    pub fn restrict(&self, k: &Submodule) -> Restricted {
        let members = k.members().to_vec();
        let mut pos = vec![Elem::MAX; self.size];
        for (i, &m) in members.iter().enumerate() {
            pos[m as usize] = i as Elem;
        }
        let labels = members.iter().map(|&m| self.label(m).to_string()).collect();
        let module = Self::tabulate(
            &self.ring,
            members.len(),
            |a, b| pos[self.add(members[a], members[b]) as usize] as usize,
            |a, r| pos[self.act(members[a], r) as usize] as usize,
            format!("<{} in {}>", members.len(), self.name),
            labels,
        );
        Restricted {
            module,
            embedding: members,
        }
    }

    /// `L / K` for submodules `K <= L`.
    pub fn subquotient(&self, l: &Submodule, k: &Submodule) -> RightModule {
        let sub = self.restrict(l);
        let pos: Vec<Elem> = k
            .members()
            .iter()
            .map(|&x| sub.embedding.binary_search(&x).expect("K <= L") as Elem)
            .collect();
        let inner = sub.module.submodule_from(&pos).expect("image of a submodule");
        let q = sub.module.quotient(&inner).module;
        let name = format!("{}:<{}>/<{}>", self.name, l.len(), k.len());
        q.with_name(name)
    }

    pub fn direct_sum(&self, other: &RightModule) -> Result<RightModule> {
        if !Arc::ptr_eq(&self.ring, &other.ring) && *self.ring != *other.ring {
            return Err(Error::Invalid("direct sum over different rings".into()));
        }
        let (n, m) = (self.size, other.size);
        if n * m > Elem::MAX as usize {
            return Err(Error::BoundExceeded {
                what: "module size",
                limit: Elem::MAX as u64,
                needed: (n * m) as u64,
            });
        }
        let split = |x: usize| ((x / m) as Elem, (x % m) as Elem);
        let join = |a: Elem, b: Elem| a as usize * m + b as usize;
        let labels = (0..n * m)
            .map(|x| {
                let (a, b) = split(x);
                format!("({},{})", self.label(a), other.label(b))
            })
            .collect();
        Ok(Self::tabulate(
            &self.ring,
            n * m,
            |x, y| {
                let ((a, b), (c, d)) = (split(x), split(y));
                join(self.add(a, c), other.add(b, d))
            },
            |x, r| {
                let (a, b) = split(x);
                join(self.act(a, r), other.act(b, r))
            },
            format!("{}+{}", self.name, other.name),
            labels,
        ))
    }

    /// Right annihilator of an element.
    pub fn annihilator_of(&self, m: Elem) -> Vec<Elem> {
        self.ring.elements().filter(|&r| self.act(m, r) == 0).collect()
    }

    /// `ann_R(M)`, a two-sided ideal.
    pub fn annihilator(&self) -> Vec<Elem> {
        self.ring
            .elements()
            .filter(|&r| self.elements().all(|m| self.act(m, r) == 0))
            .collect()
    }
}
