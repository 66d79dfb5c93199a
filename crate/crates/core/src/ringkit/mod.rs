//! Finite unital rings stored as explicit operation tables.

mod build;
mod structure;

use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::dsl::RingSpec;

pub use build::{build_ring, build_tri, tri_from_matrices, TriRing};
pub use structure::{
    central_idempotents, decompose_ring, ideal_generated, ideals_within_radical, idempotents,
    is_commutative, is_local_ring, jacobson_radical, primitive_idempotents, quotient_ring,
    span, two_sided_ideals, verify_radical, Decomposition, Factor, RadicalIdeals,
};

/// Element index inside a ring or module carrier.
pub type Elem = u16;

/// An enumerated finite ring with identity. Element `0` is always the zero.
#[derive(Clone)]
pub struct FiniteRing {
    size: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    one: Elem,
    recipe: String,
    spec: Option<RingSpec>,
    labels: Vec<String>,
    units: OnceLock<Vec<bool>>,
    radical: OnceLock<Vec<Elem>>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("size", &self.size)
            .field("recipe", &self.recipe)
            .finish()
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }
}

impl Eq for FiniteRing {}

impl Serialize for FiniteRing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = |t: &[Elem]| -> Vec<Vec<Elem>> {
            t.chunks(self.size.max(1)).map(|c| c.to_vec()).collect()
        };
        let mut st = s.serialize_struct("FiniteRing", 6)?;
        st.serialize_field("size", &self.size)?;
        st.serialize_field("add", &rows(&self.add))?;
        st.serialize_field("mul", &rows(&self.mul))?;
        st.serialize_field("zero", &0)?;
        st.serialize_field("one", &self.one)?;
        st.serialize_field("recipe", &self.recipe)?;
        st.end()
    }
}

/// A triple violating a ring law, as returned by [`FiniteRing::verify_axioms`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub law: &'static str,
    pub triple: [Elem; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Full,
    Sampled { triples: usize, seed: u64 },
}

impl FiniteRing {
    /// Builds a ring from raw tables. Rejects tables that are not square,
    /// mention out-of-range elements, or lack an additive inverse for some
    /// element; the ring laws themselves are checked by [`Self::verify_axioms`].
    pub fn from_tables(
        size: usize,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        one: Elem,
        recipe: impl Into<String>,
    ) -> crate::Result<Self> {
        use crate::Error;
        if size == 0 || size > Elem::MAX as usize {
            return Err(Error::Invalid(format!("ring size {size} out of range")));
        }
        if add.len() != size * size || mul.len() != size * size {
            return Err(Error::Invalid("table is not size x size".into()));
        }
        if add.iter().chain(mul.iter()).any(|&x| x as usize >= size) || one as usize >= size {
            return Err(Error::Invalid("table entry out of range".into()));
        }
        let mut neg = vec![0; size];
        for (a, slot) in neg.iter_mut().enumerate() {
            *slot = (0..size)
                .find(|&b| add[a * size + b] == 0)
                .ok_or_else(|| Error::Invalid(format!("element {a} has no negative")))?
                as Elem;
        }
        Ok(Self {
            size,
            add,
            mul,
            neg,
            one,
            recipe: recipe.into(),
            spec: None,
            labels: (0..size).map(|i| i.to_string()).collect(),
            units: OnceLock::new(),
            radical: OnceLock::new(),
        })
    }

    pub(crate) fn tabulate(
        size: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
        one: usize,
        labels: Vec<String>,
        recipe: String,
    ) -> Self {
        let mut at = Vec::with_capacity(size * size);
        let mut mt = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                at.push(add(a, b) as Elem);
                mt.push(mul(a, b) as Elem);
            }
        }
        let mut ring = Self::from_tables(size, at, mt, one as Elem, recipe)
            .expect("constructor produced malformed tables");
        ring.labels = labels;
        ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `k * a` by repeated addition.
    pub fn times(&self, k: usize, a: Elem) -> Elem {
        (0..k).fold(0, |acc, _| self.add(acc, a))
    }

    pub fn recipe(&self) -> &str {
        &self.recipe
    }

    pub fn spec(&self) -> Option<&RingSpec> {
        self.spec.as_ref()
    }

    pub(crate) fn with_provenance(mut self, recipe: String, spec: Option<RingSpec>) -> Self {
        self.recipe = recipe;
        self.spec = spec;
        self
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a as usize]
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.size);
        self.labels = labels;
    }

    /// Element index with the given label.
    pub fn find(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label).map(|i| i as Elem)
    }

    pub fn is_zero_ring(&self) -> bool {
        self.size == 1
    }

    pub fn units(&self) -> &[bool] {
        self.units.get_or_init(|| {
            self.elements()
                .map(|a| self.elements().any(|b| self.mul(a, b) == self.one))
                .collect()
        })
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.units()[a as usize]
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.elements().find(|&b| self.mul(a, b) == self.one && self.mul(b, a) == self.one)
    }

    pub(crate) fn radical_cache(&self) -> &OnceLock<Vec<Elem>> {
        &self.radical
    }

    pub fn opposite(&self) -> FiniteRing {
        let n = self.size;
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = self.mul[b * n + a];
            }
        }
        let mut r = Self::from_tables(n, self.add.clone(), mul, self.one, format!("op({})", self.recipe))
            .expect("opposite of a valid table");
        r.labels = self.labels.clone();
        r
    }

    fn check_triple(&self, a: Elem, b: Elem, c: Elem) -> Option<&'static str> {
        let (add, mul) = (|x, y| self.add(x, y), |x, y| self.mul(x, y));
        if add(add(a, b), c) != add(a, add(b, c)) {
            return Some("additive associativity");
        }
        if add(a, b) != add(b, a) {
            return Some("additive commutativity");
        }
        if mul(mul(a, b), c) != mul(a, mul(b, c)) {
            return Some("multiplicative associativity");
        }
        if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)) {
            return Some("left distributivity");
        }
        if mul(add(a, b), c) != add(mul(a, c), mul(b, c)) {
            return Some("right distributivity");
        }
        None
    }

    /// Checks the ring laws on every triple (`Full`) or on seeded random
    /// triples. Identity and zero laws are always checked exhaustively.
    pub fn verify_axioms(&self, mode: VerifyMode) -> Result<(), AxiomViolation> {
        for a in self.elements() {
            if self.add(0, a) != a {
                return Err(AxiomViolation { law: "additive identity", triple: [a, 0, 0] });
            }
            if self.mul(self.one, a) != a || self.mul(a, self.one) != a {
                return Err(AxiomViolation { law: "multiplicative identity", triple: [a, self.one, 0] });
            }
        }
        match mode {
            VerifyMode::Full => {
                for a in self.elements() {
                    for b in self.elements() {
                        for c in self.elements() {
                            if let Some(law) = self.check_triple(a, b, c) {
                                return Err(AxiomViolation { law, triple: [a, b, c] });
                            }
                        }
                    }
                }
            }
            VerifyMode::Sampled { triples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let n = self.size as Elem;
                for _ in 0..triples {
                    let t = [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)];
                    if let Some(law) = self.check_triple(t[0], t[1], t[2]) {
                        return Err(AxiomViolation { law, triple: t });
                    }
                }
            }
        }
        Ok(())
    }

    /// Full verification up to 64 elements, 10^5 sampled triples above.
    pub fn verify_axioms_auto(&self) -> Result<(), AxiomViolation> {
        if self.size <= 64 {
            self.verify_axioms(VerifyMode::Full)
        } else {
            self.verify_axioms(VerifyMode::Sampled { triples: 100_000, seed: 0x5eed })
        }
    }

    #[cfg(test)]
    pub(crate) fn corrupt_product(&mut self, a: Elem, b: Elem, value: Elem) {
        self.mul[a as usize * self.size + b as usize] = value;
    }
}
