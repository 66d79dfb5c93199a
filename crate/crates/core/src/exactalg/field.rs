use std::fmt::Debug;
use std::hash::Hash;

use num::{BigInt, BigRational, One, Zero};

use crate::error::{check_bound, Error, Result};
use crate::exactalg::poly::Poly;

/// Exact field arithmetic over an element type.
///
/// Elements are plain values; every operation goes through the field so that
/// table-backed finite fields and arbitrary-precision rationals share the
/// same linear algebra.
pub trait Field {
    type Elem: Clone + Eq + Hash + Ord + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_int(&self, n: i64) -> Self::Elem;
    /// All elements in canonical order, or `None` for infinite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    /// Serialized descriptor: `gf(p,k)` or `q`.
    fn descriptor(&self) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
}

/// GF(p^k) with elements encoded as `0..p^k`; the base-p digits of an
/// element are its coefficients in the polynomial basis, low degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds GF(p^k). For `k > 1` the defining polynomial is the irreducible
/// monic of degree `k` whose coefficient encoding `sum c_i p^i` is least.
pub fn field_make(p: u64, k: u32, max_size: u64) -> Result<GaloisField> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::Invalid("field degree must be at least 1".into()));
    }
    let q = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
    check_bound("field size", q.min(u64::MAX as u128) as u64, max_size)?;
    if q > u16::MAX as u128 {
        return Err(Error::BoundExceeded {
            what: "field size",
            limit: u16::MAX as u64,
            needed: q as u64,
        });
    }
    let prime = GaloisField::prime(p as u32);
    if k == 1 {
        return Ok(prime);
    }
    let modulus = least_irreducible(&prime, k as usize);
    Ok(GaloisField::extension(&prime, modulus))
}

fn least_irreducible(prime: &GaloisField, degree: usize) -> Poly<u32> {
    let p = prime.p;
    let count = (p as u64).pow(degree as u32);
    for code in 0..count {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut c = code;
        for _ in 0..degree {
            coeffs.push((c % p as u64) as u32);
            c /= p as u64;
        }
        coeffs.push(1);
        let poly = Poly::new(prime, coeffs);
        if poly.is_irreducible(prime).expect("monic by construction") {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl GaloisField {
    fn prime(p: u32) -> Self {
        let q = p as usize;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = ((a + b) % q) as u16;
                mul[a * q + b] = ((a * b) % q) as u16;
            }
        }
        Self::from_tables(p, 1, vec![0, 1], add, mul)
    }

    fn extension(prime: &GaloisField, modulus: Poly<u32>) -> Self {
        let p = prime.p as usize;
        let k = modulus.degree().expect("nonzero modulus");
        let q = p.pow(k as u32);
        let digits = |mut e: usize| -> Vec<u32> {
            let mut v = Vec::with_capacity(k);
            for _ in 0..k {
                v.push((e % p) as u32);
                e /= p;
            }
            v
        };
        let encode = |poly: &Poly<u32>| -> usize {
            poly.coeffs()
                .iter()
                .rev()
                .fold(0usize, |acc, &c| acc * p + c as usize)
        };
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let da = digits(a);
            let pa = Poly::new(prime, da.clone());
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da
                    .iter()
                    .zip(&db)
                    .map(|(x, y)| (x + y) % p as u32)
                    .collect();
                add[a * q + b] = encode(&Poly::new(prime, sum)) as u16;
                let pb = Poly::new(prime, db);
                let prod = pa.mul(&pb, prime).rem(&modulus, prime);
                mul[a * q + b] = encode(&prod) as u16;
            }
        }
        Self::from_tables(prime.p, k as u32, modulus.coeffs().to_vec(), add, mul)
    }

    fn from_tables(p: u32, k: u32, modulus: Vec<u32>, add: Vec<u16>, mul: Vec<u16>) -> Self {
        let q = p.pow(k);
        let n = q as usize;
        let mut neg = vec![0u16; n];
        let mut inv = vec![0u16; n];
        for a in 0..n {
            neg[a] = (0..n).find(|&b| add[a * n + b] == 0).unwrap() as u16;
            if a != 0 {
                inv[a] = (1..n).find(|&b| mul[a * n + b] == 1).unwrap() as u16;
            }
        }
        Self {
            p,
            k,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Defining polynomial, coefficients low degree first (`[0, 1]` for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.q
    }

    /// Elements of the prime subfield, which are exactly the codes `0..p`.
    pub fn prime_subfield(&self) -> Vec<u32> {
        (0..self.p).collect()
    }

    /// Exhaustive check of the field axioms on all pairs and triples.
    pub fn verify_axioms(&self) -> bool {
        let q = self.q;
        for a in 0..q {
            if self.add(&a, &0) != a || self.mul(&a, &1) != a {
                return false;
            }
            if self.add(&a, &self.neg(&a)) != 0 {
                return false;
            }
            if a != 0 && self.mul(&a, &self.inv(&a).unwrap()) != 1 {
                return false;
            }
            for b in 0..q {
                if self.add(&a, &b) != self.add(&b, &a) || self.mul(&a, &b) != self.mul(&b, &a) {
                    return false;
                }
                for c in 0..q {
                    if !self.triple_ok(a, b, c) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub(crate) fn triple_ok(&self, a: u32, b: u32, c: u32) -> bool {
        self.add(&self.add(&a, &b), &c) == self.add(&a, &self.add(&b, &c))
            && self.mul(&self.mul(&a, &b), &c) == self.mul(&a, &self.mul(&b, &c))
            && self.mul(&a, &self.add(&b, &c))
                == self.add(&self.mul(&a, &b), &self.mul(&a, &c))
    }
}

impl Field for GaloisField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.add[(*a * self.q + *b) as usize] as u32
    }

    fn neg(&self, a: &u32) -> u32 {
        self.neg[*a as usize] as u32
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mul[(*a * self.q + *b) as usize] as u32
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        (*a != 0).then(|| self.inv[*a as usize] as u32)
    }

    fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.q).collect())
    }

    fn descriptor(&self) -> String {
        format!("gf({},{})", self.p, self.k)
    }
}

/// The rational numbers with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }

    fn descriptor(&self) -> String {
        "q".to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f2 = field_make(2, 1, 256).unwrap();
        assert_eq!(f2.add(&1, &1), 0);
        let f3 = field_make(3, 1, 256).unwrap();
        assert_eq!(f3.mul(&2, &2), 1);
    }

    #[test]
    fn gf4_uses_x2_x_1() {
        let f4 = field_make(2, 2, 256).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // x has multiplicative order 3
        let x = 2;
        let x2 = f4.mul(&x, &x);
        let x3 = f4.mul(&x2, &x);
        assert_ne!(x2, 1);
        assert_eq!(x3, 1);
    }

    #[test]
    fn gf8_modulus_is_least_encoding() {
        let f8 = field_make(2, 3, 256).unwrap();
        assert_eq!(f8.modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(field_make(4, 1, 256), Err(Error::NotPrime(4)));
        assert!(matches!(
            field_make(3, 6, 256),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn small_fields_satisfy_axioms() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (2, 4), (3, 3)] {
            let f = field_make(p, k, 256).unwrap();
            if f.order() <= 64 {
                assert!(f.verify_axioms(), "gf({p},{k})");
            }
        }
    }

    #[test]
    fn large_fields_pass_sampled_axioms() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (p, k) in [(2, 8), (3, 5), (251, 1)] {
            let f = field_make(p, k, 256).unwrap();
            for _ in 0..10_000 {
                let (a, b, c) = (
                    rng.gen_range(0..f.order()),
                    rng.gen_range(0..f.order()),
                    rng.gen_range(0..f.order()),
                );
                assert!(f.triple_ok(a, b, c));
            }
            for a in 1..f.order() {
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }
    }
}
