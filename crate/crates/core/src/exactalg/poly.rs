use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::field::Field;
use crate::exactalg::matrix::Mat;

/// Univariate polynomial, coefficients low degree first, no trailing zeros.
/// The zero polynomial is the empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Serialize> Serialize for Poly<E> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<E: Clone + Eq> Poly<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn monomial<F: Field<Elem = E>>(field: &F, degree: usize) -> Self {
        let mut coeffs = vec![field.zero(); degree];
        coeffs.push(field.one());
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.leading().is_some_and(|c| *c == field.one())
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = field.zero();
        let coeffs = (0..n)
            .map(|i| {
                field.add(
                    self.coeffs.get(i).unwrap_or(&zero),
                    other.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        Self::new(field, coeffs)
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, field: &F) -> Self {
        Self::new(field, self.coeffs.iter().map(|a| field.mul(a, c)).collect())
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        self.add(&other.scale(&field.neg(&field.one()), field), field)
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Self::new(field, out)
    }

    /// Division with remainder by a nonzero divisor.
    pub fn divrem<F: Field<Elem = E>>(&self, divisor: &Self, field: &F) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = field.inv(divisor.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![field.zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let top = rem.len() - 1;
            let c = field.mul(&rem[top], &lead_inv);
            if !field.is_zero(&c) {
                let shift = top - d;
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] = field.sub(&rem[shift + i], &field.mul(&c, dc));
                }
                quot[shift] = c;
            }
            rem.pop();
        }
        (Self::new(field, quot), Self::new(field, rem))
    }

    pub fn rem<F: Field<Elem = E>>(&self, divisor: &Self, field: &F) -> Self {
        self.divrem(divisor, field).1
    }

    pub fn eval<F: Field<Elem = E>>(&self, x: &E, field: &F) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }

    /// Substitutes a square matrix.
    pub fn eval_matrix<F: Field<Elem = E>>(&self, a: &Mat<E>, field: &F) -> Mat<E> {
        let n = a.rows();
        let mut acc = Mat::zero(field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a, field).add(&Mat::identity(field, n).scale(c, field), field);
        }
        acc
    }

    /// Irreducibility by exhaustive search over monic factors of degree at
    /// most half the degree. Requires a finite coefficient field.
    pub fn is_irreducible<F: Field<Elem = E>>(&self, field: &F) -> Result<bool> {
        if !self.is_monic(field) {
            return Err(Error::NotMonic);
        }
        let elements = field
            .elements()
            .ok_or_else(|| Error::Invalid("irreducibility needs a finite field".into()))?;
        let n = self.degree().unwrap();
        if n == 0 {
            return Ok(false);
        }
        for d in 1..=n / 2 {
            for factor in monic_polys(field, &elements, d) {
                if self.rem(&factor, field).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// All monic polynomials of the given degree over a finite field.
pub fn monic_polys<'a, F: Field>(
    field: &'a F,
    elements: &'a [F::Elem],
    degree: usize,
) -> impl Iterator<Item = Poly<F::Elem>> + 'a {
    let q = elements.len();
    let total = q.pow(degree as u32);
    (0..total).map(move |mut code| {
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            coeffs.push(elements[code % q].clone());
            code /= q;
        }
        coeffs.push(field.one());
        Poly { coeffs }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::field_make;

    #[test]
    fn irreducibility_examples() {
        let f2 = field_make(2, 1, 256).unwrap();
        let f3 = field_make(3, 1, 256).unwrap();
        assert!(Poly::new(&f2, vec![1, 1, 1]).is_irreducible(&f2).unwrap());
        assert!(!Poly::new(&f2, vec![1, 0, 1]).is_irreducible(&f2).unwrap());
        assert!(Poly::new(&f3, vec![2, 1, 1]).is_irreducible(&f3).unwrap());
        assert_eq!(
            Poly::new(&f3, vec![2, 1, 2]).is_irreducible(&f3),
            Err(Error::NotMonic)
        );
    }

    #[test]
    fn x2_plus_1_is_square_of_x_plus_1_over_gf2() {
        let f2 = field_make(2, 1, 256).unwrap();
        let x1 = Poly::new(&f2, vec![1, 1]);
        assert_eq!(x1.mul(&x1, &f2), Poly::new(&f2, vec![1, 0, 1]));
    }

    #[test]
    fn divrem_reconstructs() {
        let f5 = field_make(5, 1, 256).unwrap();
        let a = Poly::new(&f5, vec![3, 0, 4, 1, 2]);
        let b = Poly::new(&f5, vec![1, 2, 3]);
        let (q, r) = a.divrem(&b, &f5);
        assert!(r.degree().map_or(true, |d| d < 2));
        assert_eq!(q.mul(&b, &f5).add(&r, &f5), a);
    }
}
