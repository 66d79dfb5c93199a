use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{check_bound, Error, Result};
use crate::exactalg::field::Field;
use crate::exactalg::poly::Poly;

/// Dense row-major matrix over a field element type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone + Eq> Mat<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Ragged {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn zero<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn scalar<F: Field<Elem = E>>(field: &F, n: usize, c: &E) -> Self {
        Self::identity(field, n).scale(c, field)
    }

    /// The matrix unit with a one at `(i, j)` (zero-based).
    pub fn unit<F: Field<Elem = E>>(field: &F, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        m.data[i * n + j] = field.one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| field.neg(a)).collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, field: &F) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| field.mul(c, a)).collect(),
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zero(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field.add(out.get(i, j), &field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|a| field.is_zero(a))
    }

    pub fn is_scalar<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j) == self.get(0, 0)
                    } else {
                        field.is_zero(self.get(i, j))
                    }
                })
            })
    }

    pub fn is_lower_triangular<F: Field<Elem = E>>(&self, field: &F) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| field.is_zero(self.get(i, j))))
    }

    pub fn is_upper_triangular<F: Field<Elem = E>>(&self, field: &F) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| field.is_zero(self.get(i, j))))
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse<F: Field<Elem = E>>(&self, field: &F) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(field, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !field.is_zero(a.get(r, col)))?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let s = field.inv(a.get(col, col)).unwrap();
            a.scale_row(col, &s, field);
            inv.scale_row(col, &s, field);
            for r in 0..n {
                if r != col && !field.is_zero(a.get(r, col)) {
                    let c = a.get(r, col).clone();
                    a.axpy_row(r, col, &c, field);
                    inv.axpy_row(r, col, &c, field);
                }
            }
        }
        Some(inv)
    }

    pub fn is_invertible<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.is_square() && rank(field, &self.to_rows()) == self.rows
    }

    pub fn conjugate_by<F: Field<Elem = E>>(&self, u: &Self, u_inv: &Self, field: &F) -> Self {
        u.mul(self, field).mul(u_inv, field)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row<F: Field<Elem = E>>(&mut self, r: usize, c: &E, field: &F) {
        for j in 0..self.cols {
            let v = field.mul(c, self.get(r, j));
            self.set(r, j, v);
        }
    }

    /// row[r] -= c * row[src]
    fn axpy_row<F: Field<Elem = E>>(&mut self, r: usize, src: usize, c: &E, field: &F) {
        for j in 0..self.cols {
            let v = field.sub(self.get(r, j), &field.mul(c, self.get(src, j)));
            self.set(r, j, v);
        }
    }
}

/// Rank of a list of equal-length rows (left span dimension).
fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut basis: Vec<(usize, Vec<F::Elem>)> = Vec::new();
    for row in rows {
        let _ = reduce_into(field, &mut basis, row.clone());
    }
    basis.len()
}

/// Reduces `v` against an echelon basis (pivot-normalized rows). Returns
/// `Some(())` if `v` was already in the span; otherwise inserts it.
fn reduce_into<F: Field>(
    field: &F,
    basis: &mut Vec<(usize, Vec<F::Elem>)>,
    mut v: Vec<F::Elem>,
) -> Option<()> {
    for (pivot, b) in basis.iter() {
        if !field.is_zero(&v[*pivot]) {
            let c = v[*pivot].clone();
            for (x, y) in v.iter_mut().zip(b) {
                *x = field.sub(x, &field.mul(&c, y));
            }
        }
    }
    let pivot = v.iter().position(|x| !field.is_zero(x))?;
    let s = field.inv(&v[pivot]).unwrap();
    for x in v.iter_mut() {
        *x = field.mul(&s, x);
    }
    // keep the basis fully reduced on its pivot columns
    for (_, b) in basis.iter_mut() {
        if !field.is_zero(&b[pivot]) {
            let c = b[pivot].clone();
            for (x, y) in b.iter_mut().zip(&v) {
                *x = field.sub(x, &field.mul(&c, y));
            }
        }
    }
    basis.push((pivot, v));
    None
}

/// Dimension of the left span of `rows` inside `F^n`.
pub fn row_span_dim<F: Field>(field: &F, rows: &[Vec<F::Elem>], n: usize) -> Result<usize> {
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::Ragged {
            expected: n,
            found: bad.len(),
        });
    }
    Ok(rank(field, rows))
}

/// A nonzero `d` in `F^m` with `sum_k d_k c_k = 0` for every listed `c`,
/// if the vectors do not span `F^m`.
pub fn annihilating_vector<F: Field>(field: &F, vectors: &[Vec<F::Elem>], m: usize) -> Result<Option<Vec<F::Elem>>> {
    if let Some(bad) = vectors.iter().find(|r| r.len() != m) {
        return Err(Error::Ragged {
            expected: m,
            found: bad.len(),
        });
    }
    let mut basis: Vec<(usize, Vec<F::Elem>)> = Vec::new();
    for v in vectors {
        let _ = reduce_into(field, &mut basis, v.clone());
    }
    let Some(free) = (0..m).find(|c| basis.iter().all(|(p, _)| p != c)) else {
        return Ok(None);
    };
    let mut d = vec![field.zero(); m];
    d[free] = field.one();
    for (p, b) in &basis {
        d[*p] = field.neg(&b[free]);
    }
    Ok(Some(d))
}

/// Minimal polynomial by Krylov dependency search on `I, A, A^2, ...`.
pub fn min_poly<F: Field>(field: &F, a: &Mat<F::Elem>) -> Result<Poly<F::Elem>> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    // basis of flattened powers, each paired with the polynomial expressing it
    let mut basis: Vec<(usize, Vec<F::Elem>, Poly<F::Elem>)> = Vec::new();
    let mut power = Mat::identity(field, n);
    for d in 0..=n * n {
        let mut v = power.entries().to_vec();
        let mut expr = Poly::monomial(field, d);
        for (pivot, b, be) in &basis {
            if !field.is_zero(&v[*pivot]) {
                let c = v[*pivot].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    *x = field.sub(x, &field.mul(&c, y));
                }
                expr = expr.sub(&be.scale(&c, field), field);
            }
        }
        match v.iter().position(|x| !field.is_zero(x)) {
            None => return Ok(expr),
            Some(pivot) => {
                let s = field.inv(&v[pivot]).unwrap();
                for x in v.iter_mut() {
                    *x = field.mul(&s, x);
                }
                basis.push((pivot, v, expr.scale(&s, field)));
            }
        }
        power = power.mul(a, field);
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}

/// Characteristic polynomial `det(xI - A)` by the division-free
/// Samuelson-Berkowitz recurrence.
pub fn char_poly<F: Field>(field: &F, a: &Mat<F::Elem>) -> Result<Poly<F::Elem>> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    // coefficient vector, highest degree first, of the trailing principal submatrix
    let mut p: Vec<F::Elem> = vec![field.one()];
    for k in (0..n).rev() {
        // submatrix on indices k..n; a11 = a[k][k], R = a[k][k+1..], C = a[k+1..][k]
        let m = n - k - 1;
        let a11 = a.get(k, k).clone();
        let r: Vec<F::Elem> = (k + 1..n).map(|j| a.get(k, j).clone()).collect();
        let mut c: Vec<F::Elem> = (k + 1..n).map(|i| a.get(i, k).clone()).collect();
        let mut col = vec![field.one(), field.neg(&a11)];
        for _ in 0..m {
            let rc = r
                .iter()
                .zip(&c)
                .fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y)));
            col.push(field.neg(&rc));
            // c <- A1 c
            c = (0..m)
                .map(|i| {
                    (0..m).fold(field.zero(), |acc, j| {
                        field.add(&acc, &field.mul(a.get(k + 1 + i, k + 1 + j), &c[j]))
                    })
                })
                .collect();
        }
        // Toeplitz (m+2) x (m+1) product with p (length m+1)
        let next: Vec<F::Elem> = (0..m + 2)
            .map(|i| {
                (0..=m.min(i)).fold(field.zero(), |acc, j| {
                    if i - j < col.len() && j < p.len() {
                        field.add(&acc, &field.mul(&col[i - j], &p[j]))
                    } else {
                        acc
                    }
                })
            })
            .collect();
        p = next;
    }
    p.reverse();
    Ok(Poly::new(field, p))
}

/// Companion matrix with ones on the superdiagonal and the negated
/// coefficients in the last row, so `min_poly(companion(P)) = P`.
pub fn companion<F: Field>(field: &F, p: &Poly<F::Elem>) -> Result<Mat<F::Elem>> {
    if !p.is_monic(field) {
        return Err(Error::NotMonic);
    }
    let n = p.degree().unwrap();
    if n == 0 {
        return Err(Error::Invalid("companion of a constant".into()));
    }
    let mut m = Mat::zero(field, n, n);
    for i in 0..n - 1 {
        m.set(i, i + 1, field.one());
    }
    for j in 0..n {
        m.set(n - 1, j, field.neg(&p.coeffs()[j]));
    }
    Ok(m)
}

/// All vectors of `F^n` in lexicographic code order.
pub fn all_vectors<E: Clone>(elements: &[E], n: usize) -> Vec<Vec<E>> {
    let q = elements.len();
    let total = q.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut v = vec![elements[0].clone(); n];
            for x in v.iter_mut().rev() {
                *x = elements[code % q].clone();
                code /= q;
            }
            v
        })
        .collect()
}

/// Every invertible `n x n` matrix over a finite field, each exactly once,
/// built row by row so each new row avoids the span of the previous ones.
pub fn gl_enumerate<F: Field>(field: &F, n: usize, max_candidates: u64) -> Result<Vec<Mat<F::Elem>>> {
    let elements = field
        .elements()
        .ok_or_else(|| Error::Invalid("GL enumeration needs a finite field".into()))?;
    let q = elements.len() as u128;
    let needed = q.checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    check_bound(
        "GL enumeration candidates",
        needed.min(u64::MAX as u128) as u64,
        max_candidates,
    )?;
    let vectors = all_vectors(&elements, n);
    let mut out = Vec::new();
    let mut rows: Vec<Vec<F::Elem>> = Vec::with_capacity(n);
    gl_extend(field, &vectors, n, &mut rows, &mut out);
    Ok(out)
}

fn gl_extend<F: Field>(
    field: &F,
    vectors: &[Vec<F::Elem>],
    n: usize,
    rows: &mut Vec<Vec<F::Elem>>,
    out: &mut Vec<Mat<F::Elem>>,
) {
    if rows.len() == n {
        out.push(Mat::from_rows(rows.clone()).unwrap());
        return;
    }
    for v in vectors {
        rows.push(v.clone());
        if rank(field, rows) == rows.len() {
            gl_extend(field, vectors, n, rows, out);
        }
        rows.pop();
    }
}

/// `|GL_n(q)| = prod_{i<n} (q^n - q^i)`.
pub fn gl_order(n: u32, q: u64) -> u128 {
    let qn = (q as u128).pow(n);
    (0..n).map(|i| qn - (q as u128).pow(i)).product()
}

/// Result of closing a set of square matrices to a subring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure<E> {
    /// Canonically sorted members.
    pub elements: Vec<Mat<E>>,
    pub is_division: bool,
}

impl<E: Clone + Eq + Ord> Closure<E> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Smallest set containing `0`, `I` and `gens` that is closed under
/// addition, negation, multiplication and multiplication by `scalars`.
pub fn subalgebra_closure<F: Field>(
    field: &F,
    gens: &[Mat<F::Elem>],
    scalars: &[F::Elem],
    max_size: usize,
) -> Result<Closure<F::Elem>> {
    let n = match gens.first() {
        Some(g) => g.rows(),
        None => return Err(Error::Invalid("closure needs at least one generator".into())),
    };
    if let Some(bad) = gens.iter().find(|g| !g.is_square() || g.rows() != n) {
        return Err(Error::NonSquare {
            rows: bad.rows(),
            cols: bad.cols(),
        });
    }
    let mut seen: HashSet<Mat<F::Elem>> = HashSet::new();
    let mut members: Vec<Mat<F::Elem>> = Vec::new();
    let mut frontier: Vec<Mat<F::Elem>> = Vec::new();
    let push = |m: Mat<F::Elem>,
                    seen: &mut HashSet<Mat<F::Elem>>,
                    frontier: &mut Vec<Mat<F::Elem>>|
     -> Result<()> {
        if seen.insert(m.clone()) {
            check_bound("matrix closure size", seen.len() as u64, max_size as u64)?;
            frontier.push(m);
        }
        Ok(())
    };
    push(Mat::zero(field, n, n), &mut seen, &mut frontier)?;
    push(Mat::identity(field, n), &mut seen, &mut frontier)?;
    for g in gens {
        push(g.clone(), &mut seen, &mut frontier)?;
    }
    while let Some(x) = frontier.pop() {
        members.push(x.clone());
        let mut fresh = vec![x.neg(field)];
        for c in scalars {
            fresh.push(x.scale(c, field));
        }
        for y in &members {
            fresh.push(x.add(y, field));
            fresh.push(x.mul(y, field));
            fresh.push(y.mul(&x, field));
        }
        for m in fresh {
            push(m, &mut seen, &mut frontier)?;
        }
    }
    members.sort();
    let is_division = members
        .iter()
        .filter(|m| !m.is_zero(field))
        .all(|m| m.inverse(field).is_some_and(|inv| seen.contains(&inv)));
    Ok(Closure {
        elements: members,
        is_division,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::{field_make, Rationals};

    fn w3() -> Mat<u32> {
        Mat::from_rows(vec![vec![1, 2], vec![1, 1]]).unwrap()
    }

    #[test]
    fn annihilating_vectors() {
        let f3 = field_make(3, 1, 256).unwrap();
        let vs = vec![vec![1, 2, 0], vec![2, 1, 0]];
        let d = annihilating_vector(&f3, &vs, 3).unwrap().unwrap();
        assert!(d.iter().any(|&x| x != 0));
        for v in &vs {
            let dot = v.iter().zip(&d).fold(0, |acc, (a, b)| f3.add(&acc, &f3.mul(a, b)));
            assert_eq!(dot, 0);
        }
        let full = vec![vec![1, 0], vec![1, 1]];
        assert_eq!(annihilating_vector(&f3, &full, 2).unwrap(), None);
        assert_eq!(annihilating_vector(&f3, &[], 0).unwrap(), None);
    }

    #[test]
    fn row_span_examples() {
        let f2 = field_make(2, 1, 256).unwrap();
        assert_eq!(row_span_dim(&f2, &[vec![1, 0], vec![0, 1]], 2).unwrap(), 2);
        assert_eq!(row_span_dim(&f2, &[vec![0, 0], vec![1, 0]], 2).unwrap(), 1);
        assert!(matches!(
            row_span_dim(&f2, &[vec![1, 0], vec![1]], 2),
            Err(Error::Ragged { .. })
        ));
    }

    #[test]
    fn first_rows_of_w_powers_span_gf3_squared() {
        let f3 = field_make(3, 1, 256).unwrap();
        let w = w3();
        let mut p = Mat::identity(&f3, 2);
        let mut rows = Vec::new();
        for _ in 0..8 {
            rows.push(p.row(0).to_vec());
            p = p.mul(&w, &f3);
        }
        assert_eq!(p, Mat::identity(&f3, 2), "w has order 8");
        assert_eq!(row_span_dim(&f3, &rows, 2).unwrap(), 2);
    }

    #[test]
    fn min_poly_examples() {
        let f3 = field_make(3, 1, 256).unwrap();
        assert_eq!(
            min_poly(&f3, &Mat::identity(&f3, 3)).unwrap(),
            Poly::new(&f3, vec![2, 1])
        );
        // w^2 = 2w + 1, so x^2 + x + 2
        assert_eq!(min_poly(&f3, &w3()).unwrap(), Poly::new(&f3, vec![2, 1, 1]));
        let f2 = field_make(2, 1, 256).unwrap();
        let c = companion(&f2, &Poly::new(&f2, vec![1, 1, 1])).unwrap();
        assert_eq!(c, Mat::from_rows(vec![vec![0, 1], vec![1, 1]]).unwrap());
        assert_eq!(min_poly(&f2, &c).unwrap(), Poly::new(&f2, vec![1, 1, 1]));
        assert!(matches!(
            min_poly(&f2, &Mat::from_rows(vec![vec![1, 0]]).unwrap()),
            Err(Error::NonSquare { .. })
        ));
    }

    #[test]
    fn min_poly_over_rationals() {
        let q = Rationals;
        let a = Mat::from_rows(vec![
            vec![q.from_int(0), q.from_int(-1)],
            vec![q.from_int(1), q.from_int(0)],
        ])
        .unwrap();
        let m = min_poly(&q, &a).unwrap();
        assert_eq!(m, Poly::new(&q, vec![q.from_int(1), q.from_int(0), q.from_int(1)]));
        assert_eq!(char_poly(&q, &a).unwrap(), m);
    }

    #[test]
    fn char_poly_of_2x2() {
        let f5 = field_make(5, 1, 256).unwrap();
        let a = Mat::from_rows(vec![vec![1, 2], vec![3, 4]]).unwrap();
        // x^2 - 5x - 2 = x^2 + 0x + 3 mod 5
        assert_eq!(char_poly(&f5, &a).unwrap(), Poly::new(&f5, vec![3, 0, 1]));
    }

    #[test]
    fn gl_counts() {
        let f2 = field_make(2, 1, 256).unwrap();
        let f3 = field_make(3, 1, 256).unwrap();
        let f5 = field_make(5, 1, 256).unwrap();
        assert_eq!(gl_enumerate(&f2, 2, 6561).unwrap().len(), 6);
        assert_eq!(gl_enumerate(&f3, 2, 6561).unwrap().len(), 48);
        assert_eq!(gl_enumerate(&f5, 1, 6561).unwrap().len(), 4);
        assert!(matches!(
            gl_enumerate(&f3, 3, 6561),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn closure_examples() {
        let f3 = field_make(3, 1, 256).unwrap();
        let c = subalgebra_closure(&f3, &[w3()], &f3.prime_subfield(), 512).unwrap();
        assert_eq!(c.len(), 9);
        assert!(c.is_division);
        let mut p = Mat::identity(&f3, 2);
        for _ in 0..8 {
            assert!(c.elements.contains(&p));
            p = p.mul(&w3(), &f3);
        }

        let f2 = field_make(2, 1, 256).unwrap();
        let e11 = Mat::unit(&f2, 2, 0, 0);
        let c = subalgebra_closure(&f2, &[e11.clone()], &[0, 1], 512).unwrap();
        assert!(c.elements.contains(&e11));
        assert!(!c.is_division);

        let comp = companion(&f2, &Poly::new(&f2, vec![1, 1, 1])).unwrap();
        let c = subalgebra_closure(&f2, &[comp], &[0, 1], 512).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.is_division);
    }
}
