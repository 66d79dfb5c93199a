use std::collections::HashMap;
use std::sync::Arc;

use crate::bounds::Bounds;
use crate::dsl::{DivisionSource, FieldSpec, RingSpec};
use crate::error::{check_bound, Error, Result};
use crate::exactalg::{companion, field_make, subalgebra_closure, Field, GaloisField, Mat, Poly};
use crate::ringkit::{Elem, FiniteRing};

fn size_ok(what: &'static str, size: u128, bounds: &Bounds) -> Result<usize> {
    check_bound(
        what,
        size.min(u64::MAX as u128) as u64,
        bounds.max_ring_size as u64,
    )?;
    Ok(size as usize)
}

fn make_field(fs: &FieldSpec, bounds: &Bounds) -> Result<GaloisField> {
    field_make(fs.p, fs.k, bounds.max_field_size)
}

/// Evaluates a recipe into explicit tables.
pub fn build_ring(spec: &RingSpec, bounds: &Bounds) -> Result<FiniteRing> {
    let ring = match spec {
        RingSpec::Zmod(n) => {
            let n = size_ok("ring size", *n as u128, bounds)?;
            FiniteRing::tabulate(
                n,
                |a, b| (a + b) % n,
                |a, b| (a * b) % n,
                1 % n,
                (0..n).map(|i| i.to_string()).collect(),
                String::new(),
            )
        }
        RingSpec::Gf(fs) => {
            let f = make_field(fs, bounds)?;
            let q = size_ok("ring size", f.order() as u128, bounds)?;
            FiniteRing::tabulate(
                q,
                |a, b| f.add(&(a as u32), &(b as u32)) as usize,
                |a, b| f.mul(&(a as u32), &(b as u32)) as usize,
                1,
                (0..q).map(|i| i.to_string()).collect(),
                String::new(),
            )
        }
        RingSpec::Prod(parts) => {
            let rings = parts
                .iter()
                .map(|p| build_ring(p, bounds))
                .collect::<Result<Vec<_>>>()?;
            product(&rings, bounds)?
        }
        RingSpec::Mat(base, k) => {
            let b = build_ring(base, bounds)?;
            let k = *k as usize;
            let size = (b.size() as u128)
                .checked_pow((k * k) as u32)
                .unwrap_or(u128::MAX);
            size_ok("ring size", size, bounds)?;
            matrix_ring(&b, k)
        }
        RingSpec::Tri { field, n, source } => {
            let tri = build_tri(field, *n as usize, source, bounds)?;
            return Ok(Arc::unwrap_or_clone(tri.ring));
        }
        RingSpec::Trimat(a, b) => {
            let ra = build_ring(a, bounds)?;
            let rb = build_ring(b, bounds)?;
            let phi = canonical_hom(&ra, &rb, a, b)?;
            let size = (ra.size() as u128) * (rb.size() as u128).pow(2);
            size_ok("ring size", size, bounds)?;
            triangular(&ra, &rb, &phi)
        }
        RingSpec::Idealize { field, dim } => {
            let f = make_field(field, bounds)?;
            let q = f.order() as usize;
            let dim = *dim as usize;
            let size = (q as u128).checked_pow(dim as u32 + 1).unwrap_or(u128::MAX);
            size_ok("ring size", size, bounds)?;
            idealization(&f, dim)
        }
    };
    Ok(ring.with_provenance(spec.to_string(), Some(spec.clone())))
}

fn digits(mut code: usize, radix: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radix.len()];
    for i in (0..radix.len()).rev() {
        out[i] = code % radix[i];
        code /= radix[i];
    }
    out
}

fn undigits(d: &[usize], radix: &[usize]) -> usize {
    d.iter().zip(radix).fold(0, |acc, (x, r)| acc * r + x)
}

fn product(rings: &[FiniteRing], bounds: &Bounds) -> Result<FiniteRing> {
    let radix: Vec<usize> = rings.iter().map(|r| r.size()).collect();
    let size = radix.iter().map(|&r| r as u128).product();
    let size = size_ok("ring size", size, bounds)?;
    let op = |a: usize, b: usize, f: &dyn Fn(&FiniteRing, Elem, Elem) -> Elem| {
        let (da, db) = (digits(a, &radix), digits(b, &radix));
        let d: Vec<usize> = rings
            .iter()
            .enumerate()
            .map(|(i, r)| f(r, da[i] as Elem, db[i] as Elem) as usize)
            .collect();
        undigits(&d, &radix)
    };
    let one: Vec<usize> = rings.iter().map(|r| r.one() as usize).collect();
    let labels = (0..size)
        .map(|c| {
            let d = digits(c, &radix);
            let parts: Vec<&str> = rings.iter().zip(&d).map(|(r, &x)| r.label(x as Elem)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    Ok(FiniteRing::tabulate(
        size,
        |a, b| op(a, b, &|r, x, y| r.add(x, y)),
        |a, b| op(a, b, &|r, x, y| r.mul(x, y)),
        undigits(&one, &radix),
        labels,
        String::new(),
    ))
}

fn matrix_ring(b: &FiniteRing, k: usize) -> FiniteRing {
    let radix = vec![b.size(); k * k];
    let size = radix.iter().product();
    let mul = |x: usize, y: usize| {
        let (dx, dy) = (digits(x, &radix), digits(y, &radix));
        let mut out = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                let mut acc: Elem = 0;
                for t in 0..k {
                    acc = b.add(acc, b.mul(dx[i * k + t] as Elem, dy[t * k + j] as Elem));
                }
                out[i * k + j] = acc as usize;
            }
        }
        undigits(&out, &radix)
    };
    let add = |x: usize, y: usize| {
        let (dx, dy) = (digits(x, &radix), digits(y, &radix));
        let d: Vec<usize> = dx.iter().zip(&dy).map(|(&p, &q)| b.add(p as Elem, q as Elem) as usize).collect();
        undigits(&d, &radix)
    };
    let mut one = vec![0; k * k];
    for i in 0..k {
        one[i * k + i] = b.one() as usize;
    }
    let labels = (0..size)
        .map(|c| {
            let d = digits(c, &radix);
            let rows: Vec<String> = d
                .chunks(k)
                .map(|row| {
                    let cells: Vec<&str> = row.iter().map(|&x| b.label(x as Elem)).collect();
                    format!("[{}]", cells.join(","))
                })
                .collect();
            format!("[{}]", rows.join(","))
        })
        .collect();
    FiniteRing::tabulate(size, add, mul, undigits(&one, &radix), labels, String::new())
}

/// The unital ring map `A -> B` used to make `B` an `B`-`A` bimodule:
/// the identity when both recipes agree, otherwise `k*1 -> k*1` when the
/// additive group of `A` is generated by its identity.
fn canonical_hom(a: &FiniteRing, b: &FiniteRing, sa: &RingSpec, sb: &RingSpec) -> Result<Vec<Elem>> {
    if sa == sb {
        return Ok(a.elements().collect());
    }
    let mut phi = vec![None; a.size()];
    let (mut x, mut y) = (0 as Elem, 0 as Elem);
    for _ in 0..a.size() {
        if phi[x as usize].is_some() {
            break;
        }
        phi[x as usize] = Some(y);
        x = a.add(x, a.one());
        y = b.add(y, b.one());
    }
    if phi.iter().any(Option::is_none) {
        return Err(Error::IllTypedBimodule(format!(
            "{sa} is not generated by its identity, so {sb} has no canonical {sa}-action"
        )));
    }
    if y != 0 {
        return Err(Error::IllTypedBimodule(format!(
            "the characteristic of {sb} does not divide |{sa}|"
        )));
    }
    Ok(phi.into_iter().map(Option::unwrap).collect())
}

/// `[[a,0],[m,b]]` with `m` in `B`, where `A` acts on `m` through `phi`.
fn triangular(a: &FiniteRing, b: &FiniteRing, phi: &[Elem]) -> FiniteRing {
    let radix = [a.size(), b.size(), b.size()];
    let size = radix.iter().product();
    let add = |x: usize, y: usize| {
        let (p, q) = (digits(x, &radix), digits(y, &radix));
        undigits(
            &[
                a.add(p[0] as Elem, q[0] as Elem) as usize,
                b.add(p[1] as Elem, q[1] as Elem) as usize,
                b.add(p[2] as Elem, q[2] as Elem) as usize,
            ],
            &radix,
        )
    };
    let mul = |x: usize, y: usize| {
        let (p, q) = (digits(x, &radix), digits(y, &radix));
        let m = b.add(
            b.mul(p[1] as Elem, phi[q[0]]),
            b.mul(p[2] as Elem, q[1] as Elem),
        );
        undigits(
            &[
                a.mul(p[0] as Elem, q[0] as Elem) as usize,
                m as usize,
                b.mul(p[2] as Elem, q[2] as Elem) as usize,
            ],
            &radix,
        )
    };
    let one = undigits(&[a.one() as usize, 0, b.one() as usize], &radix);
    let labels = (0..size)
        .map(|c| {
            let d = digits(c, &radix);
            format!(
                "[[{},0],[{},{}]]",
                a.label(d[0] as Elem),
                b.label(d[1] as Elem),
                b.label(d[2] as Elem)
            )
        })
        .collect();
    FiniteRing::tabulate(size, add, mul, one, labels, String::new())
}

fn vec_label(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn idealization(f: &GaloisField, dim: usize) -> FiniteRing {
    let q = f.order() as usize;
    let radix = vec![q; dim + 1];
    let size = radix.iter().product();
    let fa = |x: usize, y: usize| f.add(&(x as u32), &(y as u32)) as usize;
    let fm = |x: usize, y: usize| f.mul(&(x as u32), &(y as u32)) as usize;
    let add = |x: usize, y: usize| {
        let (p, r) = (digits(x, &radix), digits(y, &radix));
        let d: Vec<usize> = p.iter().zip(&r).map(|(&s, &t)| fa(s, t)).collect();
        undigits(&d, &radix)
    };
    let mul = |x: usize, y: usize| {
        let (p, r) = (digits(x, &radix), digits(y, &radix));
        let mut d = vec![fm(p[0], r[0])];
        for i in 1..=dim {
            d.push(fa(fm(p[0], r[i]), fm(p[i], r[0])));
        }
        undigits(&d, &radix)
    };
    let mut one = vec![0; dim + 1];
    one[0] = 1;
    let labels = (0..size)
        .map(|c| {
            let d = digits(c, &radix);
            format!("({};{})", d[0], vec_label(&d[1..]))
        })
        .collect();
    FiniteRing::tabulate(size, add, mul, undigits(&one, &radix), labels, String::new())
}

/// The formal triangular ring `[[D,0],[D^n,D']]` together with the data
/// needed to address its elements as triples `(d, x, A)`.
#[derive(Debug, Clone)]
pub struct TriRing {
    pub ring: Arc<FiniteRing>,
    pub field: GaloisField,
    pub n: usize,
    /// Members of `D'`, sorted; index 0 is the zero matrix.
    pub dprime: Vec<Mat<u32>>,
    index: HashMap<Mat<u32>, usize>,
}

impl TriRing {
    pub fn q(&self) -> usize {
        self.field.order() as usize
    }

    pub fn dprime_index(&self, m: &Mat<u32>) -> Option<usize> {
        self.index.get(m).copied()
    }

    fn radix(&self) -> Vec<usize> {
        let mut r = vec![self.q(); self.n + 1];
        r.push(self.dprime.len());
        r
    }

    pub fn encode(&self, d: u32, x: &[u32], a: usize) -> Elem {
        let mut digs = vec![d as usize];
        digs.extend(x.iter().map(|&v| v as usize));
        digs.push(a);
        undigits(&digs, &self.radix()) as Elem
    }

    pub fn decode(&self, e: Elem) -> (u32, Vec<u32>, usize) {
        let d = digits(e as usize, &self.radix());
        (
            d[0] as u32,
            d[1..=self.n].iter().map(|&v| v as u32).collect(),
            d[self.n + 1],
        )
    }
}

fn dprime_matrices(
    f: &GaloisField,
    n: usize,
    source: &DivisionSource,
    bounds: &Bounds,
) -> Result<Vec<Mat<u32>>> {
    let scalars = f.elements().unwrap();
    let gens = match source {
        DivisionSource::Gen(mats) => mats
            .iter()
            .map(|m| Mat::from_rows(m.iter().map(|r| r.iter().map(|&v| v as u32).collect()).collect()))
            .collect::<Result<Vec<_>>>()?,
        DivisionSource::Companion(coeffs) => {
            let p = Poly::new(f, coeffs.iter().map(|&c| c as u32).collect());
            if !p.is_irreducible(f)? {
                return Err(Error::Reducible);
            }
            vec![companion(f, &p)?]
        }
        DivisionSource::Scalars | DivisionSource::Full => vec![Mat::identity(f, n)],
    };
    let closure = subalgebra_closure(f, &gens, &scalars, bounds.max_closure)?;
    if !closure.is_division {
        return Err(Error::Invalid(
            "the generated matrix subring is not a division ring".into(),
        ));
    }
    Ok(closure.elements)
}

/// Builds `tri(field; n; source)`.
pub fn build_tri(field: &FieldSpec, n: usize, source: &DivisionSource, bounds: &Bounds) -> Result<TriRing> {
    let f = make_field(field, bounds)?;
    let dprime = dprime_matrices(&f, n, source, bounds)?;
    let spec = RingSpec::Tri {
        field: *field,
        n: n as u32,
        source: source.clone(),
    };
    let tri = tri_from_matrices(f, n, dprime, bounds)?;
    Ok(TriRing {
        ring: Arc::new(Arc::unwrap_or_clone(tri.ring).with_provenance(spec.to_string(), Some(spec))),
        ..tri
    })
}

/// Builds the triangular ring for an explicit division subring `D'` of
/// `M_n(D)`, e.g. a conjugate of one obtained from a recipe.
pub fn tri_from_matrices(
    f: GaloisField,
    n: usize,
    mut dprime: Vec<Mat<u32>>,
    bounds: &Bounds,
) -> Result<TriRing> {
    dprime.sort();
    dprime.dedup();
    if dprime.first().map_or(true, |z| !z.is_zero(&f)) {
        return Err(Error::Invalid("D' must contain the zero matrix".into()));
    }
    let q = f.order() as usize;
    let size = (q as u128).pow(n as u32 + 1) * dprime.len() as u128;
    size_ok("ring size", size, bounds)?;
    let index: HashMap<Mat<u32>, usize> = dprime.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let closed = |m: Mat<u32>| {
        index
            .get(&m)
            .copied()
            .ok_or(Error::NotActionClosed)
    };
    let k = dprime.len();
    let mut dmul = vec![0usize; k * k];
    let mut dadd = vec![0usize; k * k];
    for (i, a) in dprime.iter().enumerate() {
        for (j, b) in dprime.iter().enumerate() {
            dmul[i * k + j] = closed(a.mul(b, &f))?;
            dadd[i * k + j] = closed(a.add(b, &f))?;
        }
    }
    let vecs = q.pow(n as u32);
    let vradix = vec![q; n];
    // act[a * vecs + x] = A x for the column vector x.
    let mut act = vec![0usize; k * vecs];
    for (i, a) in dprime.iter().enumerate() {
        for x in 0..vecs {
            let xv = digits(x, &vradix);
            let y: Vec<usize> = (0..n)
                .map(|r| {
                    (0..n).fold(0u32, |acc, c| f.add(&acc, &f.mul(a.get(r, c), &(xv[c] as u32))))
                        as usize
                })
                .collect();
            act[i * vecs + x] = undigits(&y, &vradix);
        }
    }
    let fa = |x: usize, y: usize| f.add(&(x as u32), &(y as u32)) as usize;
    let fm = |x: usize, y: usize| f.mul(&(x as u32), &(y as u32)) as usize;
    let vadd = |x: usize, y: usize| {
        let (p, r) = (digits(x, &vradix), digits(y, &vradix));
        undigits(&p.iter().zip(&r).map(|(&s, &t)| fa(s, t)).collect::<Vec<_>>(), &vradix)
    };
    let vscale = |x: usize, c: usize| {
        let p = digits(x, &vradix);
        undigits(&p.iter().map(|&s| fm(s, c)).collect::<Vec<_>>(), &vradix)
    };
    let radix = [q, vecs, k];
    let size = size as usize;
    let add = |x: usize, y: usize| {
        let (p, r) = (digits(x, &radix), digits(y, &radix));
        undigits(&[fa(p[0], r[0]), vadd(p[1], r[1]), dadd[p[2] * k + r[2]]], &radix)
    };
    let mul = |x: usize, y: usize| {
        let (p, r) = (digits(x, &radix), digits(y, &radix));
        let col = vadd(vscale(p[1], r[0]), act[p[2] * vecs + r[1]]);
        undigits(&[fm(p[0], r[0]), col, dmul[p[2] * k + r[2]]], &radix)
    };
    let id = closed(Mat::identity(&f, n))?;
    let one = undigits(&[1, 0, id], &radix);
    let labels = (0..size)
        .map(|c| {
            let d = digits(c, &radix);
            let a = dprime[d[2]]
                .to_rows()
                .iter()
                .map(|r| format!("[{}]", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
                .collect::<Vec<_>>()
                .join(",");
            format!("({};{};[{}])", d[0], vec_label(&digits(d[1], &vradix)), a)
        })
        .collect();
    let ring = FiniteRing::tabulate(size, add, mul, one, labels, String::new());
    let recipe = format!("tri(gf({},{});{};<{} matrices>)", f.characteristic(), f.degree(), n, k);
    Ok(TriRing {
        ring: Arc::new(ring.with_provenance(recipe, None)),
        field: f,
        n,
        dprime,
        index,
    })
}
