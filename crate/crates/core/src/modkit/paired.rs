use std::collections::HashMap;

use crate::bounds::Bounds;
use crate::error::{check_bound, Error, Result};
use crate::exactalg::{all_vectors, Field, Mat};
use crate::modkit::RightModule;
use crate::ringkit::TriRing;

/// Every `n x n` matrix over the ring's field, sorted.
pub fn all_matrices(tri: &TriRing) -> Vec<Mat<u32>> {
    let f = &tri.field;
    let n = tri.n;
    let mut out: Vec<Mat<u32>> = all_vectors(&f.elements().unwrap(), n * n)
        .into_iter()
        .map(|v| Mat::from_rows(v.chunks(n).map(|r| r.to_vec()).collect()).unwrap())
        .collect();
    out.sort();
    out
}

/// The module `(D, W)_i` over `tri(D; n; D')`: pairs `(a, A)` with `A` in
/// `W`, acted on by `(a, A)(d, x, B) = (ad + A^(i) x, AB)` where `A^(i)` is
/// row `i` of `A`, counted from 1.
pub fn realize_paired(tri: &TriRing, w: &[Mat<u32>], i: usize, bounds: &Bounds) -> Result<RightModule> {
    if i == 0 || i > tri.n {
        return Err(Error::Invalid(format!("row {i} out of range 1..={}", tri.n)));
    }
    let f = &tri.field;
    let mut w = w.to_vec();
    w.sort();
    w.dedup();
    if w.first().map_or(true, |z| !z.is_zero(f)) {
        return Err(Error::Invalid("W must contain the zero matrix".into()));
    }
    let q = tri.q();
    let k = w.len();
    check_bound("module size", (q * k) as u64, bounds.max_module_size as u64)?;
    let index: HashMap<&Mat<u32>, usize> = w.iter().enumerate().map(|(j, m)| (m, j)).collect();
    let find = |m: &Mat<u32>| index.get(m).copied().ok_or(Error::NotActionClosed);
    let mut wadd = vec![0usize; k * k];
    for (a, ma) in w.iter().enumerate() {
        for (b, mb) in w.iter().enumerate() {
            wadd[a * k + b] = find(&ma.add(mb, f))?;
        }
    }
    let ring = &tri.ring;
    let mut wact = vec![0usize; k * tri.dprime.len()];
    for (a, ma) in w.iter().enumerate() {
        for (b, mb) in tri.dprime.iter().enumerate() {
            wact[a * tri.dprime.len() + b] = find(&ma.mul(mb, f))?;
        }
    }
    let decoded: Vec<(u32, Vec<u32>, usize)> = ring.elements().map(|e| tri.decode(e)).collect();
    let row = i - 1;
    let labels = (0..q * k)
        .map(|c| {
            let rows: Vec<String> = w[c % k]
                .to_rows()
                .iter()
                .map(|r| format!("[{}]", r.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            format!("({};[{}])", c / k, rows.join(","))
        })
        .collect();
    Ok(RightModule::tabulate(
        ring,
        q * k,
        |x, y| {
            let a = f.add(&((x / k) as u32), &((y / k) as u32)) as usize;
            a * k + wadd[(x % k) * k + y % k]
        },
        |x, r| {
            let (d, v, b) = &decoded[r as usize];
            let m = &w[x % k];
            let dot = m
                .row(row)
                .iter()
                .zip(v)
                .fold(0u32, |acc, (s, t)| f.add(&acc, &f.mul(s, t)));
            let a = f.add(&f.mul(&((x / k) as u32), d), &dot) as usize;
            a * k + wact[(x % k) * tri.dprime.len() + b]
        },
        format!("(D,W)_{i}"),
        labels,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{DivisionSource, FieldSpec};
    use crate::modkit::{composition_length, hom_enumerate, is_local, socle};
    use crate::ringkit::build_tri;

    fn gf4_over_gf2() -> TriRing {
        build_tri(
            &FieldSpec { p: 2, k: 1 },
            2,
            &DivisionSource::Companion(vec![1, 1, 1]),
            &Bounds::default(),
        )
        .unwrap()
    }

    #[test]
    fn paired_module_sizes_and_laws() {
        let t = gf4_over_gf2();
        let b = Bounds::default();
        let m = realize_paired(&t, &t.dprime, 1, &b).unwrap();
        assert_eq!(m.size(), 8);
        m.verify_axioms(u64::MAX).unwrap();
        assert_eq!(socle(&m).len(), 2);
        assert_eq!(composition_length(&m), 2);
        assert!(is_local(&m));
        let full = realize_paired(&t, &all_matrices(&t), 1, &b).unwrap();
        assert_eq!(full.size(), 32);
        full.verify_axioms(u64::MAX).unwrap();
    }

    #[test]
    fn homs_into_the_full_paired_module() {
        let t = gf4_over_gf2();
        let b = Bounds::default();
        let m = realize_paired(&t, &t.dprime, 1, &b).unwrap();
        let n = realize_paired(&t, &all_matrices(&t), 1, &b).unwrap();
        assert_eq!(hom_enumerate(&m, &n, 100_000).unwrap().len(), 8);
    }

    #[test]
    fn non_closed_w_is_rejected() {
        let t = gf4_over_gf2();
        let f = &t.field;
        let w = vec![Mat::zero(f, 2, 2), Mat::unit(f, 2, 0, 0)];
        assert!(matches!(
            realize_paired(&t, &w, 1, &Bounds::default()),
            Err(Error::NotActionClosed)
        ));
    }
}
