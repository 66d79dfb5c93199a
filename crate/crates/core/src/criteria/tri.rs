//! Criteria for triangular rings `(D, D^n, D')` with `D` a finite field
//! and `D'` a division subring of `M_n(D)`.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bounds::Bounds;
use crate::criteria::{CriterionVerdict, Verdict};
use crate::error::{Error, Result};
use crate::exactalg::{
    all_vectors, annihilating_vector, companion, gl_enumerate, is_prime, min_poly, row_span_dim,
    subalgebra_closure, Field, GaloisField, Mat, Poly,
};
use crate::modkit::{all_matrices, realize_paired, ModuleMap};
use crate::ringkit::{Elem, TriRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpanMode {
    SelfOnly,
    AllConjugates,
}

/// Contains `0` and `I`, closed under `+` and `*`, and every nonzero member
/// has its inverse in the set.
pub fn is_division_subring(f: &GaloisField, n: usize, set: &[Mat<u32>]) -> bool {
    let members: HashSet<&Mat<u32>> = set.iter().collect();
    if set.iter().any(|m| m.rows() != n || m.cols() != n) {
        return false;
    }
    if !members.contains(&Mat::zero(f, n, n)) || !members.contains(&Mat::identity(f, n)) {
        return false;
    }
    let closed = set.iter().all(|a| {
        set.iter()
            .all(|b| members.contains(&a.add(b, f)) && members.contains(&a.mul(b, f)))
    });
    closed
        && set
            .iter()
            .filter(|m| !m.is_zero(f))
            .all(|m| m.inverse(f).is_some_and(|i| members.contains(&i)))
}

fn require_division(f: &GaloisField, n: usize, set: &[Mat<u32>]) -> Result<()> {
    if is_division_subring(f, n, set) {
        Ok(())
    } else {
        Err(Error::Invalid(format!("matrix set is not a division subring of M_{n}")))
    }
}

/// A conjugate `u D' u^-1` whose `row`-th rows (counted from 1) span a
/// proper subspace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanFailure {
    pub conjugator: Mat<u32>,
    pub row: usize,
    pub span_dim: usize,
}

impl SpanFailure {
    pub fn recheck(&self, f: &GaloisField, n: usize, dprime: &[Mat<u32>]) -> bool {
        let Some(inv) = self.conjugator.inverse(f) else {
            return false;
        };
        if self.row == 0 || self.row > n {
            return false;
        }
        let rows: Vec<Vec<u32>> = dprime
            .iter()
            .map(|a| a.conjugate_by(&self.conjugator, &inv, f).row(self.row - 1).to_vec())
            .collect();
        row_span_dim(f, &rows, n).is_ok_and(|d| d == self.span_dim && d < n)
    }
}

fn first_deficient_row(f: &GaloisField, n: usize, set: &[Mat<u32>]) -> Result<Option<(usize, usize)>> {
    for i in 0..n {
        let rows: Vec<Vec<u32>> = set.iter().map(|a| a.row(i).to_vec()).collect();
        let dim = row_span_dim(f, &rows, n)?;
        if dim < n {
            return Ok(Some((i + 1, dim)));
        }
    }
    Ok(None)
}

/// A nonzero `d` with `sum_{k != j} d_k A[k,j] = 0` for every `A` in `D'`
/// gives `B`, the identity with row `r` replaced by `d` (where `d_r != 0`).
/// `B` fixes `e_j`, so every member of `B D' B^-1` has a zero `(r, j)` entry.
pub fn conjugate_obstruction(f: &GaloisField, n: usize, dprime: &[Mat<u32>]) -> Result<Option<SpanFailure>> {
    for j in 0..n {
        let others: Vec<usize> = (0..n).filter(|&k| k != j).collect();
        let vectors: Vec<Vec<u32>> = dprime
            .iter()
            .map(|a| others.iter().map(|&k| *a.get(k, j)).collect())
            .collect();
        let Some(d) = annihilating_vector(f, &vectors, n - 1)? else {
            continue;
        };
        let mut v = vec![0u32; n];
        for (&k, x) in others.iter().zip(d) {
            v[k] = x;
        }
        let r = v.iter().position(|x| *x != 0).expect("annihilating vectors are nonzero");
        let mut b = Mat::identity(f, n);
        for (c, x) in v.into_iter().enumerate() {
            b.set(r, c, x);
        }
        let inv = b.inverse(f).expect("B has determinant d_r");
        let rows: Vec<Vec<u32>> = dprime.iter().map(|a| a.conjugate_by(&b, &inv, f).row(r).to_vec()).collect();
        let span_dim = row_span_dim(f, &rows, n)?;
        return Ok(Some(SpanFailure {
            conjugator: b,
            row: r + 1,
            span_dim,
        }));
    }
    Ok(None)
}

const ROW_SPAN: (&str, &str) = ("row-span", "i-th rows of every conjugate of D' span D^n");
const ROW_SPAN_SELF: (&str, &str) = ("row-span-self", "i-th rows of D' span D^n");

/// For every conjugate `U = u D' u^-1` (or `D'` alone in self-only mode)
/// and every `i`, the `i`-th rows of members of `U` span `D^n`.
pub fn row_span_criterion(
    f: &GaloisField,
    n: usize,
    dprime: &[Mat<u32>],
    mode: SpanMode,
    bounds: &Bounds,
) -> Result<CriterionVerdict> {
    require_division(f, n, dprime)?;
    let (id, anchor) = match mode {
        SpanMode::SelfOnly => ROW_SPAN_SELF,
        SpanMode::AllConjugates => ROW_SPAN,
    };
    let verdict = |v: Verdict, cert| CriterionVerdict::new(id, anchor, v, cert);
    if let Some((row, span_dim)) = first_deficient_row(f, n, dprime)? {
        let failure = SpanFailure {
            conjugator: Mat::identity(f, n),
            row,
            span_dim,
        };
        return Ok(verdict(Verdict::Fails, json!({ "mode": mode, "failure": failure })));
    }
    if mode == SpanMode::SelfOnly {
        return Ok(verdict(Verdict::Holds, json!({ "mode": mode, "conjugates_checked": 1 })));
    }
    let units = match gl_enumerate(f, n, bounds.max_gl_candidates) {
        Ok(u) => u,
        Err(Error::BoundExceeded { limit, needed, .. }) => {
            if let Some(failure) = conjugate_obstruction(f, n, dprime)? {
                return Ok(verdict(
                    Verdict::Fails,
                    json!({ "mode": mode, "failure": failure, "source": "fixed-column dependency" }),
                ));
            }
            let reason = format!(
                "holds modulo conjugate enumeration bound: GL enumeration needs {needed} candidates, bound {limit}; \
                 self-only spans and no fixed-column dependency exists"
            );
            return Ok(verdict(Verdict::Undecided, json!({ "mode": mode, "reason": reason })));
        }
        Err(e) => return Err(e),
    };
    let outcomes: Vec<Result<Option<SpanFailure>>> = units
        .par_iter()
        .map(|u| {
            let inv = u.inverse(f).expect("enumerated units are invertible");
            let conj: Vec<Mat<u32>> = dprime.iter().map(|a| a.conjugate_by(u, &inv, f)).collect();
            Ok(first_deficient_row(f, n, &conj)?.map(|(row, span_dim)| SpanFailure {
                conjugator: u.clone(),
                row,
                span_dim,
            }))
        })
        .collect();
    for o in outcomes {
        if let Some(failure) = o? {
            return Ok(verdict(Verdict::Fails, json!({ "mode": mode, "failure": failure })));
        }
    }
    Ok(verdict(
        Verdict::Holds,
        json!({ "mode": mode, "conjugates_checked": units.len() }),
    ))
}

/// For `n = 2`: holds (middle class predicted) iff every member of `D'` is
/// lower triangular or every member is upper triangular.
pub fn rem1_triangularity(f: &GaloisField, dprime: &[Mat<u32>]) -> CriterionVerdict {
    const ID: &str = "triangularity";
    const ANCHOR: &str = "D' all lower or all upper triangular in M_2(D)";
    if dprime.iter().any(|m| m.rows() != 2 || m.cols() != 2) {
        return CriterionVerdict::new(ID, ANCHOR, Verdict::Inapplicable, json!({ "reason": "n != 2" }));
    }
    let lower = dprime.iter().all(|m| m.is_lower_triangular(f));
    let upper = dprime.iter().all(|m| m.is_upper_triangular(f));
    let witness = |tri: fn(&Mat<u32>, &GaloisField) -> bool| dprime.iter().find(|m| !tri(m, f)).cloned();
    let v = if lower || upper { Verdict::Holds } else { Verdict::Fails };
    CriterionVerdict::new(
        ID,
        ANCHOR,
        v,
        json!({
            "all_lower": lower,
            "all_upper": upper,
            "middle_class_predicted": lower || upper,
            "not_lower": witness(Mat::is_lower_triangular),
            "not_upper": witness(Mat::is_upper_triangular),
        }),
    )
}

/// `(d0, A0)` with row `j` of `A0` equal to `d0 e_i`; it acts as
/// `(d, A) -> (d0 d, A0 A)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomPair {
    pub d0: u32,
    pub a0: Mat<u32>,
}

/// Every pair `(d0, A0)` for homomorphisms `(D, D')_i -> (D, M_n(D))_j`,
/// rows counted from 1.
pub fn lem1_pairs(tri: &TriRing, i: usize, j: usize) -> Result<Vec<HomPair>> {
    let n = tri.n;
    if i == 0 || j == 0 || i > n || j > n {
        return Err(Error::Invalid(format!("rows ({i}, {j}) out of range 1..={n}")));
    }
    let f = &tri.field;
    let scalars = f.elements().unwrap();
    let free = all_vectors(&scalars, n * (n - 1));
    let mut out = Vec::with_capacity(scalars.len() * free.len());
    for &d0 in &scalars {
        for rest in &free {
            let mut it = rest.iter();
            let rows = (0..n)
                .map(|r| {
                    if r == j - 1 {
                        (0..n).map(|k| if k == i - 1 { d0 } else { 0 }).collect()
                    } else {
                        (0..n).map(|_| *it.next().unwrap()).collect()
                    }
                })
                .collect();
            out.push(HomPair {
                d0,
                a0: Mat::from_rows(rows)?,
            });
        }
    }
    Ok(out)
}

/// The pairs of [`lem1_pairs`] as maps between the carriers built by
/// `realize_paired`, sorted.
pub fn lem1_hom_formula(tri: &TriRing, i: usize, j: usize, bounds: &Bounds) -> Result<Vec<ModuleMap>> {
    let f = &tri.field;
    let dom = realize_paired(tri, &tri.dprime, i, bounds)?;
    let all = all_matrices(tri);
    realize_paired(tri, &all, j, bounds)?;
    let kd = tri.dprime.len();
    let ka = all.len();
    let mut maps: Vec<ModuleMap> = lem1_pairs(tri, i, j)?
        .into_iter()
        .map(|p| {
            let values = dom
                .elements()
                .map(|x| {
                    let (a, m) = ((x as usize / kd) as u32, &tri.dprime[x as usize % kd]);
                    let img = p.a0.mul(m, f);
                    let pos = all.binary_search(&img).expect("all matrices are listed");
                    (f.mul(&p.d0, &a) as usize * ka + pos) as Elem
                })
                .collect();
            ModuleMap { values }
        })
        .collect();
    maps.sort();
    maps.dedup();
    Ok(maps)
}

/// `(D, D')_i` and `(D, D')_j` are isomorphic iff some `A` in `D'` has row
/// `j` equal to `c e_i` with `c != 0`.
pub fn lem2_local_factor_iso(n: usize, dprime: &[Mat<u32>], i: usize, j: usize) -> CriterionVerdict {
    const ID: &str = "local-factor-iso";
    const ANCHOR: &str = "D' contains A with A[j,k] = delta_ik c, c nonzero";
    if i == 0 || j == 0 || i > n || j > n {
        return CriterionVerdict::new(ID, ANCHOR, Verdict::Inapplicable, json!({ "reason": "row out of range" }));
    }
    let found = dprime.iter().find(|a| {
        let row = a.row(j - 1);
        row[i - 1] != 0 && row.iter().enumerate().all(|(k, x)| k == i - 1 || *x == 0)
    });
    match found {
        Some(a) => CriterionVerdict::new(
            ID,
            ANCHOR,
            Verdict::Holds,
            json!({ "i": i, "j": j, "matrix": a, "c": a.get(j - 1, i - 1) }),
        ),
        None => CriterionVerdict::new(ID, ANCHOR, Verdict::Fails, json!({ "i": i, "j": j, "matrix": null })),
    }
}

/// The lines `D x` through the first rows `x` of members of `D'` cover
/// `D^n`.
pub fn prop1_unique_local(f: &GaloisField, n: usize, dprime: &[Mat<u32>]) -> CriterionVerdict {
    const ID: &str = "unique-local";
    const ANCHOR: &str = "lines through first rows of D' cover D^n";
    let scalars = f.elements().unwrap();
    let mut covered: HashSet<Vec<u32>> = HashSet::new();
    for a in dprime {
        let x = a.row(0);
        for c in &scalars {
            covered.insert(x.iter().map(|v| f.mul(c, v)).collect());
        }
    }
    let all = all_vectors(&scalars, n);
    let uncovered = all.iter().find(|v| !covered.contains(*v));
    let first_rows: HashSet<&[u32]> = dprime.iter().map(|a| a.row(0)).collect();
    let cert = json!({
        "distinct_first_rows": first_rows.len(),
        "covered": covered.len(),
        "total": all.len(),
        "uncovered": uncovered,
    });
    let v = if uncovered.is_none() { Verdict::Holds } else { Verdict::Fails };
    CriterionVerdict::new(ID, ANCHOR, v, cert)
}

/// The span of the powers of the companion matrix of an irreducible `P`:
/// a field with `|F|^deg P` elements inside `M_m(F)`.
pub fn companion_subfield(f: &GaloisField, p: &Poly<u32>, bounds: &Bounds) -> Result<Vec<Mat<u32>>> {
    if !p.is_irreducible(f)? {
        return Err(Error::Reducible);
    }
    let m = p.degree().unwrap_or(0);
    let c = companion(f, p)?;
    let scalars = f.elements().unwrap();
    let closure = subalgebra_closure(f, &[c], &scalars, bounds.max_closure)?;
    let expected = (f.order() as usize).pow(m as u32);
    let proper = closure.elements.iter().any(|a| !a.is_scalar(f));
    if closure.len() != expected || !closure.is_division || (m > 1 && !proper) {
        return Err(Error::TheoremMismatch(format!(
            "companion closure has {} elements, expected a field of size {expected}",
            closure.len()
        )));
    }
    Ok(closure.elements)
}

/// For `K` a division subring of `M_p(F)` properly containing the scalars,
/// `F` a subfield of `F1` given by its embedding, checks that every
/// conjugate of `K` in `M_p(F1)` has spanning rows, and reports the degree
/// of the minimal polynomial of a non-scalar member of `K`.
pub fn prime_degree_span_check(
    f: &GaloisField,
    f1: &GaloisField,
    embed: &[u32],
    p: usize,
    k: &[Mat<u32>],
    bounds: &Bounds,
) -> Result<CriterionVerdict> {
    const ID: &str = "prime-degree-span";
    const ANCHOR: &str = "division subring of M_p(F) properly containing the scalars";
    let inapplicable = |reason: &str| CriterionVerdict::new(ID, ANCHOR, Verdict::Inapplicable, json!({ "reason": reason }));
    if !is_prime(p as u64) {
        return Ok(inapplicable("p is not prime"));
    }
    if embed.len() != f.order() as usize
        || embed[0] != 0
        || embed[1] != 1
        || !(0..f.order()).all(|a| {
            (0..f.order()).all(|b| {
                embed[f.add(&a, &b) as usize] == f1.add(&embed[a as usize], &embed[b as usize])
                    && embed[f.mul(&a, &b) as usize] == f1.mul(&embed[a as usize], &embed[b as usize])
            })
        })
    {
        return Err(Error::Invalid("embedding is not a field homomorphism".into()));
    }
    require_division(f, p, k)?;
    let Some(a) = k.iter().find(|m| !m.is_scalar(f)) else {
        return Ok(inapplicable("K is the field of scalar matrices"));
    };
    let degree = min_poly(f, a)?.degree().unwrap_or(0);
    let lifted: Vec<Mat<u32>> = k
        .iter()
        .map(|m| Mat::from_rows(m.to_rows().iter().map(|r| r.iter().map(|&x| embed[x as usize]).collect()).collect()))
        .collect::<Result<_>>()?;
    let span = row_span_criterion(f1, p, &lifted, SpanMode::AllConjugates, bounds)?;
    let verdict = if degree != p { Verdict::Fails } else { span.verdict };
    Ok(CriterionVerdict::new(
        ID,
        ANCHOR,
        verdict,
        json!({ "min_poly_degree": degree, "non_scalar": a, "span": span }),
    ))
}
