//! Zero-dimensional schemes: rational points, radicals and local lengths.
//!
//! Everything works in a chart `y0 != 0` found by trying linear forms that
//! avoid the scheme. In that chart each variable satisfies a binary form
//! in `(y0, yj)`, obtained by linear algebra on normal forms.

use std::collections::HashMap;

use crate::change::{LinearChange, ProjPoint};
use crate::field::{horner, Field};
use crate::ideal::{GradedIdeal, IdealError};
use crate::linalg::{complete_basis, Matrix};
use crate::mono::{monomials_of_degree, Monomial};
use crate::poly::MultiPoly;

type UPoly<K> = Vec<<K as Field>::Elem>;

fn utrim<K: Field>(k: &K, mut a: UPoly<K>) -> UPoly<K> {
    while a.last().is_some_and(|c| k.is_zero(c)) {
        a.pop();
    }
    a
}

fn uderiv<K: Field>(k: &K, a: &[K::Elem]) -> UPoly<K> {
    let d = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| k.mul(c, &k.from_i64(i as i64)))
        .collect();
    utrim(k, d)
}

fn udivrem<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> (UPoly<K>, UPoly<K>) {
    let b = utrim(k, b.to_vec());
    let mut r = utrim(k, a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lb = k.inv(b.last().unwrap()).unwrap();
    let mut q = vec![k.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = k.mul(r.last().unwrap(), &lb);
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = k.sub(&r[shift + i], &k.mul(&c, bi));
        }
        q[shift] = c;
        r = utrim(k, r);
    }
    (utrim(k, q), r)
}

fn ugcd<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> UPoly<K> {
    let mut a = utrim(k, a.to_vec());
    let mut b = utrim(k, b.to_vec());
    while !b.is_empty() {
        let (_, r) = udivrem(k, &a, &b);
        a = b;
        b = r;
    }
    if let Some(l) = a.last() {
        let inv = k.inv(l).unwrap();
        a = a.iter().map(|c| k.mul(c, &inv)).collect();
    }
    a
}

/// Squarefree part; assumes the degree is below the characteristic.
fn usqfree<K: Field>(k: &K, a: &[K::Elem]) -> UPoly<K> {
    let d = uderiv(k, a);
    if d.is_empty() {
        return utrim(k, a.to_vec());
    }
    let g = ugcd(k, a, &d);
    udivrem(k, a, &g).0
}

/// A zero-dimensional scheme in a chart where `y0` does not vanish.
#[derive(Clone, Debug)]
pub struct ZeroDim<K: Field> {
    /// `y = T x`.
    chart: LinearChange<K>,
    ideal: GradedIdeal<K>,
    degree: u64,
    /// For `j = 1..n`, a univariate `g_j(t)` with `g_j(yj/y0) = 0` on the scheme.
    elim: Vec<Vec<K::Elem>>,
}

fn is_empty_scheme<K: Field>(i: &GradedIdeal<K>) -> Result<bool, IdealError> {
    Ok(i.hilbert_polynomial()?.is_zero())
}

/// Candidate linear forms: coordinates first, then mixtures.
fn chart_candidates<K: Field>(k: &K, n: usize) -> Vec<Vec<K::Elem>> {
    let mut out = Vec::new();
    for i in 0..n {
        let mut e = vec![k.zero(); n];
        e[i] = k.one();
        out.push(e);
    }
    for c in 1..60i64 {
        let a = k.from_i64(c);
        if k.is_zero(&a) {
            continue;
        }
        out.push((0..n).map(|i| k.pow(&a, i as u64)).collect());
        out.push((0..n).map(|i| k.pow(&a, (i * i) as u64 + 1)).collect());
    }
    out
}

impl<K: Field> ZeroDim<K> {
    /// `None` if the scheme is empty.
    pub fn new(i: &GradedIdeal<K>) -> Result<Option<Self>, IdealError> {
        let k = i.field();
        let n = i.nvars();
        let hp = i.hilbert_polynomial()?;
        if hp.is_zero() {
            return Ok(None);
        }
        if hp.dimension() > 0 {
            return Err(IdealError::NotZeroDimensional(hp.dimension()));
        }
        let degree = hp.scheme_degree();
        let sat = if i.saturated() == Some(true) {
            i.clone()
        } else {
            i.saturate_irrelevant()
        };
        let mut chart = None;
        for h in chart_candidates(&k, n) {
            let hp_form = MultiPoly::linear(k, &h);
            if is_empty_scheme(&sat.add_generators(&[hp_form]))? {
                let rows = complete_basis(k, &[h], n);
                chart = Some(LinearChange::from_forms(k, rows).expect("completed basis"));
                break;
            }
        }
        let chart = chart.ok_or(IdealError::RootsUndetermined)?;
        let ideal = sat.apply_change(&chart);
        let mut elim = Vec::new();
        for j in 1..n {
            elim.push(binary_relation(&ideal, j, degree)?);
        }
        Ok(Some(ZeroDim {
            chart,
            ideal,
            degree,
            elim,
        }))
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// Points with coordinates in the base field.
    pub fn rational_points(&self) -> Result<Vec<ProjPoint<K>>, IdealError> {
        let k = self.ideal.field();
        let n = self.ideal.nvars();
        let mut partial: Vec<Vec<K::Elem>> = vec![vec![k.one()]];
        for g in &self.elim {
            let roots = k.univariate_roots(g).ok_or(IdealError::RootsUndetermined)?;
            let mut next = Vec::new();
            for p in &partial {
                for r in &roots {
                    let mut q = p.clone();
                    q.push(r.clone());
                    next.push(q);
                }
            }
            partial = next;
        }
        let gb = self.ideal.groebner();
        let inv = self.chart.inverse();
        let mut out = Vec::new();
        for y in partial {
            debug_assert_eq!(y.len(), n);
            if gb.iter().all(|g| k.is_zero(&g.eval(&y))) {
                out.push(ProjPoint::new(k, inv.apply_point(&y)).unwrap());
            }
        }
        Ok(out)
    }

    /// Radical, by adjoining the squarefree parts of the binary relations.
    pub fn radical(&self) -> GradedIdeal<K> {
        let k = self.ideal.field();
        let n = self.ideal.nvars();
        let mut extra = Vec::new();
        for (j, g) in self.elim.iter().enumerate() {
            let s = usqfree(&k, g);
            let d = s.len() - 1;
            let terms = s
                .iter()
                .enumerate()
                .map(|(e, c)| {
                    let mut ex = vec![0u32; n];
                    ex[0] = (d - e) as u32;
                    ex[j + 1] = e as u32;
                    (Monomial::from_exps(&ex), c.clone())
                })
                .collect();
            extra.push(MultiPoly::from_terms(k, n, terms));
        }
        self.ideal
            .add_generators(&extra)
            .apply_change(&self.chart.inverse())
    }
}

/// Lowest-degree relation between `y0` and `yj` modulo `ideal`.
fn binary_relation<K: Field>(
    ideal: &GradedIdeal<K>,
    j: usize,
    degree: u64,
) -> Result<Vec<K::Elem>, IdealError> {
    let k = ideal.field();
    let n = ideal.nvars();
    for d in 1..=(degree as u32 + 8) {
        let mut cols: Vec<HashMap<Monomial, K::Elem>> = Vec::new();
        let mut rows: Vec<Monomial> = Vec::new();
        let mut seen: HashMap<Monomial, usize> = HashMap::new();
        for e in 0..=d {
            let mut ex = vec![0u32; n];
            ex[0] = d - e;
            ex[j] = e;
            let m = MultiPoly::monomial(k, n, Monomial::from_exps(&ex), k.one());
            let r = ideal.reduce(&m);
            let mut col = HashMap::new();
            for (mm, c) in r.terms() {
                if !seen.contains_key(mm) {
                    seen.insert(*mm, rows.len());
                    rows.push(*mm);
                }
                col.insert(*mm, c.clone());
            }
            cols.push(col);
        }
        let a = Matrix::from_fn(k, rows.len(), (d + 1) as usize, |r, c| {
            cols[c].get(&rows[r]).cloned().unwrap_or_else(|| k.zero())
        });
        if let Some(v) = a.kernel().into_iter().next() {
            return Ok(utrim(&k, v));
        }
    }
    Err(IdealError::RootsUndetermined)
}

/// Rational points of a zero-dimensional (or empty) scheme.
pub fn rational_points<K: Field>(i: &GradedIdeal<K>) -> Result<Vec<ProjPoint<K>>, IdealError> {
    match ZeroDim::new(i)? {
        None => Ok(Vec::new()),
        Some(z) => z.rational_points(),
    }
}

/// Radical of a zero-dimensional (or empty) scheme.
pub fn radical<K: Field>(i: &GradedIdeal<K>) -> Result<GradedIdeal<K>, IdealError> {
    match ZeroDim::new(i)? {
        None => Ok(GradedIdeal::unit(i.field(), i.nvars())),
        Some(z) => Ok(z.radical()),
    }
}

/// Number of points over the algebraic closure.
pub fn point_count<K: Field>(i: &GradedIdeal<K>) -> Result<u64, IdealError> {
    Ok(radical(i)?.hilbert_polynomial()?.scheme_degree())
}

/// Degree (length) of a zero-dimensional scheme.
pub fn scheme_length<K: Field>(i: &GradedIdeal<K>) -> Result<u64, IdealError> {
    let hp = i.hilbert_polynomial()?;
    if hp.dimension() > 0 {
        return Err(IdealError::NotZeroDimensional(hp.dimension()));
    }
    Ok(hp.scheme_degree())
}

/// Change of coordinates moving `p` to `e0`.
pub fn chart_at<K: Field>(p: &ProjPoint<K>) -> LinearChange<K> {
    let k = p.field();
    let n = p.dim();
    // columns: p, then completing vectors; g maps p to e0 so g = B^{-1}.
    let rows = complete_basis(k, &[p.coords().to_vec()], n);
    let b = Matrix::from_rows(k, rows).transpose();
    LinearChange::new(b).expect("completed basis").inverse()
}

/// Length of the local ring of the scheme at a rational point, computed as
/// the stable value of `deg(J + m_p^k)`.
pub fn local_length<K: Field>(j: &GradedIdeal<K>, p: &ProjPoint<K>) -> Result<u64, IdealError> {
    let k = j.field();
    let n = j.nvars();
    let g = chart_at(p);
    let moved = j.apply_change(&g);
    let mut prev = None;
    for e in 1..64u32 {
        let mut gens = moved.generators().to_vec();
        // m_p^e in the chart: all degree-e monomials in y1..y_{n-1}
        for m in monomials_of_degree(n - 1, e) {
            let shifted = Monomial::from_exps(
                &std::iter::once(0).chain(m.exps(n - 1)).collect::<Vec<_>>(),
            );
            gens.push(MultiPoly::monomial(k, n, shifted, k.one()));
        }
        let len = scheme_length(&GradedIdeal::new(k, n, gens)?)?;
        if prev == Some(len) {
            return Ok(len);
        }
        prev = Some(len);
    }
    Err(IdealError::RootsUndetermined)
}

/// Evaluate a univariate polynomial (low degree first).
pub fn eval_univariate<K: Field>(k: &K, c: &[K::Elem], t: &K::Elem) -> K::Elem {
    horner(k, c, t)
}
