//! Homogeneous ideals with cached Groebner bases, and the usual
//! operations: sums, intersections, quotients, saturation, Hilbert data.

use std::collections::HashMap;
use std::sync::OnceLock;
use std::sync::atomic::{AtomicU32, Ordering};

use thiserror::Error;

use crate::change::LinearChange;
use crate::field::Field;
use crate::groebner::{groebner_terms, reduce_terms, Terms};
use crate::hilbert::{HilbertData, HilbertPoly};
use crate::linalg::{complete_basis, Matrix};
use crate::mono::{binomial, monomials_of_degree, var_mask, MonoOrder, Monomial, MAX_VARS};
use crate::poly::{degree_basis, MultiPoly, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("generator {index}: {source}")]
    Generator { index: usize, source: PolyError },
    #[error("generator {index} lives in {found} variables, expected {expected}")]
    WrongArity { index: usize, expected: usize, found: usize },
    #[error("Hilbert function not yet polynomial by degree {d_max}; raise --dmax")]
    InterpolationFailed { d_max: u32 },
    #[error("expected a zero-dimensional scheme, found dimension {0}")]
    NotZeroDimensional(i64),
    #[error("root search over this field could not be completed")]
    RootsUndetermined,
    #[error("polynomial is not in the ideal")]
    NotInIdeal,
    #[error("too many variables for an auxiliary ring")]
    TooManyVariables,
}

pub const DEFAULT_DMAX: u32 = 12;

static DMAX: AtomicU32 = AtomicU32::new(DEFAULT_DMAX);

/// Starting degree bound for Hilbert polynomial interpolation (process wide).
pub fn set_dmax(d: u32) {
    DMAX.store(d.max(4), Ordering::Relaxed);
}

pub fn dmax() -> u32 {
    DMAX.load(Ordering::Relaxed)
}

#[derive(Clone, Debug)]
pub struct GradedIdeal<K: Field> {
    field: K,
    nvars: usize,
    gens: Vec<MultiPoly<K>>,
    gb: OnceLock<Vec<MultiPoly<K>>>,
    saturated: Option<bool>,
}

impl<K: Field> GradedIdeal<K> {
    pub fn new(field: K, nvars: usize, gens: Vec<MultiPoly<K>>) -> Result<Self, IdealError> {
        let mut kept = Vec::new();
        for (index, g) in gens.into_iter().enumerate() {
            if g.nvars() != nvars {
                return Err(IdealError::WrongArity {
                    index,
                    expected: nvars,
                    found: g.nvars(),
                });
            }
            if g.is_zero() {
                continue;
            }
            g.homogeneous_degree()
                .map_err(|source| IdealError::Generator { index, source })?;
            kept.push(g);
        }
        Ok(Self::raw(field, nvars, kept))
    }

    fn raw(field: K, nvars: usize, gens: Vec<MultiPoly<K>>) -> Self {
        GradedIdeal {
            field,
            nvars,
            gens,
            gb: OnceLock::new(),
            saturated: None,
        }
    }

    /// Trusted constructor for generators already known to be homogeneous.
    pub(crate) fn from_homogeneous(field: K, nvars: usize, gens: Vec<MultiPoly<K>>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Self::raw(field, nvars, gens)
    }

    fn with_gb(field: K, nvars: usize, gb: Vec<MultiPoly<K>>) -> Self {
        let id = Self::raw(field, nvars, gb.clone());
        let _ = id.gb.set(gb);
        id
    }

    pub fn zero(field: K, nvars: usize) -> Self {
        Self::with_gb(field, nvars, Vec::new())
    }

    pub fn unit(field: K, nvars: usize) -> Self {
        Self::with_gb(field, nvars, vec![MultiPoly::one(field, nvars)])
    }

    /// The ideal generated by all variables.
    pub fn irrelevant(field: K, nvars: usize) -> Self {
        let vars: Vec<_> = (0..nvars).map(|i| MultiPoly::var(field, nvars, i)).collect();
        Self::with_gb(field, nvars, vars)
    }

    /// Ideal of the linear span of the given vectors.
    pub fn of_span(field: K, vectors: &[Vec<K::Elem>], nvars: usize) -> Self {
        let forms = crate::change::annihilator(field, vectors, nvars);
        let gens = forms.iter().map(|v| MultiPoly::linear(field, v)).collect();
        Self::from_homogeneous(field, nvars, gens)
    }

    pub fn field(&self) -> K {
        self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn generators(&self) -> &[MultiPoly<K>] {
        &self.gens
    }
    /// `Some(true)` when known to be saturated.
    pub fn saturated(&self) -> Option<bool> {
        self.saturated
    }
    pub fn generator_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string()).collect()
    }

    pub fn groebner(&self) -> &[MultiPoly<K>] {
        self.gb.get_or_init(|| {
            let terms = self.gens.iter().map(|g| g.terms().to_vec()).collect();
            groebner_terms(self.field, MonoOrder::DegRevLex, !0, terms)
                .into_iter()
                .map(|t| MultiPoly::from_sorted(self.field, self.nvars, t))
                .collect()
        })
    }

    pub fn is_unit(&self) -> bool {
        self.groebner()
            .first()
            .is_some_and(|g| g.leading_monomial() == Some(Monomial::ONE))
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.groebner().is_empty()
    }

    /// Normal form with respect to the reduced Groebner basis.
    pub fn reduce(&self, f: &MultiPoly<K>) -> MultiPoly<K> {
        let gb = self.groebner();
        let divs: Vec<&[(Monomial, K::Elem)]> = gb.iter().map(|g| g.terms()).collect();
        let r = reduce_terms(&self.field, MonoOrder::DegRevLex, f.terms().to_vec(), &divs);
        MultiPoly::from_sorted(self.field, self.nvars, r)
    }

    pub fn contains(&self, f: &MultiPoly<K>) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &GradedIdeal<K>) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn same_as(&self, other: &GradedIdeal<K>) -> bool {
        self.groebner() == other.groebner()
    }

    pub fn add_generators(&self, more: &[MultiPoly<K>]) -> Self {
        let mut g = self.gens.clone();
        g.extend(more.iter().filter(|p| !p.is_zero()).cloned());
        Self::from_homogeneous(self.field, self.nvars, g)
    }

    pub fn sum(&self, other: &GradedIdeal<K>) -> Self {
        self.add_generators(&other.gens)
    }

    pub fn product(&self, other: &GradedIdeal<K>) -> Self {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        Self::from_homogeneous(self.field, self.nvars, g)
    }

    pub fn power(&self, e: u32) -> Self {
        let mut acc = Self::unit(self.field, self.nvars);
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }

    pub fn apply_change(&self, g: &LinearChange<K>) -> Self {
        let s = g.substitution();
        let gens = self.gens.iter().map(|p| p.substitute(&s)).collect();
        let mut id = Self::from_homogeneous(self.field, self.nvars, gens);
        id.saturated = self.saturated;
        id
    }

    /// Permute variables: `x_i` becomes `x_{perm[i]}`.
    fn permuted(&self, perm: &[usize]) -> Vec<MultiPoly<K>> {
        self.gens
            .iter()
            .map(|g| g.rename_vars(perm, self.nvars))
            .collect()
    }

    pub fn intersect(&self, other: &GradedIdeal<K>) -> Self {
        if other.contains_ideal(self) {
            return self.clone();
        }
        if self.contains_ideal(other) {
            return other.clone();
        }
        let n = self.nvars;
        assert!(n < MAX_VARS, "no room for the elimination variable");
        let t = MultiPoly::var(self.field, n + 1, n);
        let mut gens: Vec<Terms<K>> = Vec::new();
        for a in &self.gens {
            gens.push((&t * &a.extend_vars(n + 1)).into_terms());
        }
        for b in &other.gens {
            let b1 = b.extend_vars(n + 1);
            gens.push((&b1 - &(&t * &b1)).into_terms());
        }
        let tmask = var_mask(&[n]);
        let gb = groebner_terms(self.field, MonoOrder::Eliminate { block: tmask }, !tmask, gens);
        let kept: Vec<MultiPoly<K>> = gb
            .into_iter()
            .filter(|g| g.iter().all(|(m, _)| m.exp(n) == 0))
            .map(|g| MultiPoly::from_sorted(self.field, n, g))
            .collect();
        let mut kept = kept;
        kept.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
        Self::with_gb(self.field, n, kept)
    }

    /// Coordinates in which the linear form `l` becomes the last variable.
    fn linear_chart(&self, l: &MultiPoly<K>) -> LinearChange<K> {
        let k = self.field;
        let n = self.nvars;
        let v: Vec<K::Elem> = (0..n).map(|i| l.coeff(Monomial::var(i))).collect();
        let mut rows = complete_basis(k, &[v], n);
        let first = rows.remove(0);
        rows.push(first);
        LinearChange::from_forms(k, rows).expect("completed basis")
    }

    /// `I : x_last` or `I : x_last^inf` via a degrevlex basis.
    fn last_var_quotient(gb: &[MultiPoly<K>], n: usize, saturate: bool) -> Vec<MultiPoly<K>> {
        let last = Monomial::var(n - 1);
        gb.iter()
            .map(|g| {
                let c = g.var_content(n - 1);
                let e = if saturate { c } else { c.min(1) };
                if e == 0 {
                    g.clone()
                } else {
                    let m = (0..e).fold(Monomial::ONE, |acc, _| acc.mul(last));
                    let t = g
                        .terms()
                        .iter()
                        .map(|(mm, a)| (m.div(*mm).unwrap(), a.clone()))
                        .collect();
                    MultiPoly::from_sorted(g.field(), n, t)
                }
            })
            .collect()
    }

    fn var_op(&self, i: usize, saturate: bool) -> Self {
        let n = self.nvars;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, n - 1);
        let moved = Self::from_homogeneous(self.field, n, self.permuted(&perm));
        let q = Self::last_var_quotient(moved.groebner(), n, saturate);
        let back = q.iter().map(|g| g.rename_vars(&perm, n)).collect();
        Self::from_homogeneous(self.field, n, back)
    }

    fn linear_op(&self, l: &MultiPoly<K>, saturate: bool) -> Self {
        let vars = l.variables_used();
        if vars.len() == 1 {
            return self.var_op(vars[0], saturate);
        }
        let g = self.linear_chart(l);
        let moved = self.apply_change(&g);
        let q = Self::last_var_quotient(moved.groebner(), self.nvars, saturate);
        Self::from_homogeneous(self.field, self.nvars, q).apply_change(&g.inverse())
    }

    /// `I : g`.
    pub fn quotient_by(&self, g: &MultiPoly<K>) -> Self {
        if g.is_zero() {
            return Self::unit(self.field, self.nvars);
        }
        match g.homogeneous_degree() {
            Ok(0) => return self.clone(),
            Ok(1) => return self.linear_op(g, false),
            _ => {}
        }
        let principal = Self::from_homogeneous(self.field, self.nvars, vec![g.clone()]);
        let inter = self.intersect(&principal);
        let gens = inter
            .groebner()
            .iter()
            .map(|h| h.div_exact(g).expect("element of (g) is divisible by g"))
            .collect();
        Self::from_homogeneous(self.field, self.nvars, gens)
    }

    /// `I : J = intersection of I : g over the generators g of J`.
    pub fn quotient(&self, j: &GradedIdeal<K>) -> Self {
        let mut acc: Option<Self> = None;
        for g in &j.gens {
            let q = self.quotient_by(g);
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q),
            });
        }
        acc.unwrap_or_else(|| Self::unit(self.field, self.nvars))
    }

    /// `I : g^inf`.
    pub fn saturate_by(&self, g: &MultiPoly<K>) -> Self {
        if let Ok(1) = g.homogeneous_degree() {
            return self.linear_op(g, true);
        }
        let mut cur = self.clone();
        loop {
            let next = cur.quotient_by(g);
            if next.same_as(&cur) {
                return cur;
            }
            cur = next;
        }
    }

    /// `I : J^inf` by iterated quotients.
    pub fn saturate(&self, j: &GradedIdeal<K>) -> Self {
        let mut cur = self.clone();
        loop {
            let next = cur.quotient(j);
            if next.same_as(&cur) {
                return cur;
            }
            cur = next;
        }
    }

    /// Saturation by the irrelevant ideal, as the intersection of the
    /// saturations by each variable.
    pub fn saturate_irrelevant(&self) -> Self {
        if self.saturated == Some(true) {
            return self.clone();
        }
        let mut acc: Option<Self> = None;
        for i in 0..self.nvars {
            let s = self.var_op(i, true);
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s),
            });
        }
        let mut out = acc.unwrap_or_else(|| self.clone());
        out.saturated = Some(true);
        out
    }

    /// Leading monomials of the Groebner basis.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner()
            .iter()
            .filter_map(|g| g.leading_monomial())
            .collect()
    }

    pub fn hilbert_function(&self, d: u32) -> u64 {
        let lms = self.leading_monomials();
        if lms.contains(&Monomial::ONE) {
            return 0;
        }
        if lms.is_empty() {
            return binomial(self.nvars as u64 + d as u64 - 1, d as u64);
        }
        monomials_of_degree(self.nvars, d)
            .into_iter()
            .filter(|m| !lms.iter().any(|l| l.divides(*m)))
            .count() as u64
    }

    /// Hilbert function on `0..=d_max` and the interpolated polynomial,
    /// checked on three extra degrees below the fitting window.
    pub fn hilbert(&self, d_max: u32) -> Result<HilbertData, IdealError> {
        let values: Vec<u64> = (0..=d_max).map(|d| self.hilbert_function(d)).collect();
        let k = self.nvars as i64;
        let lo = d_max as i64 - k + 1;
        if lo - 3 < 0 {
            return Err(IdealError::InterpolationFailed { d_max });
        }
        let xs: Vec<i64> = (lo..=d_max as i64).collect();
        let ys: Vec<i64> = xs.iter().map(|&x| values[x as usize] as i64).collect();
        let poly = HilbertPoly::interpolate(&xs, &ys);
        let agrees = |d: i64| poly.eval(d) == HilbertPoly::from_ints(&[values[d as usize] as i64]).eval(0);
        if !(lo - 3..lo).all(agrees) {
            return Err(IdealError::InterpolationFailed { d_max });
        }
        let mut reg = lo - 3;
        while reg > 0 && agrees(reg - 1) {
            reg -= 1;
        }
        Ok(HilbertData {
            values,
            polynomial: poly,
            regularity_bound: reg as u32,
        })
    }

    pub fn hilbert_polynomial(&self) -> Result<HilbertPoly, IdealError> {
        let start = dmax();
        let mut d = start;
        loop {
            match self.hilbert(d) {
                Ok(h) => return Ok(h.polynomial),
                Err(e) if d >= 4 * start => return Err(e),
                Err(_) => d += start,
            }
        }
    }

    /// `dim_k I_d`.
    pub fn dim_in_degree(&self, d: u32) -> u64 {
        binomial(self.nvars as u64 + d as u64 - 1, d as u64) - self.hilbert_function(d)
    }

    /// Canonical basis of `I_d`: one element `m - NF(m)` per non-standard monomial.
    pub fn degree_part(&self, d: u32) -> Vec<MultiPoly<K>> {
        let lms = self.leading_monomials();
        monomials_of_degree(self.nvars, d)
            .into_iter()
            .filter(|m| lms.iter().any(|l| l.divides(*m)))
            .map(|m| {
                let mp = MultiPoly::monomial(self.field, self.nvars, m, self.field.one());
                &mp - &self.reduce(&mp)
            })
            .collect()
    }

    /// Quotients `q_i` with `f = sum q_i g_i + r`, `r` the normal form.
    pub fn normal_form_with_quotients(
        &self,
        f: &MultiPoly<K>,
    ) -> Result<(Vec<MultiPoly<K>>, MultiPoly<K>), IdealError> {
        let k = self.field;
        let n = self.nvars;
        let r = self.reduce(f);
        let g = f - &r;
        let zeros = || vec![MultiPoly::zero(k, n); self.gens.len()];
        if g.is_zero() {
            return Ok((zeros(), r));
        }
        let d = g
            .homogeneous_degree()
            .map_err(|source| IdealError::Generator { index: 0, source })?;
        let (basis, index) = degree_basis(n, d);
        let mut cols: Vec<Vec<K::Elem>> = Vec::new();
        let mut labels: Vec<(usize, Monomial)> = Vec::new();
        for (gi, gen) in self.gens.iter().enumerate() {
            let dg = gen.homogeneous_degree().unwrap();
            if dg > d {
                continue;
            }
            for m in monomials_of_degree(n, d - dg) {
                cols.push(gen.mul_term(m, &k.one()).coeff_vector(&basis, &index));
                labels.push((gi, m));
            }
        }
        if cols.is_empty() {
            return Err(IdealError::NotInIdeal);
        }
        let a = Matrix::from_rows(k, cols).transpose();
        let x = a
            .solve(&g.coeff_vector(&basis, &index))
            .ok_or(IdealError::NotInIdeal)?;
        let mut q = zeros();
        for ((gi, m), c) in labels.into_iter().zip(x) {
            if !k.is_zero(&c) {
                q[gi] = &q[gi] + &MultiPoly::monomial(k, n, m, c);
            }
        }
        Ok((q, r))
    }

    /// Drop generators lying in the ideal of the others (lowest degree first).
    pub fn minimal_generators(&self) -> Vec<MultiPoly<K>> {
        let mut sorted: Vec<MultiPoly<K>> = self.gens.clone();
        sorted.sort_by_key(|g| g.homogeneous_degree().unwrap_or(0));
        let mut kept: Vec<MultiPoly<K>> = Vec::new();
        for g in sorted {
            let cur = Self::from_homogeneous(self.field, self.nvars, kept.clone());
            if !cur.contains(&g) {
                kept.push(g);
            }
        }
        kept
    }

    /// Same ideal, generated by a reduced basis of its low-degree parts
    /// up to the largest generator degree.
    pub fn tidy(&self) -> Self {
        let gens = self.minimal_generators();
        let mut out = Self::from_homogeneous(self.field, self.nvars, gens);
        out.saturated = self.saturated;
        if let Some(gb) = self.gb.get() {
            let _ = out.gb.set(gb.clone());
        }
        out
    }
}

/// Linear syzygies: vectors of linear forms `v` with `sum v_i f_i = 0`.
pub fn linear_syzygies<K: Field>(forms: &[MultiPoly<K>]) -> Vec<Vec<MultiPoly<K>>> {
    let Some(first) = forms.first() else { return Vec::new() };
    let k = first.field();
    let n = first.nvars();
    let d = forms
        .iter()
        .filter_map(|f| f.homogeneous_degree().ok())
        .max()
        .unwrap_or(0);
    let (basis, index) = degree_basis(n, d + 1);
    let mut cols = Vec::new();
    for f in forms {
        for j in 0..n {
            let c = if f.is_zero() {
                vec![k.zero(); basis.len()]
            } else {
                f.mul_term(Monomial::var(j), &k.one())
                    .coeff_vector(&basis, &index)
            };
            cols.push(c);
        }
    }
    let a = Matrix::from_rows(k, cols).transpose();
    a.kernel()
        .into_iter()
        .map(|v| {
            (0..forms.len())
                .map(|i| MultiPoly::linear(k, &v[i * n..(i + 1) * n]))
                .collect()
        })
        .collect()
}

/// Forms of degree `d` vanishing identically after substituting `images`
/// for the variables; a basis of the kernel of `f -> f(images)`.
pub fn forms_vanishing_on<K: Field>(
    field: K,
    nvars: usize,
    d: u32,
    images: &[MultiPoly<K>],
) -> Vec<MultiPoly<K>> {
    let (basis, _) = degree_basis(nvars, d);
    let mut columns: Vec<HashMap<Monomial, K::Elem>> = Vec::new();
    let mut all: Vec<Monomial> = Vec::new();
    let mut seen: HashMap<Monomial, usize> = HashMap::new();
    for m in &basis {
        let img = MultiPoly::monomial(field, nvars, *m, field.one()).substitute(images);
        let mut col = HashMap::new();
        for (mm, c) in img.terms() {
            if !seen.contains_key(mm) {
                seen.insert(*mm, all.len());
                all.push(*mm);
            }
            col.insert(*mm, c.clone());
        }
        columns.push(col);
    }
    let a = Matrix::from_fn(field, all.len(), basis.len(), |i, j| {
        columns[j].get(&all[i]).cloned().unwrap_or_else(|| field.zero())
    });
    let ker = a.kernel();
    let mut rows = crate::linalg::row_space(field, &ker);
    rows.reverse();
    rows.into_iter()
        .map(|v| MultiPoly::from_coeff_vector(field, nvars, &basis, &v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_poly;

    fn k() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    fn ideal(n: usize, gens: &[&str]) -> GradedIdeal<PrimeField> {
        let g = gens.iter().map(|s| parse_poly(k(), n, s).unwrap()).collect();
        GradedIdeal::new(k(), n, g).unwrap()
    }

    #[test]
    fn quotients_of_monomial_ideals() {
        let i = ideal(3, &["x0*x1"]);
        let q = i.quotient(&ideal(3, &["x0"]));
        assert!(q.same_as(&ideal(3, &["x1"])));
        let i2 = ideal(3, &["x0^2"]);
        assert!(i2.quotient(&ideal(3, &["x0"])).same_as(&ideal(3, &["x0"])));
        // quotient by a non-linear form goes through intersection
        let i3 = ideal(3, &["x0*x1^2 + x0*x2^2"]);
        let q3 = i3.quotient_by(&parse_poly(k(), 3, "x1^2 + x2^2").unwrap());
        assert!(q3.same_as(&ideal(3, &["x0"])));
    }

    #[test]
    fn intersection_of_coordinate_lines() {
        let a = ideal(3, &["x0", "x1"]);
        let b = ideal(3, &["x0", "x2"]);
        let c = a.intersect(&b);
        assert!(c.same_as(&ideal(3, &["x0", "x1*x2"])));
    }

    #[test]
    fn saturation_removes_irrelevant_component() {
        let i = ideal(3, &["x0^2", "x0*x1", "x0*x2"]);
        let s = i.saturate_irrelevant();
        assert!(s.same_as(&ideal(3, &["x0"])));
        let s2 = i.saturate(&GradedIdeal::irrelevant(k(), 3));
        assert!(s2.same_as(&s));
    }

    #[test]
    fn hypersurface_hilbert_polynomial() {
        let f = ideal(5, &["x0^3 + x1^3 + x2^3 + x3^3 + x4^3"]);
        let h = f.hilbert(12).unwrap();
        for m in 0..=12u64 {
            let want = binomial(m + 4, 4) - binomial(m + 1, 4);
            assert_eq!(h.values[m as usize], want);
        }
        assert_eq!(h.polynomial.scheme_degree(), 3);
        assert_eq!(h.polynomial.dimension(), 3);
    }

    #[test]
    fn twisted_cubic_syzygies() {
        let fs: Vec<_> = ["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]
            .iter()
            .map(|s| parse_poly(k(), 4, s).unwrap())
            .collect();
        assert_eq!(linear_syzygies(&fs).len(), 2);
    }

    #[test]
    fn quotients_reproduce_membership() {
        let i = ideal(3, &["x0*x1", "x1*x2"]);
        let f = parse_poly(k(), 3, "x0^2*x1 + 3*x1*x2^2 + x2^3").unwrap();
        let (q, r) = i.normal_form_with_quotients(&f).unwrap();
        let mut back = r.clone();
        for (qi, gi) in q.iter().zip(i.generators()) {
            back = &back + &(qi * gi);
        }
        assert_eq!(back, f);
        assert_eq!(r, parse_poly(k(), 3, "x2^3").unwrap());
    }

    #[test]
    fn implicitize_conic() {
        // (s^2, st, t^2) satisfies x0 x2 - x1^2
        let s = |i| MultiPoly::var(k(), 2, i);
        let images = vec![&s(0) * &s(0), &s(0) * &s(1), &s(1) * &s(1)];
        let q = forms_vanishing_on(k(), 3, 2, &images);
        assert_eq!(q.len(), 1);
        assert!(q[0].proportional_to(&parse_poly(k(), 3, "x0*x2 - x1^2").unwrap()).is_some());
    }
}
