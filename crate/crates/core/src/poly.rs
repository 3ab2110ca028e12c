//! Sparse multivariate polynomials over a [`Field`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::field::Field;
use crate::mono::{monomials_of_degree, MonoOrder, Monomial, MAX_VARS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial is not homogeneous: found degrees {0} and {1}")]
    Inhomogeneous(u32, u32),
    #[error("the zero polynomial has no degree")]
    Zero,
    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: u32, found: u32 },
    #[error("expected {expected} variables, found {found}")]
    WrongArity { expected: usize, found: usize },
}

/// Terms are kept sorted by decreasing degrevlex with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly<K: Field> {
    field: K,
    nvars: usize,
    terms: Vec<(Monomial, K::Elem)>,
}

pub(crate) fn merge_terms<K: Field>(
    k: &K,
    a: &[(Monomial, K::Elem)],
    b: &[(Monomial, K::Elem)],
    order: MonoOrder,
) -> Vec<(Monomial, K::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp(a[i].0, b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let c = k.add(&a[i].1, &b[j].1);
                if !k.is_zero(&c) {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Sort by `order` (descending), combine equal monomials, drop zeros.
pub(crate) fn normalize_terms<K: Field>(
    k: &K,
    mut t: Vec<(Monomial, K::Elem)>,
    order: MonoOrder,
) -> Vec<(Monomial, K::Elem)> {
    t.sort_by(|a, b| order.cmp(b.0, a.0));
    let mut out: Vec<(Monomial, K::Elem)> = Vec::with_capacity(t.len());
    for (m, c) in t {
        match out.last_mut() {
            Some(last) if last.0 == m => last.1 = k.add(&last.1, &c),
            _ => out.push((m, c)),
        }
    }
    out.retain(|(_, c)| !k.is_zero(c));
    out
}

impl<K: Field> MultiPoly<K> {
    pub fn zero(field: K, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        MultiPoly {
            field,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: K, nvars: usize, c: K::Elem) -> Self {
        Self::monomial(field, nvars, Monomial::ONE, c)
    }

    pub fn one(field: K, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: K, nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        Self::monomial(field, nvars, Monomial::var(i), field.one())
    }

    pub fn monomial(field: K, nvars: usize, m: Monomial, c: K::Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        if !field.is_zero(&c) {
            p.terms.push((m, c));
        }
        p
    }

    pub fn from_terms(field: K, nvars: usize, terms: Vec<(Monomial, K::Elem)>) -> Self {
        debug_assert!(terms
            .iter()
            .all(|(m, _)| m.max_var().map_or(true, |v| v < nvars)));
        MultiPoly {
            field,
            nvars,
            terms: normalize_terms(&field, terms, MonoOrder::DegRevLex),
        }
    }

    /// Linear form `sum c[i] x_i`.
    pub fn linear(field: K, c: &[K::Elem]) -> Self {
        let t = c
            .iter()
            .enumerate()
            .map(|(i, a)| (Monomial::var(i), a.clone()))
            .collect();
        Self::from_terms(field, c.len(), t)
    }

    /// Trusted constructor: terms already sorted and nonzero.
    pub(crate) fn from_sorted(field: K, nvars: usize, terms: Vec<(Monomial, K::Elem)>) -> Self {
        MultiPoly {
            field,
            nvars,
            terms,
        }
    }

    pub fn field(&self) -> K {
        self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn terms(&self) -> &[(Monomial, K::Elem)] {
        &self.terms
    }
    pub fn into_terms(self) -> Vec<(Monomial, K::Elem)> {
        self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn leading(&self) -> Option<&(Monomial, K::Elem)> {
        self.terms.first()
    }
    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }
    pub fn leading_coeff(&self) -> Option<&K::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    /// Degree if every term has the same degree; `None` for zero.
    pub fn homogeneous_degree(&self) -> Result<u32, PolyError> {
        let d = self.terms.first().ok_or(PolyError::Zero)?.0.degree();
        for (m, _) in &self.terms {
            if m.degree() != d {
                return Err(PolyError::Inhomogeneous(d, m.degree()));
            }
        }
        Ok(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_ok()
    }

    pub fn coeff(&self, m: Monomial) -> K::Elem {
        match self.terms.binary_search_by(|t| m.cmp(&t.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        let k = &self.field;
        if k.is_zero(c) {
            return Self::zero(self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, k.mul(a, c))).collect();
        Self::from_sorted(self.field, self.nvars, terms)
    }

    pub fn mul_term(&self, m: Monomial, c: &K::Elem) -> Self {
        let k = &self.field;
        if k.is_zero(c) {
            return Self::zero(self.field, self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(n, a)| (n.mul(m), k.mul(a, c)))
            .collect();
        Self::from_sorted(self.field, self.nvars, terms)
    }

    /// Scale so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&self.field.inv(c).unwrap()),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field, self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, pt: &[K::Elem]) -> K::Elem {
        let k = &self.field;
        assert!(pt.len() >= self.nvars);
        let mut cache: HashMap<(usize, u32), K::Elem> = HashMap::new();
        let mut acc = k.zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, x) in pt.iter().enumerate().take(self.nvars) {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                let pw = cache
                    .entry((i, e))
                    .or_insert_with(|| k.pow(x, e as u64))
                    .clone();
                v = k.mul(&v, &pw);
            }
            acc = k.add(&acc, &v);
        }
        acc
    }

    /// Replace `x_i` by `images[i]`; the result lives in the images' ring.
    pub fn substitute(&self, images: &[MultiPoly<K>]) -> MultiPoly<K> {
        assert_eq!(images.len(), self.nvars);
        let n = images.first().map_or(0, |p| p.nvars);
        let mut powers: HashMap<(usize, u32), MultiPoly<K>> = HashMap::new();
        let mut acc: Vec<(Monomial, K::Elem)> = Vec::new();
        for (m, c) in &self.terms {
            let mut v = MultiPoly::constant(self.field, n, c.clone());
            for (i, img) in images.iter().enumerate() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                let pw = powers.entry((i, e)).or_insert_with(|| img.pow(e));
                v = &v * pw;
            }
            acc.extend(v.terms);
        }
        MultiPoly::from_terms(self.field, n, acc)
    }

    pub fn partial(&self, i: usize) -> Self {
        let k = &self.field;
        let t = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(i) > 0)
            .map(|(m, c)| {
                let e = m.exp(i);
                (m.with_exp(i, e - 1), k.mul(c, &k.from_i64(e as i64)))
            })
            .collect();
        Self::from_terms(self.field, self.nvars, t)
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// Same polynomial viewed in a ring with `n >= nvars` variables.
    pub fn extend_vars(&self, n: usize) -> Self {
        assert!(n >= self.nvars && n <= MAX_VARS);
        Self::from_sorted(self.field, n, self.terms.clone())
    }

    /// Drop to `n` variables; panics if a dropped variable occurs.
    pub fn restrict_vars(&self, n: usize) -> Self {
        assert!(self
            .terms
            .iter()
            .all(|(m, _)| m.max_var().map_or(true, |v| v < n)));
        Self::from_sorted(self.field, n, self.terms.clone())
    }

    /// Rename variables: `x_i` becomes `x_{map[i]}` in an `n`-variable ring.
    pub fn rename_vars(&self, map: &[usize], n: usize) -> Self {
        let t = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (i, &j) in map.iter().enumerate() {
                    e[j] += m.exp(i);
                }
                (Monomial::from_exps(&e), c.clone())
            })
            .collect();
        Self::from_terms(self.field, n, t)
    }

    pub fn map_field<L: Field>(&self, target: L, f: impl Fn(&K::Elem) -> L::Elem) -> MultiPoly<L> {
        let t = self.terms.iter().map(|(m, c)| (*m, f(c))).collect();
        MultiPoly::from_terms(target, self.nvars, t)
    }

    /// Coefficients in the extension field.
    pub fn embed(&self, ext: K::Ext) -> MultiPoly<K::Ext> {
        let k = self.field;
        self.map_field(ext, |c| k.embed(&ext, c))
    }

    /// Coefficient vector against a monomial basis.
    pub fn coeff_vector(&self, basis: &[Monomial], index: &HashMap<Monomial, usize>) -> Vec<K::Elem> {
        let mut v = vec![self.field.zero(); basis.len()];
        for (m, c) in &self.terms {
            let i = *index.get(m).expect("monomial outside basis");
            v[i] = c.clone();
        }
        v
    }

    /// Inverse of [`coeff_vector`](Self::coeff_vector).
    pub fn from_coeff_vector(field: K, nvars: usize, basis: &[Monomial], v: &[K::Elem]) -> Self {
        let t = basis.iter().cloned().zip(v.iter().cloned()).collect();
        Self::from_terms(field, nvars, t)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &MultiPoly<K>) -> Option<MultiPoly<K>> {
        let k = self.field;
        let (dm, dc) = d.leading()?.clone();
        let dinv = k.inv(&dc).unwrap();
        let mut rem = self.clone();
        let mut quo: Vec<(Monomial, K::Elem)> = Vec::new();
        while let Some((m, c)) = rem.leading().cloned() {
            let q = dm.div(m)?;
            let qc = k.mul(&c, &dinv);
            rem = &rem - &d.mul_term(q, &qc);
            quo.push((q, qc));
        }
        Some(MultiPoly::from_terms(k, self.nvars, quo))
    }

    /// Largest power of `x_i` dividing every term.
    pub fn var_content(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(i)).min().unwrap_or(0)
    }

    pub fn variables_used(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.iter().any(|(m, _)| m.exp(i) > 0))
            .collect()
    }

    /// Whether `self = c * other` for some nonzero constant `c`; returns `c`.
    pub fn proportional_to(&self, other: &Self) -> Option<K::Elem> {
        let k = &self.field;
        let (a, b) = (self.leading_coeff()?, other.leading_coeff()?);
        let c = k.div(a, b);
        if other.scale(&c) == *self {
            Some(c)
        } else {
            None
        }
    }
}

fn var_name(i: usize) -> String {
    format!("x{i}")
}

pub(crate) fn fmt_monomial(m: Monomial, n: usize) -> String {
    let mut parts = Vec::new();
    for i in 0..n {
        match m.exp(i) {
            0 => {}
            1 => parts.push(var_name(i)),
            e => parts.push(format!("{}^{e}", var_name(i))),
        }
    }
    parts.join("*")
}

impl<K: Field> fmt::Display for MultiPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = &self.field;
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = k.is_negative(c);
            let a = if neg { k.neg(c) } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = fmt_monomial(*m, self.nvars);
            if mono.is_empty() {
                write!(f, "{}", k.fmt_elem(&a))?;
            } else if k.is_one(&a) {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", k.fmt_elem(&a))?;
            }
        }
        Ok(())
    }
}

impl<K: Field> Add for &MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn add(self, o: &MultiPoly<K>) -> MultiPoly<K> {
        debug_assert_eq!(self.nvars, o.nvars);
        let t = merge_terms(&self.field, &self.terms, &o.terms, MonoOrder::DegRevLex);
        MultiPoly::from_sorted(self.field, self.nvars.max(o.nvars), t)
    }
}

impl<K: Field> Neg for &MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn neg(self) -> MultiPoly<K> {
        let k = &self.field;
        let t = self.terms.iter().map(|(m, c)| (*m, k.neg(c))).collect();
        MultiPoly::from_sorted(self.field, self.nvars, t)
    }
}

impl<K: Field> Sub for &MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn sub(self, o: &MultiPoly<K>) -> MultiPoly<K> {
        self + &(-o)
    }
}

impl<K: Field> Mul for &MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn mul(self, o: &MultiPoly<K>) -> MultiPoly<K> {
        let k = &self.field;
        let n = self.nvars.max(o.nvars);
        if self.is_zero() || o.is_zero() {
            return MultiPoly::zero(self.field, n);
        }
        let mut acc: HashMap<Monomial, K::Elem> = HashMap::with_capacity(self.len() * o.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let v = k.mul(ca, cb);
                acc.entry(a.mul(*b))
                    .and_modify(|x| *x = k.add(x, &v))
                    .or_insert(v);
            }
        }
        MultiPoly::from_terms(self.field, n, acc.into_iter().collect())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl<K: Field> $tr for MultiPoly<K> {
            type Output = MultiPoly<K>;
            fn $f(self, o: MultiPoly<K>) -> MultiPoly<K> {
                (&self).$f(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// A homogeneous polynomial together with its degree. The zero form is
/// allowed but must be built with an explicit degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousForm<K: Field> {
    poly: MultiPoly<K>,
    degree: u32,
}

impl<K: Field> HomogeneousForm<K> {
    pub fn new(poly: MultiPoly<K>) -> Result<Self, PolyError> {
        let degree = poly.homogeneous_degree()?;
        Ok(HomogeneousForm { poly, degree })
    }

    pub fn with_degree(poly: MultiPoly<K>, degree: u32) -> Result<Self, PolyError> {
        if !poly.is_zero() {
            let d = poly.homogeneous_degree()?;
            if d != degree {
                return Err(PolyError::WrongDegree {
                    expected: degree,
                    found: d,
                });
            }
        }
        Ok(HomogeneousForm { poly, degree })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn poly(&self) -> &MultiPoly<K> {
        &self.poly
    }
    pub fn into_poly(self) -> MultiPoly<K> {
        self.poly
    }

    pub fn partial(&self, i: usize) -> HomogeneousForm<K> {
        HomogeneousForm {
            poly: self.poly.partial(i),
            degree: self.degree.saturating_sub(1),
        }
    }
}

impl<K: Field> std::ops::Deref for HomogeneousForm<K> {
    type Target = MultiPoly<K>;
    fn deref(&self) -> &MultiPoly<K> {
        &self.poly
    }
}

impl<K: Field> fmt::Display for HomogeneousForm<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// Index map for the degree-`d` monomials in `n` variables.
pub fn degree_basis(n: usize, d: u32) -> (Vec<Monomial>, HashMap<Monomial, usize>) {
    let b = monomials_of_degree(n, d);
    let idx = b.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    (b, idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn k() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn arithmetic_and_display() {
        let f = k();
        let x = |i| MultiPoly::var(f, 3, i);
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        assert_eq!(p.to_string(), "x0^2 + 100*x1^2");
        assert_eq!(p.homogeneous_degree().unwrap(), 2);
        let q = p.div_exact(&(&x(0) + &x(1))).unwrap();
        assert_eq!(q, &x(0) - &x(1));
        assert!(p.div_exact(&x(2)).is_none());
    }

    #[test]
    fn substitution_and_partials() {
        let f = k();
        let x = |i| MultiPoly::var(f, 2, i);
        let p = &x(0).pow(3) + &(&x(0) * &x(1));
        let d0 = p.partial(0);
        assert_eq!(d0, &x(0).pow(2).scale(&3) + &x(1));
        let s = p.substitute(&[x(1), x(0)]);
        assert_eq!(s, &x(1).pow(3) + &(&x(0) * &x(1)));
        assert_eq!(p.eval(&[2, 5]), 18);
    }

    #[test]
    fn zero_form_needs_degree() {
        let f = k();
        let z = MultiPoly::zero(f, 3);
        assert_eq!(HomogeneousForm::new(z.clone()), Err(PolyError::Zero));
        assert_eq!(HomogeneousForm::with_degree(z, 2).unwrap().degree(), 2);
    }
}
