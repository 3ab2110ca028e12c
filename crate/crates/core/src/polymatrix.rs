//! Matrices of polynomials: determinants, Pfaffians and the linear
//! skew-symmetric matrices that carry Pfaffian representations.

use std::collections::HashMap;

use thiserror::Error;

use crate::change::{apply_change, LinearChange};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::parse::{format_matrix, parse_matrix, ParseError};
use crate::poly::MultiPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("entry ({0},{1}) breaks skew symmetry")]
    NotSkew(usize, usize),
    #[error("entry ({0},{1}) is not a linear form")]
    NotLinear(usize, usize),
    #[error("Pfaffian needs even size, got {0}")]
    OddSize(usize),
    #[error("expected size {expected}, got {found}")]
    WrongSize { expected: usize, found: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<K: Field> {
    field: K,
    nvars: usize,
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly<K>>,
}

impl<K: Field> PolyMatrix<K> {
    pub fn zeros(field: K, nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            field,
            nvars,
            rows,
            cols,
            entries: vec![MultiPoly::zero(field, nvars); rows * cols],
        }
    }

    pub fn from_rows(field: K, nvars: usize, rows: Vec<Vec<MultiPoly<K>>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        PolyMatrix {
            field,
            nvars,
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn parse(field: K, nvars: usize, text: &str) -> Result<Self, MatrixError> {
        Ok(Self::from_rows(field, nvars, parse_matrix(field, nvars, text)?))
    }

    pub fn field(&self) -> K {
        self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &MultiPoly<K> {
        &self.entries[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: MultiPoly<K>) {
        self.entries[i * self.cols + j] = v;
    }
    pub fn to_rows(&self) -> Vec<Vec<MultiPoly<K>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }
    pub fn to_text(&self) -> String {
        format_matrix(&self.to_rows())
    }
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.field, self.nvars, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, o: &PolyMatrix<K>) -> PolyMatrix<K> {
        assert_eq!(self.cols, o.rows);
        let mut m = Self::zeros(self.field, self.nvars, self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = MultiPoly::zero(self.field, self.nvars);
                for t in 0..self.cols {
                    acc = &acc + &(self.get(i, t) * o.get(t, j));
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    /// Multiply by a constant matrix on the right.
    pub fn mul_const(&self, c: &Matrix<K>) -> PolyMatrix<K> {
        let k = self.field;
        let cm = PolyMatrix::from_rows(
            k,
            self.nvars,
            c.to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(|a| MultiPoly::constant(k, self.nvars, a)).collect())
                .collect(),
        );
        self.mul(&cm)
    }

    /// `P^T self P` for a constant `P`.
    pub fn congruence(&self, p: &Matrix<K>) -> PolyMatrix<K> {
        let k = self.field;
        let pt = PolyMatrix::from_rows(
            k,
            self.nvars,
            p.transpose()
                .to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(|a| MultiPoly::constant(k, self.nvars, a)).collect())
                .collect(),
        );
        pt.mul(&self.mul_const(p))
    }

    pub fn eval(&self, pt: &[K::Elem]) -> Matrix<K> {
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| self.get(i, j).eval(pt))
    }

    pub fn map_entries(&self, f: impl Fn(&MultiPoly<K>) -> MultiPoly<K>) -> Self {
        let entries: Vec<MultiPoly<K>> = self.entries.iter().map(f).collect();
        let nvars = entries.first().map_or(self.nvars, |e| e.nvars());
        PolyMatrix {
            field: self.field,
            nvars,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Entrywise `e o g^{-1}`.
    pub fn apply_change(&self, g: &LinearChange<K>) -> Self {
        let s = g.substitution();
        self.map_entries(|e| e.substitute(&s))
    }

    pub fn is_skew(&self) -> bool {
        self.first_skew_violation().is_none()
    }

    fn first_skew_violation(&self) -> Option<(usize, usize)> {
        if self.rows != self.cols {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            if !self.get(i, i).is_zero() {
                return Some((i, i));
            }
            for j in i + 1..self.cols {
                if *self.get(i, j) != -self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Determinant by fraction-free elimination with exact division.
    pub fn det(&self) -> Result<MultiPoly<K>, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut sign = false;
        let mut prev = MultiPoly::one(self.field, self.nvars);
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = !sign;
                    }
                    None => return Ok(MultiPoly::zero(self.field, self.nvars)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign { -&d } else { d })
    }

    /// Nonzero `r x r` minors, rows and columns in lexicographic subset order.
    pub fn minors(&self, r: usize) -> Vec<MultiPoly<K>> {
        let rs = subsets(self.rows, r);
        let cs = subsets(self.cols, r);
        let mut out = Vec::new();
        for ri in &rs {
            for ci in &cs {
                let sub = PolyMatrix::from_rows(
                    self.field,
                    self.nvars,
                    ri.iter()
                        .map(|&i| ci.iter().map(|&j| self.get(i, j).clone()).collect())
                        .collect(),
                );
                let d = sub.det().expect("square");
                if !d.is_zero() {
                    out.push(d);
                }
            }
        }
        out
    }

    /// Pfaffian of a skew-symmetric matrix of even size.
    pub fn pfaffian(&self) -> Result<MultiPoly<K>, MatrixError> {
        if let Some((i, j)) = self.first_skew_violation() {
            return Err(if self.rows != self.cols {
                MatrixError::NotSquare(self.rows, self.cols)
            } else {
                MatrixError::NotSkew(i, j)
            });
        }
        if self.rows % 2 == 1 {
            return Err(MatrixError::OddSize(self.rows));
        }
        let full = if self.rows == 0 { 0 } else { (1u32 << self.rows) - 1 };
        let mut memo = HashMap::new();
        Ok(self.pf_subset(full, &mut memo))
    }

    /// Pfaffian of the principal submatrix on the index set `mask`.
    fn pf_subset(&self, mask: u32, memo: &mut HashMap<u32, MultiPoly<K>>) -> MultiPoly<K> {
        if mask == 0 {
            return MultiPoly::one(self.field, self.nvars);
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut acc = MultiPoly::zero(self.field, self.nvars);
        let mut pos = 0;
        for j in 0..self.rows {
            if rest & (1 << j) == 0 {
                continue;
            }
            let e = self.get(i, j);
            if !e.is_zero() {
                let sub = self.pf_subset(rest & !(1 << j), memo);
                let t = e * &sub;
                acc = if pos % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            pos += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// Signed Pfaffians of the principal minors with row/column `i` removed:
    /// `p_i = (-1)^i Pf(N_{hat i})` for `i = 0..n`.
    pub fn pfaffian_complements(&self) -> Result<Vec<MultiPoly<K>>, MatrixError> {
        if let Some((i, j)) = self.first_skew_violation() {
            return Err(MatrixError::NotSkew(i, j));
        }
        if self.rows % 2 == 0 {
            return Err(MatrixError::WrongSize {
                expected: self.rows + 1,
                found: self.rows,
            });
        }
        let full = (1u32 << self.rows) - 1;
        let mut memo = HashMap::new();
        Ok((0..self.rows)
            .map(|i| {
                let p = self.pf_subset(full & !(1 << i), &mut memo);
                if i % 2 == 0 {
                    p
                } else {
                    -&p
                }
            })
            .collect())
    }
}

/// A skew-symmetric matrix whose entries are linear forms (or zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewLinearMatrix<K: Field>(PolyMatrix<K>);

impl<K: Field> SkewLinearMatrix<K> {
    pub fn new(m: PolyMatrix<K>) -> Result<Self, MatrixError> {
        if m.rows != m.cols {
            return Err(MatrixError::NotSquare(m.rows, m.cols));
        }
        if let Some((i, j)) = m.first_skew_violation() {
            return Err(MatrixError::NotSkew(i, j));
        }
        for i in 0..m.rows {
            for j in 0..m.cols {
                let e = m.get(i, j);
                if !e.is_zero() && e.homogeneous_degree().ok() != Some(1) {
                    return Err(MatrixError::NotLinear(i, j));
                }
            }
        }
        Ok(SkewLinearMatrix(m))
    }

    pub fn parse(field: K, nvars: usize, text: &str) -> Result<Self, MatrixError> {
        Self::new(PolyMatrix::parse(field, nvars, text)?)
    }

    pub fn size(&self) -> usize {
        self.0.rows
    }
    pub fn matrix(&self) -> &PolyMatrix<K> {
        &self.0
    }
    pub fn into_matrix(self) -> PolyMatrix<K> {
        self.0
    }
    pub fn pfaffian(&self) -> Result<MultiPoly<K>, MatrixError> {
        self.0.pfaffian()
    }
    pub fn pfaffian_complements(&self) -> Result<Vec<MultiPoly<K>>, MatrixError> {
        self.0.pfaffian_complements()
    }

    /// Border an `n x n` matrix by the column `c` (and row `-c^T`).
    pub fn border(&self, c: &[MultiPoly<K>]) -> Result<Self, MatrixError> {
        let n = self.size();
        if c.len() != n {
            return Err(MatrixError::WrongSize {
                expected: n,
                found: c.len(),
            });
        }
        let mut m = PolyMatrix::zeros(self.0.field, self.0.nvars, n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.0.get(i, j).clone());
            }
            m.set(i, n, c[i].clone());
            m.set(n, i, -&c[i]);
        }
        Self::new(m)
    }

    /// Scale the last row and column by `s`, which scales the Pfaffian by `s`.
    pub fn scale_last(&self, s: &K::Elem) -> Self {
        let n = self.size();
        let mut m = self.0.clone();
        for i in 0..n {
            let a = m.get(i, n - 1).scale(s);
            m.set(i, n - 1, a.clone());
            m.set(n - 1, i, -&a);
        }
        SkewLinearMatrix(m)
    }

    pub fn apply_change(&self, g: &LinearChange<K>) -> Self {
        SkewLinearMatrix(self.0.apply_change(g))
    }

    /// Substitute linear forms for the variables (entries stay linear).
    pub fn substitute(&self, images: &[MultiPoly<K>]) -> Self {
        SkewLinearMatrix(self.0.map_entries(|e| e.substitute(images)))
    }

    pub fn congruence(&self, p: &Matrix<K>) -> Self {
        SkewLinearMatrix(self.0.congruence(p))
    }
}

/// Apply `apply_change` to the entries of a vector of polynomials.
pub fn change_all<K: Field>(v: &[MultiPoly<K>], g: &LinearChange<K>) -> Vec<MultiPoly<K>> {
    v.iter().map(|p| apply_change(p, g)).collect()
}

/// All `k`-element subsets of `0..n`, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_poly;
    use crate::Rng64;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn random_linear(k: PrimeField, n: usize, rng: &mut Rng64) -> MultiPoly<PrimeField> {
        let c: Vec<u32> = (0..n).map(|_| k.random(rng)).collect();
        MultiPoly::linear(k, &c)
    }

    fn random_skew(k: PrimeField, size: usize, n: usize, seed: u64) -> PolyMatrix<PrimeField> {
        let mut rng = Rng64::seed_from_u64(seed);
        let mut m = PolyMatrix::zeros(k, n, size, size);
        for i in 0..size {
            for j in i + 1..size {
                let l = random_linear(k, n, &mut rng);
                m.set(j, i, -&l);
                m.set(i, j, l);
            }
        }
        m
    }

    #[test]
    fn small_pfaffians() {
        let k = PrimeField::new(101).unwrap();
        let m = PolyMatrix::parse(k, 6, "0; x0; x1; x2\n-x0; 0; x3; x4\n-x1; -x3; 0; x5\n-x2; -x4; -x5; 0").unwrap();
        let want = parse_poly(k, 6, "x0*x5 - x1*x4 + x2*x3").unwrap();
        assert_eq!(m.pfaffian().unwrap(), want);
        assert!(matches!(m.det(), Ok(ref d) if *d == want.pow(2)));
        let odd = PolyMatrix::parse(k, 1, "0; x0; 0\n-x0; 0; 0\n0; 0; 0").unwrap();
        assert_eq!(odd.pfaffian(), Err(MatrixError::OddSize(3)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn pfaffian_squared_is_det(seed in 0u64..10_000) {
            let k = PrimeField::new(101).unwrap();
            let m = random_skew(k, 4, 3, seed);
            let pf = m.pfaffian().unwrap();
            prop_assert_eq!(pf.pow(2), m.det().unwrap());
        }

        #[test]
        fn bordering_expands_along_last_column(seed in 0u64..10_000) {
            let k = PrimeField::new(101).unwrap();
            let n = SkewLinearMatrix::new(random_skew(k, 5, 3, seed)).unwrap();
            let mut rng = Rng64::seed_from_u64(seed ^ 77);
            let c: Vec<_> = (0..5).map(|_| random_linear(k, 3, &mut rng)).collect();
            let p = n.pfaffian_complements().unwrap();
            let m = n.border(&c).unwrap();
            let mut want = MultiPoly::zero(k, 3);
            for (ci, pi) in c.iter().zip(&p) {
                want = &want + &(ci * pi);
            }
            prop_assert_eq!(m.pfaffian().unwrap(), want);
            // rows of N are syzygies of the complements
            for i in 0..5 {
                let mut s = MultiPoly::zero(k, 3);
                for j in 0..5 {
                    s = &s + &(n.matrix().get(i, j) * &p[j]);
                }
                prop_assert!(s.is_zero());
            }
        }
    }
}
