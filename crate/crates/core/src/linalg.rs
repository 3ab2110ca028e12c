//! Dense exact linear algebra over a [`Field`].

use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

impl<K: Field> Matrix<K> {
    pub fn zeros(field: K, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: K, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: K, rows: Vec<Vec<K::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix {
            field,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(field: K, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> K {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &K::Elem {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: K::Elem) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[K::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn column(&self, j: usize) -> Vec<K::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn to_rows(&self) -> Vec<Vec<K::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &Matrix<K>) -> Matrix<K> {
        assert_eq!(self.cols, o.rows);
        let k = &self.field;
        Self::from_fn(self.field, self.rows, o.cols, |i, j| {
            let mut acc = k.zero();
            for t in 0..self.cols {
                acc = k.add(&acc, &k.mul(self.get(i, t), o.get(t, j)));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        assert_eq!(self.cols, v.len());
        let k = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(k.zero(), |acc, (a, b)| k.add(&acc, &k.mul(a, b)))
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduce in place to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let k = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !k.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = k.inv(self.get(r, c)).unwrap();
            for j in c..self.cols {
                let v = k.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || k.is_zero(self.get(i, c)) {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = k.sub(self.get(i, j), &k.mul(&f, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<K::Elem>> {
        let k = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![k.zero(); self.cols];
            v[free] = k.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Particular solution of `self * x = b` with free variables set to zero.
    pub fn solve(&self, b: &[K::Elem]) -> Option<Vec<K::Elem>> {
        assert_eq!(b.len(), self.rows);
        let k = self.field;
        let mut aug = Self::from_fn(k, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![k.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix<K>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let k = self.field;
        let mut aug = Self::from_fn(k, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                k.one()
            } else {
                k.zero()
            }
        });
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(k, n, n, |i, j| aug.get(i, n + j).clone()))
    }

    pub fn det(&self) -> K::Elem {
        assert_eq!(self.rows, self.cols);
        let k = self.field;
        let mut m = self.clone();
        let mut det = k.one();
        for c in 0..self.cols {
            let Some(p) = (c..self.rows).find(|&i| !k.is_zero(m.get(i, c))) else {
                return k.zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = k.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = k.mul(&det, &piv);
            let inv = k.inv(&piv).unwrap();
            for i in c + 1..self.rows {
                if k.is_zero(m.get(i, c)) {
                    continue;
                }
                let f = k.mul(m.get(i, c), &inv);
                for j in c..self.cols {
                    let v = k.sub(m.get(i, j), &k.mul(&f, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// Row-reduced basis of the span of `vectors` (all of the same length).
pub fn row_space<K: Field>(field: K, vectors: &[Vec<K::Elem>]) -> Vec<Vec<K::Elem>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_rows(field, vectors.to_vec());
    let r = m.rref().len();
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

/// Extend independent rows to a basis of the full space by appending
/// standard basis vectors.
pub fn complete_basis<K: Field>(field: K, rows: &[Vec<K::Elem>], n: usize) -> Vec<Vec<K::Elem>> {
    let mut out: Vec<Vec<K::Elem>> = rows.to_vec();
    for i in 0..n {
        if out.len() == n {
            break;
        }
        let mut e = vec![field.zero(); n];
        e[i] = field.one();
        let mut trial = out.clone();
        trial.push(e);
        if Matrix::from_rows(field, trial.clone()).rank() == trial.len() {
            out = trial;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::Rng64;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn random_matrix(k: PrimeField, r: usize, c: usize, seed: u64) -> Matrix<PrimeField> {
        let mut rng = Rng64::seed_from_u64(seed);
        Matrix::from_fn(k, r, c, |_, _| k.random(&mut rng))
    }

    proptest! {
        #[test]
        fn rank_nullity(seed in 0u64..500, r in 1usize..6, c in 1usize..7) {
            let k = PrimeField::new(7).unwrap();
            let m = random_matrix(k, r, c, seed);
            let ker = m.kernel();
            prop_assert_eq!(m.rank() + ker.len(), c);
            for v in &ker {
                prop_assert!(m.mul_vec(v).iter().all(|x| *x == 0));
            }
        }

        #[test]
        fn det_multiplicative(seed in 0u64..500) {
            let k = PrimeField::new(101).unwrap();
            let a = random_matrix(k, 4, 4, seed);
            let b = random_matrix(k, 4, 4, seed + 1000);
            prop_assert_eq!(a.mul(&b).det(), k.mul(&a.det(), &b.det()));
            if let Some(inv) = a.inverse() {
                prop_assert_eq!(a.mul(&inv), Matrix::identity(k, 4));
            } else {
                prop_assert_eq!(a.det(), 0);
            }
        }
    }

    #[test]
    fn solve_over_q() {
        let q = Rationals;
        let m = Matrix::from_rows(
            q,
            vec![
                vec![q.from_i64(1), q.from_i64(2)],
                vec![q.from_i64(3), q.from_i64(4)],
            ],
        );
        let x = m.solve(&[q.from_i64(5), q.from_i64(6)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q.from_i64(5), q.from_i64(6)]);
        assert_eq!(m.det(), q.from_i64(-2));
    }
}
