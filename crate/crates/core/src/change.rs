//! Linear changes of coordinates and projective points.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::field::Field;
use crate::linalg::Matrix;
use crate::poly::MultiPoly;
use crate::Rng64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChangeError {
    #[error("matrix is not invertible")]
    Singular,
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
}

/// An element of GL_n acting on points by `v -> g v` and on polynomials
/// by `f -> f o g^{-1}`, so `apply(f, g h) = apply(apply(f, h), g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange<K: Field> {
    matrix: Matrix<K>,
    inverse: Matrix<K>,
}

impl<K: Field> LinearChange<K> {
    pub fn new(matrix: Matrix<K>) -> Result<Self, ChangeError> {
        if matrix.rows() != matrix.cols() {
            return Err(ChangeError::NotSquare(matrix.rows(), matrix.cols()));
        }
        let inverse = matrix.inverse().ok_or(ChangeError::Singular)?;
        Ok(LinearChange { matrix, inverse })
    }

    pub fn identity(field: K, n: usize) -> Self {
        let m = Matrix::identity(field, n);
        LinearChange {
            matrix: m.clone(),
            inverse: m,
        }
    }

    /// The change sending `e_i` to `e_{perm[i]}`.
    pub fn permutation(field: K, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, &j) in perm.iter().enumerate() {
            m.set(j, i, field.one());
        }
        Self::new(m).expect("permutation")
    }

    pub fn random(field: K, n: usize, rng: &mut Rng64) -> Self {
        loop {
            let m = Matrix::from_fn(field, n, n, |_, _| field.random(rng));
            if let Ok(g) = Self::new(m) {
                return g;
            }
        }
    }

    /// Change whose rows are the given linear forms: afterwards `x_i`
    /// stands for `rows[i]`.
    pub fn from_forms(field: K, rows: Vec<Vec<K::Elem>>) -> Result<Self, ChangeError> {
        Self::new(Matrix::from_rows(field, rows))
    }

    pub fn matrix(&self) -> &Matrix<K> {
        &self.matrix
    }
    pub fn inverse_matrix(&self) -> &Matrix<K> {
        &self.inverse
    }
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn inverse(&self) -> Self {
        LinearChange {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    /// `self o other`.
    pub fn compose(&self, other: &Self) -> Self {
        LinearChange {
            matrix: self.matrix.mul(&other.matrix),
            inverse: other.inverse.mul(&self.inverse),
        }
    }

    pub fn apply_point(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        self.matrix.mul_vec(v)
    }

    /// Images `x_i -> sum_j g^{-1}[i][j] x_j` used to compose with `g^{-1}`.
    pub fn substitution(&self) -> Vec<MultiPoly<K>> {
        let n = self.dim();
        (0..n)
            .map(|i| MultiPoly::linear(self.matrix.field(), self.inverse.row(i)))
            .collect()
    }
}

/// `f o g^{-1}`.
pub fn apply_change<K: Field>(f: &MultiPoly<K>, g: &LinearChange<K>) -> MultiPoly<K> {
    assert_eq!(f.nvars(), g.dim());
    f.substitute(&g.substitution())
}

/// Apply the same change to many polynomials, sharing the substitution.
pub fn apply_change_all<K: Field>(fs: &[MultiPoly<K>], g: &LinearChange<K>) -> Vec<MultiPoly<K>> {
    let s = g.substitution();
    fs.iter().map(|f| f.substitute(&s)).collect()
}

/// A point of projective space, scaled so its first nonzero entry is one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint<K: Field> {
    field: K,
    coords: Vec<K::Elem>,
}

impl<K: Field> ProjPoint<K> {
    /// `None` for the zero vector.
    pub fn new(field: K, v: Vec<K::Elem>) -> Option<Self> {
        let i = v.iter().position(|x| !field.is_zero(x))?;
        let inv = field.inv(&v[i]).unwrap();
        let coords = v.iter().map(|x| field.mul(x, &inv)).collect();
        Some(ProjPoint { field, coords })
    }
    pub fn coords(&self) -> &[K::Elem] {
        &self.coords
    }
    pub fn field(&self) -> K {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.coords.len()
    }
    pub fn strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| self.field.fmt_elem(c)).collect()
    }
    /// Linear forms cutting out this point.
    pub fn ideal_forms(&self) -> Vec<MultiPoly<K>> {
        let m = Matrix::from_rows(self.field, vec![self.coords.clone()]);
        m.kernel()
            .into_iter()
            .map(|v| MultiPoly::linear(self.field, &v))
            .collect()
    }
}

impl<K: Field> fmt::Display for ProjPoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.strings().join(":"))
    }
}

impl<K: Field> Serialize for ProjPoint<K> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.strings().serialize(s)
    }
}

/// Linear forms (as coefficient vectors) vanishing on the span of `vectors`.
pub fn annihilator<K: Field>(field: K, vectors: &[Vec<K::Elem>], n: usize) -> Vec<Vec<K::Elem>> {
    if vectors.is_empty() {
        return (0..n)
            .map(|i| {
                let mut e = vec![field.zero(); n];
                e[i] = field.one();
                e
            })
            .collect();
    }
    Matrix::from_rows(field, vectors.to_vec()).kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_poly;
    use proptest::prelude::*;
    use rand::SeedableRng;

    proptest! {
        #[test]
        fn action_is_a_left_action(seed in 0u64..200) {
            let k = PrimeField::new(31).unwrap();
            let mut rng = Rng64::seed_from_u64(seed);
            let f = parse_poly(k, 3, "x0^3 + 2*x0*x1*x2 + 5*x2^2*x1 + x1^3").unwrap();
            let g = LinearChange::random(k, 3, &mut rng);
            let h = LinearChange::random(k, 3, &mut rng);
            let lhs = apply_change(&f, &g.compose(&h));
            let rhs = apply_change(&apply_change(&f, &h), &g);
            prop_assert_eq!(lhs, rhs);
            // evaluating at g v recovers f(v)
            let v: Vec<u32> = (0..3).map(|_| k.random(&mut rng)).collect();
            let gf = apply_change(&f, &g);
            prop_assert_eq!(gf.eval(&g.apply_point(&v)), f.eval(&v));
        }
    }

    #[test]
    fn swap_is_an_involution() {
        let k = PrimeField::new(13).unwrap();
        let f = parse_poly(k, 2, "x0^2 + 3*x1").unwrap();
        let s = LinearChange::permutation(k, &[1, 0]);
        assert_eq!(apply_change(&f, &s).to_string(), "x1^2 + 3*x0");
        assert_eq!(apply_change(&apply_change(&f, &s), &s), f);
    }

    #[test]
    fn point_normalization() {
        let k = PrimeField::new(13).unwrap();
        let p = ProjPoint::new(k, vec![0, 2, 4]).unwrap();
        assert_eq!(p.coords(), &[0, 1, 2]);
        assert!(ProjPoint::new(k, vec![0, 0]).is_none());
        for l in p.ideal_forms() {
            assert_eq!(l.eval(p.coords()), 0);
        }
    }
}
