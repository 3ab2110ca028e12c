//! Quadratic forms: rank and splitting into sums of products of linear forms.

use thiserror::Error;

use crate::field::Field;
use crate::linalg::Matrix;
use crate::mono::Monomial;
use crate::poly::MultiPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadricError {
    #[error("not a quadratic form")]
    NotQuadric,
}

/// Gram matrix `G` with `q(x) = x^T G x`.
pub fn gram_matrix<K: Field>(q: &MultiPoly<K>) -> Result<Matrix<K>, QuadricError> {
    let k = q.field();
    let n = q.nvars();
    if !q.is_zero() && q.homogeneous_degree().ok() != Some(2) {
        return Err(QuadricError::NotQuadric);
    }
    let half = k.inv(&k.from_i64(2)).unwrap();
    let mut g = Matrix::zeros(k, n, n);
    for (m, c) in q.terms() {
        let vars: Vec<usize> = (0..n).filter(|&i| m.exp(i) > 0).collect();
        if vars.len() == 1 {
            g.set(vars[0], vars[0], c.clone());
        } else {
            let h = k.mul(c, &half);
            g.set(vars[0], vars[1], h.clone());
            g.set(vars[1], vars[0], h);
        }
    }
    Ok(g)
}

pub fn quadric_from_gram<K: Field>(g: &Matrix<K>) -> MultiPoly<K> {
    let k = g.field();
    let n = g.rows();
    let mut t = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let m = Monomial::var(i).mul(Monomial::var(j));
            t.push((m, g.get(i, j).clone()));
        }
    }
    MultiPoly::from_terms(k, n, t)
}

pub fn quadric_rank<K: Field>(q: &MultiPoly<K>) -> Result<usize, QuadricError> {
    Ok(gram_matrix(q)?.rank())
}

/// `q = sum a_i b_i + d c^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricSplit<K: Field> {
    pub products: Vec<(MultiPoly<K>, MultiPoly<K>)>,
    pub square: Option<(K::Elem, MultiPoly<K>)>,
}

impl<K: Field> QuadricSplit<K> {
    pub fn summands(&self) -> usize {
        self.products.len() + usize::from(self.square.is_some())
    }

    pub fn recombine(&self, field: K, nvars: usize) -> MultiPoly<K> {
        let mut acc = MultiPoly::zero(field, nvars);
        for (a, b) in &self.products {
            acc = &acc + &(a * b);
        }
        if let Some((d, c)) = &self.square {
            acc = &acc + &(c * c).scale(d);
        }
        acc
    }
}

fn dot<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> K::Elem {
    a.iter()
        .zip(b)
        .fold(k.zero(), |acc, (x, y)| k.add(&acc, &k.mul(x, y)))
}

fn axpy<K: Field>(k: &K, a: &K::Elem, x: &[K::Elem], y: &[K::Elem]) -> Vec<K::Elem> {
    x.iter()
        .zip(y)
        .map(|(xi, yi)| k.add(&k.mul(a, xi), yi))
        .collect()
}

/// Diagonalize: `q = sum d_i y_i(x)^2` with independent linear forms `y_i`.
pub fn diagonalize<K: Field>(q: &MultiPoly<K>) -> Result<Vec<(K::Elem, Vec<K::Elem>)>, QuadricError> {
    let k = q.field();
    let n = q.nvars();
    let mut g = gram_matrix(q)?;
    let mut out = Vec::new();
    loop {
        let mut u = None;
        if let Some(i) = (0..n).find(|&i| !k.is_zero(g.get(i, i))) {
            let mut e = vec![k.zero(); n];
            e[i] = k.one();
            u = Some(e);
        } else {
            'find: for i in 0..n {
                for j in i + 1..n {
                    if !k.is_zero(g.get(i, j)) {
                        let mut e = vec![k.zero(); n];
                        e[i] = k.one();
                        e[j] = k.one();
                        u = Some(e);
                        break 'find;
                    }
                }
            }
        }
        let Some(u) = u else { break };
        let gu = g.mul_vec(&u);
        let qu = dot(&k, &u, &gu);
        let d = k.inv(&qu).unwrap();
        for i in 0..n {
            for j in 0..n {
                let v = k.sub(g.get(i, j), &k.mul(&d, &k.mul(&gu[i], &gu[j])));
                g.set(i, j, v);
            }
        }
        out.push((d, gu));
    }
    Ok(out)
}

/// A nonzero isotropic vector of the diagonal form `sum d_i t_i^2`.
fn isotropic_diag<K: Field>(k: &K, d: &[K::Elem]) -> Option<Vec<K::Elem>> {
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            if let Some(s) = k.sqrt(&k.neg(&k.div(&d[j], &d[i]))) {
                let mut v = vec![k.zero(); n];
                v[i] = s;
                v[j] = k.one();
                return Some(v);
            }
        }
    }
    if n < 3 {
        return None;
    }
    for u in k.search_elements(24) {
        let t = k.neg(&k.div(&k.add(&d[0], &k.mul(&d[1], &k.mul(&u, &u))), &d[2]));
        if let Some(v) = k.sqrt(&t) {
            let mut w = vec![k.zero(); n];
            w[0] = k.one();
            w[1] = u;
            w[2] = v;
            return Some(w);
        }
    }
    None
}

/// Write `q` as a sum of products of linear forms plus at most one square.
/// Over a finite field this uses `ceil(rank/2)` summands when the form
/// has maximal Witt index, one more otherwise.
pub fn quadric_split<K: Field>(q: &MultiPoly<K>) -> Result<QuadricSplit<K>, QuadricError> {
    let k = q.field();
    let n = q.nvars();
    let lin = |v: &[K::Elem]| MultiPoly::linear(k, v);
    let mut diag = diagonalize(q)?;
    let mut products = Vec::new();
    // Work on at most three diagonal terms at a time.
    while diag.len() >= 2 {
        let take = diag.len().min(3);
        let ds: Vec<K::Elem> = diag[..take].iter().map(|(d, _)| d.clone()).collect();
        let Some(w) = isotropic_diag(&k, &ds) else {
            if take == 2 || diag.len() == 2 {
                break;
            }
            // rotate so another triple is tried next
            let first = diag.remove(0);
            products.push((lin(&first.1).scale(&first.0), lin(&first.1)));
            continue;
        };
        let ys: Vec<Vec<K::Elem>> = diag[..take].iter().map(|(_, y)| y.clone()).collect();
        diag.drain(..take);
        // Hyperbolic plane in the local coordinates t with form diag(ds).
        let b = |a: &[K::Elem], c: &[K::Elem]| {
            (0..take).fold(k.zero(), |acc, i| k.add(&acc, &k.mul(&ds[i], &k.mul(&a[i], &c[i]))))
        };
        let gw: Vec<K::Elem> = (0..take).map(|i| k.mul(&ds[i], &w[i])).collect();
        let j = gw.iter().position(|x| !k.is_zero(x)).unwrap();
        let mut z = vec![k.zero(); take];
        z[j] = k.inv(&gw[j]).unwrap();
        let half = k.inv(&k.from_i64(2)).unwrap();
        let qz = b(&z, &z);
        let z2 = axpy(&k, &k.neg(&k.mul(&qz, &half)), &w, &z);
        // alpha = B(z', t), beta = B(w, t) as forms in t, then in x
        let to_x = |coef: &[K::Elem]| {
            let mut v = vec![k.zero(); n];
            for i in 0..take {
                let c = k.mul(&ds[i], &coef[i]);
                v = axpy(&k, &c, &ys[i], &v);
            }
            v
        };
        let alpha = to_x(&z2);
        let beta = to_x(&w);
        products.push((lin(&alpha).scale(&k.from_i64(2)), lin(&beta)));
        if take == 3 {
            // Remaining rank-one piece lives on the B-orthogonal of span(w, z').
            let mut gram = Matrix::zeros(k, 3, 3);
            for i in 0..3 {
                gram.set(i, i, ds[i].clone());
            }
            let cons = Matrix::from_rows(
                k,
                vec![gram.mul_vec(&w), gram.mul_vec(&z2)],
            );
            let perp = cons.kernel().remove(0);
            let qp = b(&perp, &perp);
            // t = a w + c z' + s perp; the rank-one part is Q(perp) s^2 with
            // s = B(perp, t) / Q(perp).
            let sform = to_x(&perp.iter().map(|x| k.div(x, &qp)).collect::<Vec<_>>());
            diag.insert(0, (qp, sform));
        }
    }
    let mut square = None;
    let last = if diag.len() % 2 == 1 { diag.pop() } else { None };
    for (d, y) in diag {
        products.push((lin(&y).scale(&d), lin(&y)));
    }
    if let Some((d, y)) = last {
        square = Some((d, lin(&y)));
    }
    Ok(QuadricSplit { products, square })
}
