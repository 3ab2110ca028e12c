//! Pfaffian representations `Pf(M) = lambda F` of cubic threefolds by 6x6
//! skew matrices of linear forms.
//!
//! Normal non-cones go through an elliptic quintic on `X`: its five quadrics
//! are the 4x4 sub-Pfaffians of a 5x5 skew matrix `N`, and bordering `N` by
//! the coefficients of `F` in those quadrics gives `M`. Cones reduce to five
//! points on the base surface; double planes and reducible cubics have
//! explicit matrices.

use std::collections::BTreeMap;

use rand::SeedableRng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::change::{annihilator, apply_change, LinearChange, ProjPoint};
use crate::curve::{forge_quintic, proj_points, random_point_on, CurveError, QuinticWitness};
use crate::field::Field;
use crate::hilbert::HilbertPoly;
use crate::ideal::{linear_syzygies, GradedIdeal, IdealError};
use crate::linalg::{complete_basis, Matrix};
use crate::mono::Monomial;
use crate::points::rational_points;
use crate::poly::{degree_basis, MultiPoly};
use crate::polymatrix::{MatrixError, PolyMatrix, SkewLinearMatrix};
use crate::quadric::{quadric_split, QuadricError};
use crate::segre::{classify, random_vector, CubicThreefold, SegreError, SegreKind, SegreReport};
use crate::Rng64;

#[derive(Debug, Error)]
pub enum PfaffError {
    #[error("expected a 5-dimensional space of linear syzygies, found {0}")]
    Syzygies(usize),
    #[error("no constant change of basis makes the syzygy matrix skew")]
    Alternation,
    #[error("the recovered matrix does not reproduce the quadrics")]
    SpanMismatch,
    #[error("the form is not in the ideal of the quadrics")]
    NotInIdeal,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("search exhausted: {0}")]
    Exhausted(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Segre(#[from] SegreError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Quadric(#[from] QuadricError),
}

impl PfaffError {
    /// Whether a retry with another seed or a larger field could succeed.
    pub fn is_search_failure(&self) -> bool {
        matches!(
            self,
            PfaffError::Exhausted(_)
                | PfaffError::Curve(CurveError::Exhausted(_))
                | PfaffError::Curve(CurveError::FieldTooLarge(_))
                | PfaffError::Curve(CurveError::InfiniteField)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strategy {
    Quintic,
    ConeBase,
    DoublePlane,
    NonIntegral,
}

/// Strategy for a classified cubic.
pub fn strategy_for(kind: SegreKind) -> Strategy {
    match kind {
        SegreKind::Cone => Strategy::ConeBase,
        SegreKind::NonNormalPlane => Strategy::DoublePlane,
        SegreKind::NonIntegral => Strategy::NonIntegral,
        SegreKind::Smooth | SegreKind::IsolatedDoublePoints | SegreKind::DoubleCurve => Strategy::Quintic,
    }
}

fn coeff_rows<K: Field>(forms: &[MultiPoly<K>], d: u32) -> Vec<Vec<K::Elem>> {
    let n = forms[0].nvars();
    let (basis, index) = degree_basis(n, d);
    forms.iter().map(|f| f.coeff_vector(&basis, &index)).collect()
}

/// Whether two lists of forms of degree `d` span the same space.
pub fn same_span<K: Field>(a: &[MultiPoly<K>], b: &[MultiPoly<K>], d: u32) -> bool {
    let k = a[0].field();
    let ra = Matrix::from_rows(k, coeff_rows(a, d)).rank();
    let rb = Matrix::from_rows(k, coeff_rows(b, d)).rank();
    let both = Matrix::from_rows(k, [coeff_rows(a, d), coeff_rows(b, d)].concat()).rank();
    ra == both && rb == both
}

/// A 5x5 skew matrix whose signed 4x4 Pfaffians span the same quadrics as
/// `quadrics`.
///
/// The five linear syzygies form a matrix `A` with `A q = 0`; a constant
/// `R` with `A R` skew is found by solving the linear conditions on `R`.
pub fn be_matrix<K: Field>(quadrics: &[MultiPoly<K>]) -> Result<SkewLinearMatrix<K>, PfaffError> {
    let k = quadrics[0].field();
    let n = quadrics[0].nvars();
    let syz = linear_syzygies(quadrics);
    if syz.len() != 5 || quadrics.len() != 5 {
        return Err(PfaffError::Syzygies(syz.len()));
    }
    let coef = |p: &MultiPoly<K>, v: usize| p.coeff(Monomial::var(v));
    // unknown R[a][b] at column 5a + b; (AR)_ij = sum_a A_ia R_aj
    let mut rows = Vec::new();
    for i in 0..5 {
        for j in i..5 {
            for v in 0..n {
                let mut row = vec![k.zero(); 25];
                for a in 0..5 {
                    let x = coef(&syz[i][a], v);
                    row[5 * a + j] = k.add(&row[5 * a + j], &x);
                    let y = coef(&syz[j][a], v);
                    row[5 * a + i] = k.add(&row[5 * a + i], &y);
                }
                rows.push(row);
            }
        }
    }
    let ker = Matrix::from_rows(k, rows).kernel();
    let a = PolyMatrix::from_rows(k, n, syz);
    let to_r = |v: &[K::Elem]| Matrix::from_fn(k, 5, 5, |i, j| v[5 * i + j].clone());
    // deterministic combinations of the solution basis
    let mut rng = Rng64::seed_from_u64(ker.len() as u64);
    for attempt in 0..32 {
        let mut v = vec![k.zero(); 25];
        for (t, b) in ker.iter().enumerate() {
            let c = if attempt == 0 { k.from_i64(t as i64 + 1) } else { k.random(&mut rng) };
            for (x, y) in v.iter_mut().zip(b) {
                *x = k.add(x, &k.mul(&c, y));
            }
        }
        let r = to_r(&v);
        if !r.is_invertible() {
            continue;
        }
        let m = SkewLinearMatrix::new(a.mul_const(&r))?;
        if !same_span(&m.pfaffian_complements()?, quadrics, 2) {
            return Err(PfaffError::SpanMismatch);
        }
        return Ok(m);
    }
    Err(PfaffError::Alternation)
}

/// Linear forms `c` with `sum c_i q_i = f`, the pivot solution of the
/// coefficient system in degree `deg f`.
pub fn express_in_quadrics<K: Field>(
    f: &MultiPoly<K>,
    quadrics: &[MultiPoly<K>],
) -> Result<Vec<MultiPoly<K>>, PfaffError> {
    let k = f.field();
    let n = f.nvars();
    let d = f.homogeneous_degree().map_err(|_| PfaffError::NotInIdeal)?;
    let (basis, index) = degree_basis(n, d);
    let mut cols = Vec::new();
    for q in quadrics {
        for v in 0..n {
            cols.push(q.mul_term(Monomial::var(v), &k.one()).coeff_vector(&basis, &index));
        }
    }
    let a = Matrix::from_rows(k, cols).transpose();
    let x = a.solve(&f.coeff_vector(&basis, &index)).ok_or(PfaffError::NotInIdeal)?;
    Ok((0..quadrics.len())
        .map(|i| MultiPoly::linear(k, &x[i * n..(i + 1) * n]))
        .collect())
}

/// `Pf(M)` against `F`: whether `Pf(M) = lambda F` for a nonzero constant.
pub fn verify<K: Field>(m: &SkewLinearMatrix<K>, f: &MultiPoly<K>) -> Result<Option<K::Elem>, PfaffError> {
    if m.size() % 2 == 1 {
        return Err(MatrixError::OddSize(m.size()).into());
    }
    Ok(m.pfaffian()?.proportional_to(f))
}

/// A verified Pfaffian representation.
#[derive(Clone, Debug)]
pub struct PfaffianCertificate<K: Field> {
    pub f: MultiPoly<K>,
    pub strategy: Strategy,
    pub lambda: K::Elem,
    pub m: SkewLinearMatrix<K>,
    pub witnesses: Value,
    pub checks: BTreeMap<String, bool>,
    pub seed: u64,
    pub retries: usize,
}

impl<K: Field> PfaffianCertificate<K> {
    pub fn verified(&self) -> bool {
        self.checks.values().all(|&b| b)
    }
    pub fn to_json(&self) -> Value {
        let k = self.f.field();
        json!({
            "field": k.label(),
            "F": self.f.to_string(),
            "strategy": self.strategy,
            "lambda": k.fmt_elem(&self.lambda),
            "M": self.m.matrix().to_strings(),
            "witnesses": self.witnesses,
            "checks": self.checks,
            "seed": self.seed,
            "retries": self.retries,
        })
    }
}

/// Scale the last row and column so that `lambda = 1`, then check.
fn certify<K: Field>(
    f: &MultiPoly<K>,
    m: SkewLinearMatrix<K>,
    strategy: Strategy,
    witnesses: Value,
    mut checks: BTreeMap<String, bool>,
) -> Result<PfaffianCertificate<K>, PfaffError> {
    let k = f.field();
    let lambda = verify(&m, f)?.ok_or_else(|| PfaffError::Verification("Pf(M) is not a multiple of F".into()))?;
    let m = m.scale_last(&k.inv(&lambda).unwrap());
    let lambda = verify(&m, f)?.ok_or_else(|| PfaffError::Verification("rescaling broke Pf(M)".into()))?;
    checks.insert("pf_identity".into(), k.is_one(&lambda));
    let cert = PfaffianCertificate {
        f: f.clone(),
        strategy,
        lambda,
        m,
        witnesses,
        checks,
        seed: 0,
        retries: 0,
    };
    if !cert.verified() {
        let failed: Vec<&String> = cert.checks.iter().filter(|(_, &v)| !v).map(|(n, _)| n).collect();
        return Err(PfaffError::Verification(format!("failed checks {failed:?}")));
    }
    Ok(cert)
}

fn skew_from_upper<K: Field>(k: K, n: usize, size: usize, upper: &[(usize, usize, MultiPoly<K>)]) -> SkewLinearMatrix<K> {
    let mut m = PolyMatrix::zeros(k, n, size, size);
    for (i, j, e) in upper {
        m.set(*i, *j, e.clone());
        m.set(*j, *i, -e);
    }
    SkewLinearMatrix::new(m).expect("skew by construction")
}

/// The 6x6 matrix with Pfaffian `a x3^2 + b x3 x4 + c x4^2`.
pub fn double_plane_matrix<K: Field>(a: &MultiPoly<K>, b: &MultiPoly<K>, c: &MultiPoly<K>) -> SkewLinearMatrix<K> {
    let k = a.field();
    let n = a.nvars();
    let x = |i| MultiPoly::var(k, n, i);
    skew_from_upper(
        k,
        n,
        6,
        &[
            (0, 1, x(3)),
            (0, 2, x(4)),
            (0, 5, b.clone()),
            (1, 4, x(4)),
            (2, 3, x(3)),
            (3, 5, c.clone()),
            (4, 5, a.clone()),
        ],
    )
}

/// Double plane `{l1 = l2 = 0}`: move it to `x3 = x4 = 0`, read off
/// `F = a x3^2 + b x3 x4 + c x4^2` and fill in the template.
pub fn pfaffian_double_plane<K: Field>(
    f: &MultiPoly<K>,
    plane: &(MultiPoly<K>, MultiPoly<K>),
) -> Result<PfaffianCertificate<K>, PfaffError> {
    let k = f.field();
    let n = f.nvars();
    let vec_of = |l: &MultiPoly<K>| (0..n).map(|i| l.coeff(Monomial::var(i))).collect::<Vec<_>>();
    let mut rows = complete_basis(k, &[vec_of(&plane.0), vec_of(&plane.1)], n);
    rows.rotate_left(2);
    let g = LinearChange::from_forms(k, rows).map_err(|_| PfaffError::Unsupported("dependent plane equations".into()))?;
    let h = apply_change(f, &g);
    let mut parts = [Vec::new(), Vec::new(), Vec::new()];
    for (m, c) in h.terms() {
        let (e3, e4) = (m.exp(3), m.exp(4));
        let (slot, rest) = if e3 >= 2 {
            (0, m.with_exp(3, e3 - 2))
        } else if e3 == 1 && e4 >= 1 {
            (1, m.with_exp(3, 0).with_exp(4, e4 - 1))
        } else if e4 >= 2 {
            (2, m.with_exp(4, e4 - 2))
        } else {
            return Err(PfaffError::Unsupported("the cubic is not double along the plane".into()));
        };
        parts[slot].push((rest, c.clone()));
    }
    let [a, b, c] = parts.map(|t| MultiPoly::from_terms(k, n, t));
    let m = double_plane_matrix(&a, &b, &c).apply_change(&g.inverse());
    let witnesses = json!({
        "plane": [plane.0.to_string(), plane.1.to_string()],
        "a": a.to_string(), "b": b.to_string(), "c": c.to_string(),
    });
    certify(f, m, Strategy::DoublePlane, witnesses, BTreeMap::new())
}

/// A 4x4 skew matrix of linear forms with Pfaffian `q`, from a splitting
/// into at most three products.
pub fn quadric_matrix<K: Field>(q: &MultiPoly<K>) -> Result<SkewLinearMatrix<K>, PfaffError> {
    let k = q.field();
    let n = q.nvars();
    let split = quadric_split(q)?;
    let mut prods = split.products.clone();
    if let Some((d, c)) = &split.square {
        prods.push((c.scale(d), c.clone()));
    }
    if prods.len() > 3 {
        return Err(PfaffError::Unsupported(format!("quadric needs {} products", prods.len())));
    }
    let zero = MultiPoly::zero(k, n);
    prods.resize(3, (zero.clone(), zero));
    // Pf = m01 m23 - m02 m13 + m03 m12
    let [(a1, b1), (a2, b2), (a3, b3)]: [(MultiPoly<K>, MultiPoly<K>); 3] = prods.try_into().unwrap();
    Ok(skew_from_upper(
        k,
        n,
        4,
        &[(0, 1, a1), (2, 3, b1), (0, 2, a2), (1, 3, -&b2), (0, 3, a3), (1, 2, b3)],
    ))
}

/// `F = l Q`: block sum of a 4x4 matrix for `Q` and `[[0, l], [-l, 0]]`.
pub fn pfaffian_non_integral<K: Field>(
    l: &MultiPoly<K>,
    q: &MultiPoly<K>,
) -> Result<PfaffianCertificate<K>, PfaffError> {
    let k = l.field();
    let n = l.nvars();
    let mq = quadric_matrix(q)?;
    let mut m = PolyMatrix::zeros(k, n, 6, 6);
    for i in 0..4 {
        for j in 0..4 {
            m.set(i, j, mq.matrix().get(i, j).clone());
        }
    }
    m.set(4, 5, l.clone());
    m.set(5, 4, -l);
    let m = SkewLinearMatrix::new(m)?;
    let mut checks = BTreeMap::new();
    checks.insert("pf_quadric".into(), mq.pfaffian()? == *q);
    let witnesses = json!({ "l": l.to_string(), "Q": q.to_string() });
    certify(&(l * q), m, Strategy::NonIntegral, witnesses, checks)
}

/// Whether every four of the points span `P^3`.
fn general_position<K: Field>(k: K, pts: &[Vec<K::Elem>]) -> bool {
    crate::polymatrix::subsets(pts.len(), 4.min(pts.len()))
        .iter()
        .all(|s| Matrix::from_rows(k, s.iter().map(|&i| pts[i].clone()).collect()).rank() == s.len())
}

/// Random draws before the exhaustive point scan.
const CONE_POINT_DRAWS: usize = 400;

/// Five points of `{g = 0}` in `P^3` in linear general position: random
/// points first, then all rational points in order.
fn five_points<K: Field>(g: &MultiPoly<K>, rng: &mut Rng64) -> Option<Vec<Vec<K::Elem>>> {
    let k = g.field();
    let mut chosen: Vec<Vec<K::Elem>> = Vec::new();
    let take = |p: Vec<K::Elem>, chosen: &mut Vec<Vec<K::Elem>>| {
        let mut t = chosen.clone();
        t.push(p);
        if general_position(k, &t) {
            *chosen = t;
        }
        chosen.len() == 5
    };
    for _ in 0..CONE_POINT_DRAWS {
        if let Some(p) = random_point_on(g, rng) {
            if take(p, &mut chosen) {
                return Some(chosen);
            }
        }
    }
    if k.order().is_some_and(|q| q <= crate::curve::MAX_SEARCH_ORDER) {
        for p in proj_points(k, 4) {
            if k.is_zero(&g.eval(&p)) && take(p, &mut chosen) {
                return Some(chosen);
            }
        }
    }
    None
}

/// Cone with vertex space spanned by `apex`: five general points on the base
/// cubic surface give five quadrics, a 5x5 matrix and its bordering, all in
/// the base variables.
pub fn pfaffian_cone<K: Field>(
    f: &MultiPoly<K>,
    apex: &[ProjPoint<K>],
    rng: &mut Rng64,
) -> Result<PfaffianCertificate<K>, PfaffError> {
    let k = f.field();
    let n = f.nvars();
    let vs: Vec<Vec<K::Elem>> = apex.iter().map(|p| p.coords().to_vec()).collect();
    let mut forms = annihilator(k, &vs, n);
    if forms.len() > 4 {
        return Err(PfaffError::Unsupported("not a cone".into()));
    }
    if forms.len() < 2 {
        return Err(PfaffError::Unsupported("cone over points of a line".into()));
    }
    let m = forms.len();
    forms.extend(complete_basis(k, &forms, n).into_iter().skip(m));
    let g = LinearChange::from_forms(k, forms).expect("completed basis");
    let base = apex_free(&apply_change(f, &g), 4);
    let pts = five_points(&base, rng).ok_or_else(|| PfaffError::Exhausted("five general points on the base".into()))?;
    let ideal = pts
        .iter()
        .map(|p| GradedIdeal::of_span(k, &[p.clone()], 4))
        .reduce(|a, b| a.intersect(&b))
        .unwrap();
    let hf: Vec<u64> = (0..4).map(|d| ideal.hilbert_function(d)).collect();
    let quadrics = ideal.degree_part(2);
    let mut checks = BTreeMap::new();
    checks.insert("points_h_vector".into(), hf == [1, 4, 5, 5]);
    let n5 = be_matrix(&quadrics)?;
    let c = express_in_quadrics(&base, &n5.pfaffian_complements()?)?;
    let m4 = n5.border(&c)?;
    let lifted: Vec<MultiPoly<K>> = (0..4).map(|i| MultiPoly::var(k, n, i)).collect();
    let m = m4.substitute(&lifted).apply_change(&g.inverse());
    // directions dropped from the base P^3 lie in the vertex space
    let dropped: Vec<Vec<K::Elem>> = (4..n)
        .map(|j| {
            let mut e = vec![k.zero(); n];
            e[j] = k.one();
            g.inverse().apply_point(&e)
        })
        .collect();
    let apex_free_entries = (0..6).all(|i| {
        (0..6).all(|j| dropped.iter().all(|v| k.is_zero(&m.matrix().get(i, j).eval(v))))
    });
    checks.insert("apex_free".into(), apex_free_entries);
    let pt_strings: Vec<Vec<String>> = pts
        .iter()
        .map(|p| ProjPoint::new(k, p.clone()).unwrap().strings())
        .collect();
    let witnesses = json!({
        "apex": apex.iter().map(|p| p.strings()).collect::<Vec<_>>(),
        "base": base.to_string(),
        "points": pt_strings,
        "quadrics": quadrics.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
    });
    certify(f, m, Strategy::ConeBase, witnesses, checks)
}

/// `h` only involves the first `keep` variables; restrict to them.
fn apex_free<K: Field>(h: &MultiPoly<K>, keep: usize) -> MultiPoly<K> {
    h.restrict_vars(keep)
}

/// Rank checks at points: `M` is invertible off `X` and has rank at most 4
/// on rational points of the curve.
fn rank_checks<K: Field>(
    f: &MultiPoly<K>,
    m: &SkewLinearMatrix<K>,
    curve: &GradedIdeal<K>,
    rng: &mut Rng64,
    checks: &mut BTreeMap<String, bool>,
) -> Result<(), PfaffError> {
    let k = f.field();
    let mut off = 0;
    let mut ok = true;
    for _ in 0..200 {
        if off == 20 {
            break;
        }
        let p = random_vector(k, 5, rng);
        if k.is_zero(&f.eval(&p)) {
            continue;
        }
        off += 1;
        ok &= m.matrix().eval(&p).rank() == 6;
    }
    checks.insert("rank_off_x".into(), ok && off == 20);
    let mut on = Vec::new();
    for _ in 0..8 {
        let h = MultiPoly::linear(k, &random_vector(k, 5, rng));
        on.extend(rational_points(&curve.add_generators(&[h]))?);
    }
    checks.insert(
        "rank_on_curve".into(),
        on.iter().all(|p| m.matrix().eval(p.coords()).rank() <= 4),
    );
    Ok(())
}

/// Normal non-cone: the elliptic quintic route.
pub fn pfaffian_quintic<K: Field>(
    x: &CubicThreefold<K>,
    rng: &mut Rng64,
    retries: usize,
) -> Result<(PfaffianCertificate<K>, QuinticWitness<K>), PfaffError> {
    let f = x.form();
    let w = forge_quintic(x, rng, retries)?;
    let q = &w.curve.quadrics;
    let n5 = be_matrix(q)?;
    let p = n5.pfaffian_complements()?;
    let c = express_in_quadrics(f, &p)?;
    let m = n5.border(&c)?;
    let mut checks = BTreeMap::new();
    checks.insert("hp_5m".into(), w.curve.hilbert == HilbertPoly::from_ints(&[0, 5]));
    checks.insert("nondegenerate".into(), w.curve.ideal.dim_in_degree(1) == 0);
    checks.insert("be_roundtrip".into(), same_span(&p, q, 2));
    rank_checks(f, &m, &w.curve.ideal, rng, &mut checks)?;
    let witnesses = json!({
        "curve": w.to_json(),
        "N": n5.matrix().to_strings(),
        "c": c.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
    });
    Ok((certify(f, m, Strategy::Quintic, witnesses, checks)?, w))
}

/// Classify, dispatch on the kind and return a verified certificate.
pub fn pfaffianize<K: Field>(
    x: &CubicThreefold<K>,
    seed: u64,
    retries: usize,
) -> Result<(PfaffianCertificate<K>, SegreReport<K>), PfaffError> {
    let mut rng = Rng64::seed_from_u64(seed);
    let report = classify(x, &mut rng)?;
    let f = x.form();
    let mut cert = match strategy_for(report.kind) {
        Strategy::Quintic => pfaffian_quintic(x, &mut rng, retries)?.0,
        Strategy::ConeBase => pfaffian_cone(f, &report.apex, &mut rng)?,
        Strategy::DoublePlane => pfaffian_double_plane(f, report.plane.as_ref().expect("plane of a non-normal cubic"))?,
        Strategy::NonIntegral => {
            let (l, q) = report.factors.as_ref().expect("factors of a reducible cubic");
            let mut c = pfaffian_non_integral(l, q)?;
            // l Q may differ from F by a constant
            let lambda = verify(&c.m, f)?.ok_or_else(|| PfaffError::Verification("l Q is not F".into()))?;
            c.m = c.m.scale_last(&f.field().inv(&lambda).unwrap());
            c.f = f.clone();
            c.lambda = verify(&c.m, f)?.unwrap();
            c
        }
    };
    cert.seed = seed;
    cert.retries = retries;
    Ok((cert, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_poly;

    #[test]
    fn template_matches_the_double_plane_form() {
        let k = PrimeField::new(101).unwrap();
        let x = |i| MultiPoly::var(k, 5, i);
        let m = double_plane_matrix(&x(0), &x(2), &x(1));
        let f = parse_poly(k, 5, "x0*x3^2 + x1*x4^2 + x2*x3*x4").unwrap();
        assert_eq!(m.pfaffian().unwrap(), f);
    }

    #[test]
    fn express_simple_multiple() {
        let k = PrimeField::new(101).unwrap();
        let q: Vec<_> = ["x0*x1", "x1*x2", "x2*x3", "x3*x4", "x0*x4"]
            .iter()
            .map(|s| parse_poly(k, 5, s).unwrap())
            .collect();
        let f = &q[0] * &MultiPoly::var(k, 5, 0);
        let c = express_in_quadrics(&f, &q).unwrap();
        assert_eq!(c[0], MultiPoly::var(k, 5, 0));
        assert!(c[1..].iter().all(|l| l.is_zero()));
        let g = parse_poly(k, 5, "x0^3").unwrap();
        assert!(matches!(express_in_quadrics(&g, &q), Err(PfaffError::NotInIdeal)));
    }

    #[test]
    fn rank_one_quadric_matrix() {
        let k = PrimeField::new(101).unwrap();
        let q = parse_poly(k, 5, "x0^2").unwrap();
        assert_eq!(quadric_matrix(&q).unwrap().pfaffian().unwrap(), q);
    }
}
