//! Curves on cubic threefolds over small prime fields: lines on cubic
//! surfaces, residual conics, a reducible rational quartic `C2 + l + l'`,
//! the cubic scroll through it and the residual elliptic quintic.
//!
//! All searches are exhaustive over the rational points of the field, so
//! the field must be finite and small.

use serde_json::{json, Value};
use thiserror::Error;

use crate::change::{annihilator, ProjPoint};
use crate::field::Field;
use crate::hilbert::HilbertPoly;
use crate::ideal::{forms_vanishing_on, GradedIdeal, IdealError};
use crate::linalg::{complete_basis, Matrix};
use crate::mono::Monomial;
use crate::poly::MultiPoly;
use crate::quadric::quadric_rank;
use crate::segre::{cone_apex, random_vector, CubicThreefold};
use crate::Rng64;

/// Largest field order accepted by the exhaustive scans.
pub const MAX_SEARCH_ORDER: u64 = 31;

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("exhaustive searches need a finite field")]
    InfiniteField,
    #[error("field of order {0} is too large for exhaustive search (limit {MAX_SEARCH_ORDER})")]
    FieldTooLarge(u64),
    #[error("the plane does not contain the line")]
    LineNotInPlane,
    #[error("the line does not lie on the surface")]
    LineNotOnSurface,
    #[error("the plane lies on the surface")]
    PlaneOnSurface,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("degenerate anchors: {0}")]
    DegenerateAnchors(&'static str),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("no witness found after {0} attempts")]
    Exhausted(usize),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

fn check_field<K: Field>(k: K) -> Result<(), CurveError> {
    match k.order() {
        None => Err(CurveError::InfiniteField),
        Some(q) if q > MAX_SEARCH_ORDER => Err(CurveError::FieldTooLarge(q)),
        Some(_) => Ok(()),
    }
}

/// Normalized representatives of all rational points of `P^{n-1}`.
pub fn proj_points<K: Field>(k: K, n: usize) -> Vec<Vec<K::Elem>> {
    let elems = k.search_elements(0);
    let q = elems.len();
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        for code in 0..q.pow(free as u32) {
            let mut v = vec![k.zero(); n];
            v[lead] = k.one();
            let mut c = code;
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = elems[c % q].clone();
                c /= q;
            }
            out.push(v);
        }
    }
    out
}

fn combo<K: Field>(k: K, a: &K::Elem, u: &[K::Elem], b: &K::Elem, v: &[K::Elem]) -> Vec<K::Elem> {
    u.iter()
        .zip(v)
        .map(|(x, y)| k.add(&k.mul(a, x), &k.mul(b, y)))
        .collect()
}

fn dot<K: Field>(k: K, a: &[K::Elem], b: &[K::Elem]) -> K::Elem {
    a.iter()
        .zip(b)
        .fold(k.zero(), |acc, (x, y)| k.add(&acc, &k.mul(x, y)))
}

fn rank<K: Field>(k: K, rows: &[Vec<K::Elem>]) -> usize {
    Matrix::from_rows(k, rows.to_vec()).rank()
}

/// `sum y_i b_i` as linear forms in the `y`: substituting these into a form
/// on the ambient space restricts it to the span of the `b_i`.
fn span_images<K: Field>(k: K, basis: &[Vec<K::Elem>]) -> Vec<MultiPoly<K>> {
    let n = basis[0].len();
    (0..n)
        .map(|j| {
            let c: Vec<K::Elem> = basis.iter().map(|b| b[j].clone()).collect();
            MultiPoly::linear(k, &c)
        })
        .collect()
}

/// A projective line, stored as the reduced row echelon form of a spanning
/// pair of vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LineP<K: Field> {
    field: K,
    rows: [Vec<K::Elem>; 2],
}

impl<K: Field> LineP<K> {
    /// `None` when the vectors are dependent.
    pub fn new(field: K, a: &[K::Elem], b: &[K::Elem]) -> Option<Self> {
        let mut m = Matrix::from_rows(field, vec![a.to_vec(), b.to_vec()]);
        if m.rref().len() != 2 {
            return None;
        }
        Some(LineP {
            field,
            rows: [m.row(0).to_vec(), m.row(1).to_vec()],
        })
    }
    pub fn rows(&self) -> &[Vec<K::Elem>; 2] {
        &self.rows
    }
    pub fn dim(&self) -> usize {
        self.rows[0].len()
    }
    pub fn point(&self, s: &K::Elem, t: &K::Elem) -> Vec<K::Elem> {
        combo(self.field, s, &self.rows[0], t, &self.rows[1])
    }
    /// The rational points, in parameter order.
    pub fn points(&self) -> Vec<ProjPoint<K>> {
        proj_points(self.field, 2)
            .into_iter()
            .map(|st| ProjPoint::new(self.field, self.point(&st[0], &st[1])).unwrap())
            .collect()
    }
    pub fn contains(&self, p: &[K::Elem]) -> bool {
        rank(self.field, &[self.rows[0].clone(), self.rows[1].clone(), p.to_vec()]) == 2
    }
    pub fn ideal(&self) -> GradedIdeal<K> {
        GradedIdeal::of_span(self.field, &self.rows, self.dim())
    }
    pub fn meets(&self, o: &LineP<K>) -> bool {
        let all = [self.rows.clone(), o.rows.clone()].concat();
        rank(self.field, &all) < 4
    }
    /// Image under `y -> sum y_i basis_i`.
    pub fn lift(&self, basis: &[Vec<K::Elem>]) -> LineP<K> {
        let a = lift(self.field, basis, &self.rows[0]);
        let b = lift(self.field, basis, &self.rows[1]);
        LineP::new(self.field, &a, &b).expect("lift of a line along an injective map")
    }
    pub fn to_json(&self) -> Value {
        let s = |v: &Vec<K::Elem>| v.iter().map(|c| self.field.fmt_elem(c)).collect::<Vec<_>>();
        json!([s(&self.rows[0]), s(&self.rows[1])])
    }
}

fn lift<K: Field>(k: K, basis: &[Vec<K::Elem>], y: &[K::Elem]) -> Vec<K::Elem> {
    let n = basis[0].len();
    let mut out = vec![k.zero(); n];
    for (b, c) in basis.iter().zip(y) {
        for (o, x) in out.iter_mut().zip(b) {
            *o = k.add(o, &k.mul(c, x));
        }
    }
    out
}

/// `f` vanishes identically on the line: a cubic vanishing at four points of
/// the line is zero on it.
fn line_on<K: Field>(f: &MultiPoly<K>, a: &[K::Elem], b: &[K::Elem]) -> bool {
    let k = f.field();
    let one = k.one();
    let m1 = k.neg(&one);
    let two = k.from_i64(2);
    let deg = f.total_degree().unwrap_or(0) as usize;
    if !k.is_zero(&f.eval(a)) || !k.is_zero(&f.eval(b)) {
        return false;
    }
    let ts = [one.clone(), m1, two.clone(), k.from_i64(3), k.from_i64(4)];
    ts.iter()
        .take(deg.saturating_sub(1))
        .all(|t| k.is_zero(&f.eval(&combo(k, &one, a, t, b))))
}

/// All lines of `P^{n-1}`, in reduced row echelon form.
pub fn all_lines<K: Field>(k: K, n: usize) -> Vec<LineP<K>> {
    let elems = k.search_elements(0);
    let q = elems.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            // free slots: row 0 at c > i, c != j; row 1 at c > j
            let slots: Vec<(usize, usize)> = (i + 1..n)
                .filter(|&c| c != j)
                .map(|c| (0, c))
                .chain((j + 1..n).map(|c| (1, c)))
                .collect();
            let total = q.pow(slots.len() as u32);
            for code in 0..total {
                let mut r = [vec![k.zero(); n], vec![k.zero(); n]];
                r[0][i] = k.one();
                r[1][j] = k.one();
                let mut c = code;
                for &(row, col) in &slots {
                    r[row][col] = elems[c % q].clone();
                    c /= q;
                }
                let [r0, r1] = r;
                out.push(LineP { field: k, rows: [r0, r1] });
            }
        }
    }
    out
}

/// All rational lines on the hypersurface `{f = 0}` in `P^{n-1}`, found by
/// scanning every line of the ambient space.
pub fn find_lines_on_surface<K: Field>(f: &MultiPoly<K>) -> Result<Vec<LineP<K>>, CurveError> {
    let k = f.field();
    check_field(k)?;
    Ok(all_lines(k, f.nvars())
        .into_iter()
        .filter(|l| line_on(f, &l.rows[0], &l.rows[1]))
        .collect())
}

/// Lines on `{f = 0}` through the point `x`, one per rational direction.
pub fn lines_through_point<K: Field>(f: &MultiPoly<K>, x: &[K::Elem]) -> Result<Vec<LineP<K>>, CurveError> {
    let k = f.field();
    check_field(k)?;
    let n = f.nvars();
    if !k.is_zero(&f.eval(x)) {
        return Ok(Vec::new());
    }
    let basis = complete_basis(k, &[x.to_vec()], n);
    let rest = &basis[1..];
    let mut out = Vec::new();
    for y in proj_points(k, n - 1) {
        let v = lift(k, rest, &y);
        if line_on(f, x, &v) {
            out.push(LineP::new(k, x, &v).unwrap());
        }
    }
    Ok(out)
}

/// A conic in a plane: `form` is a ternary quadric in the coordinates given
/// by `basis` (three ambient vectors spanning the plane).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneConic<K: Field> {
    pub basis: [Vec<K::Elem>; 3],
    pub form: MultiPoly<K>,
}

impl<K: Field> PlaneConic<K> {
    pub fn field(&self) -> K {
        self.form.field()
    }
    pub fn rank(&self) -> usize {
        quadric_rank(&self.form).expect("ternary quadric")
    }
    pub fn point(&self, uvw: &[K::Elem]) -> Vec<K::Elem> {
        lift(self.field(), &self.basis, uvw)
    }
    /// Rational points of the conic, as ambient points.
    pub fn points(&self) -> Vec<ProjPoint<K>> {
        let k = self.field();
        proj_points(k, 3)
            .into_iter()
            .filter(|y| k.is_zero(&self.form.eval(y)))
            .map(|y| ProjPoint::new(k, self.point(&y)).unwrap())
            .collect()
    }
    /// The quadric as a form on the ambient space (any extension off the
    /// plane works; the complementary coordinates are dropped).
    pub fn ambient_quadric(&self) -> MultiPoly<K> {
        let k = self.field();
        let n = self.basis[0].len();
        let full = complete_basis(k, &self.basis, n);
        let p = Matrix::from_rows(k, full).transpose();
        let inv = p.inverse().expect("completed basis");
        let images: Vec<MultiPoly<K>> = (0..3).map(|i| MultiPoly::linear(k, inv.row(i))).collect();
        self.form.substitute(&images)
    }
    pub fn ideal(&self) -> GradedIdeal<K> {
        let k = self.field();
        let n = self.basis[0].len();
        GradedIdeal::of_span(k, &self.basis, n).add_generators(&[self.ambient_quadric()])
    }
    pub fn lift(&self, basis: &[Vec<K::Elem>]) -> PlaneConic<K> {
        let k = self.field();
        PlaneConic {
            basis: self.basis.clone().map(|b| lift(k, basis, &b)),
            form: self.form.clone(),
        }
    }
    pub fn contains(&self, p: &[K::Elem]) -> bool {
        self.ideal().generators().iter().all(|g| self.field().is_zero(&g.eval(p)))
    }
}

/// The conic residual to the line `l` in the section of `{s = 0}` by the
/// plane `{plane . x = 0}`.
pub fn residual_conic<K: Field>(
    s: &MultiPoly<K>,
    l: &LineP<K>,
    plane: &[K::Elem],
) -> Result<PlaneConic<K>, CurveError> {
    let k = s.field();
    let n = s.nvars();
    let [a, b] = l.rows.clone();
    if !k.is_zero(&dot(k, plane, &a)) || !k.is_zero(&dot(k, plane, &b)) {
        return Err(CurveError::LineNotInPlane);
    }
    let c = annihilator(k, &[plane.to_vec()], n)
        .into_iter()
        .find(|c| rank(k, &[a.clone(), b.clone(), c.clone()]) == 3)
        .ok_or(CurveError::LineNotInPlane)?;
    let basis = [a, b, c];
    let restricted = s.substitute(&span_images(k, &basis));
    if restricted.is_zero() {
        return Err(CurveError::PlaneOnSurface);
    }
    let w = MultiPoly::var(k, 3, 2);
    let form = restricted.div_exact(&w).ok_or(CurveError::LineNotOnSurface)?;
    Ok(PlaneConic { basis, form })
}

/// The reducible rational quartic `C2 + l + l'` on a cubic threefold:
/// `C2` is the conic residual to `l_a` in a plane of the hyperplane section,
/// `l` a line of the section disjoint from `l_a` (meeting `C2` at `x1`) and
/// `l'` a line of the threefold through `x2` on `C2`, leaving the hyperplane.
#[derive(Clone, Debug)]
pub struct QuarticWitness<K: Field> {
    pub hyperplane: Vec<K::Elem>,
    pub line_a: LineP<K>,
    pub conic: PlaneConic<K>,
    pub l: LineP<K>,
    pub l_prime: LineP<K>,
    pub x1: ProjPoint<K>,
    pub x2: ProjPoint<K>,
    pub ideal: GradedIdeal<K>,
    pub hilbert: HilbertPoly,
}

impl<K: Field> QuarticWitness<K> {
    pub fn to_json(&self) -> Value {
        let k = self.conic.field();
        json!({
            "hyperplane": self.hyperplane.iter().map(|c| k.fmt_elem(c)).collect::<Vec<_>>(),
            "line_a": self.line_a.to_json(),
            "conic_ideal": self.conic.ideal().generator_strings(),
            "l": self.l.to_json(),
            "l_prime": self.l_prime.to_json(),
            "x1": self.x1,
            "x2": self.x2,
            "ideal": self.ideal.generator_strings(),
            "hilbert": self.hilbert.to_string(),
        })
    }
}

/// Pencil of planes through a line of `P^3`, as linear forms.
fn planes_through<K: Field>(l: &LineP<K>) -> Vec<Vec<K::Elem>> {
    let k = l.field;
    let f = annihilator(k, &l.rows, l.dim());
    proj_points(k, 2)
        .into_iter()
        .map(|st| combo(k, &st[0], &f[0], &st[1], &f[1]))
        .collect()
}

/// A random rational point of `{f = 0}` on a random line, if that line
/// has one.
pub fn random_point_on<K: Field>(f: &MultiPoly<K>, rng: &mut Rng64) -> Option<Vec<K::Elem>> {
    let k = f.field();
    let n = f.nvars();
    let a = random_vector(k, n, rng);
    let b = random_vector(k, n, rng);
    let d = f.total_degree()? as usize;
    // coefficients of f(a + t b) by interpolation at t = 0..=d
    let ts: Vec<K::Elem> = (0..=d as i64).map(|t| k.from_i64(t)).collect();
    let ys: Vec<K::Elem> = ts.iter().map(|t| f.eval(&combo(k, &k.one(), &a, t, &b))).collect();
    let vander = Matrix::from_fn(k, d + 1, d + 1, |i, j| k.pow(&ts[i], j as u64));
    let c = vander.solve(&ys)?;
    if c.iter().all(|x| k.is_zero(x)) {
        return Some(a);
    }
    let t = k.univariate_roots(&c)?.into_iter().next()?;
    Some(combo(k, &k.one(), &a, &t, &b))
}

/// Rational lines of `x` through random rational points, collected until a
/// skew pair appears; the pair spans the returned hyperplane.
fn hyperplane_through_skew_lines<K: Field>(x: &CubicThreefold<K>, rng: &mut Rng64) -> Result<Option<Vec<K::Elem>>, CurveError> {
    let k = x.field();
    let mut lines: Vec<LineP<K>> = Vec::new();
    for _ in 0..POINT_SAMPLES {
        let Some(p) = random_point_on(x.form(), rng) else { continue };
        for l in lines_through_point(x.form(), &p)? {
            if let Some(m) = lines.iter().find(|m| !m.meets(&l)) {
                let span = [m.rows.clone(), l.rows.clone()].concat();
                return Ok(Some(annihilator(k, &span, 5).remove(0)));
            }
            lines.push(l);
        }
    }
    Ok(None)
}

/// Random points sampled per hyperplane search.
const POINT_SAMPLES: usize = 24;

/// Searches hyperplane sections for a quartic witness. Each attempt spans a
/// hyperplane by two skew lines of `x` found through random points, falling
/// back to a random hyperplane. Every attempt consumes randomness, so repeated
/// calls explore new sections.
pub fn build_rational_quartic<K: Field>(
    x: &CubicThreefold<K>,
    rng: &mut Rng64,
    attempts: usize,
) -> Result<QuarticWitness<K>, CurveError> {
    let k = x.field();
    check_field(k)?;
    if !cone_apex(x.form()).is_empty() {
        return Err(CurveError::Precondition("the cubic is a cone".into()));
    }
    for _ in 0..attempts {
        let h = match hyperplane_through_skew_lines(x, rng)? {
            Some(h) => h,
            None => random_vector(k, 5, rng),
        };
        if let Some(w) = quartic_in_section(x, &h)? {
            return Ok(w);
        }
    }
    Err(CurveError::Exhausted(attempts))
}

/// First quartic witness inside the hyperplane `{h . x = 0}`, scanning lines,
/// planes and conic points in their enumeration order.
pub fn quartic_in_section<K: Field>(
    x: &CubicThreefold<K>,
    h: &[K::Elem],
) -> Result<Option<QuarticWitness<K>>, CurveError> {
    let k = x.field();
    let f = x.form();
    let basis = annihilator(k, &[h.to_vec()], 5);
    let s = f.substitute(&span_images(k, &basis));
    if s.is_zero() {
        return Ok(None);
    }
    let lines = find_lines_on_surface(&s)?;
    for la in &lines {
        for lb in lines.iter().filter(|lb| !lb.meets(la)) {
            for plane in planes_through(la) {
                let conic = match residual_conic(&s, la, &plane) {
                    Ok(c) if c.rank() == 3 => c,
                    _ => continue,
                };
                let [a, b] = &lb.rows;
                let x1 = combo(k, &dot(k, &plane, b), a, &k.neg(&dot(k, &plane, a)), b);
                for y in conic.points() {
                    let x2 = y.coords();
                    if rank(k, &[x1.clone(), x2.to_vec()]) < 2 || la.contains(x2) {
                        continue;
                    }
                    let x2_up = lift(k, &basis, x2);
                    if f.gradient().iter().all(|g| k.is_zero(&g.eval(&x2_up))) {
                        continue;
                    }
                    let Some(lp) = lines_through_point(f, &x2_up)?
                        .into_iter()
                        .find(|l| !k.is_zero(&dot(k, h, &l.rows[1])) || !k.is_zero(&dot(k, h, &l.rows[0])))
                    else {
                        continue;
                    };
                    let w = assemble_quartic(h, &basis, la, &conic, lb, &x1, x2, lp)?;
                    if let Some(w) = w {
                        return Ok(Some(w));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn assemble_quartic<K: Field>(
    h: &[K::Elem],
    basis: &[Vec<K::Elem>],
    la: &LineP<K>,
    conic: &PlaneConic<K>,
    lb: &LineP<K>,
    x1: &[K::Elem],
    x2: &[K::Elem],
    l_prime: LineP<K>,
) -> Result<Option<QuarticWitness<K>>, CurveError> {
    let k = conic.field();
    let conic = conic.lift(basis);
    let l = lb.lift(basis);
    if l.meets(&l_prime) {
        return Ok(None);
    }
    let ideal = conic.ideal().intersect(&l.ideal()).intersect(&l_prime.ideal());
    let hilbert = ideal.hilbert_polynomial()?;
    if hilbert != HilbertPoly::from_ints(&[1, 4]) || ideal.dim_in_degree(1) != 0 {
        return Ok(None);
    }
    Ok(Some(QuarticWitness {
        hyperplane: h.to_vec(),
        line_a: la.lift(basis),
        conic,
        l,
        l_prime,
        x1: ProjPoint::new(k, lift(k, basis, x1)).unwrap(),
        x2: ProjPoint::new(k, lift(k, basis, x2)).unwrap(),
        ideal,
        hilbert,
    }))
}

/// Anchors for the cross-ratio identification of the directrix `D = y1 y2`
/// with the conic: `x_i` on the conic is matched with `y_i` on `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrollAnchors<K: Field> {
    pub y1: ProjPoint<K>,
    pub y2: ProjPoint<K>,
    pub x3: ProjPoint<K>,
}

/// First valid anchors: `y1` on `l` and `y2` on `l'` (other than `x1`, `x2`)
/// and `x3` a third conic point, taken in enumeration order. `skip` steps
/// through the choices of `(y1, y2)`.
pub fn default_anchors<K: Field>(w: &QuarticWitness<K>, skip: usize) -> Option<ScrollAnchors<K>> {
    let x3 = w
        .conic
        .points()
        .into_iter()
        .find(|p| *p != w.x1 && *p != w.x2)?;
    let y1s: Vec<_> = w.l.points().into_iter().filter(|p| *p != w.x1).collect();
    let y2s: Vec<_> = w.l_prime.points().into_iter().filter(|p| *p != w.x2).collect();
    let (i, j) = (skip % y1s.len(), (skip / y1s.len()) % y2s.len());
    Some(ScrollAnchors {
        y1: y1s[i].clone(),
        y2: y2s[j].clone(),
        x3,
    })
}

/// The cubic scroll swept by the lines joining matched points of the
/// directrix and the conic.
#[derive(Clone, Debug)]
pub struct ScrollWitness<K: Field> {
    pub ideal: GradedIdeal<K>,
    pub directrix: LineP<K>,
    pub anchors: ScrollAnchors<K>,
    /// `y3 = y1 + y2` on the directrix, matched with `x3`.
    pub y3: ProjPoint<K>,
    pub hilbert: HilbertPoly,
}

impl<K: Field> ScrollWitness<K> {
    pub fn to_json(&self) -> Value {
        json!({
            "ideal": self.ideal.generator_strings(),
            "directrix": self.directrix.to_json(),
            "y": [&self.anchors.y1, &self.anchors.y2, &self.y3],
            "x3": self.anchors.x3,
            "hilbert": self.hilbert.to_string(),
        })
    }
}

fn scale_vec<K: Field>(k: K, c: &K::Elem, v: &[K::Elem]) -> Vec<K::Elem> {
    v.iter().map(|x| k.mul(c, x)).collect()
}

pub fn cross_ratio_scroll<K: Field>(
    w: &QuarticWitness<K>,
    anchors: &ScrollAnchors<K>,
) -> Result<ScrollWitness<K>, CurveError> {
    let k = w.conic.field();
    let (x1, x2, x3) = (w.x1.coords(), w.x2.coords(), anchors.x3.coords());
    let (y1, y2) = (anchors.y1.coords(), anchors.y2.coords());
    if !w.l.contains(y1) || !w.l_prime.contains(y2) || anchors.y1 == w.x1 || anchors.y2 == w.x2 {
        return Err(CurveError::DegenerateAnchors("y1 must lie on l and y2 on l', away from the conic"));
    }
    if anchors.x3 == w.x1 || anchors.x3 == w.x2 || !w.conic.contains(x3) {
        return Err(CurveError::DegenerateAnchors("x3 must be a third point of the conic"));
    }
    let directrix = LineP::new(k, y1, y2).ok_or(CurveError::DegenerateAnchors("y1 = y2"))?;
    // conic through x1, x2, x3 in those coordinates: a uv + b uw + c vw
    let q = w.conic.ambient_quadric();
    let tern = q.substitute(&span_images(k, &[x1.to_vec(), x2.to_vec(), x3.to_vec()]));
    let co = |e: &[u32]| tern.coeff(Monomial::from_exps(e));
    let (a, b, c) = (co(&[1, 1, 0]), co(&[1, 0, 1]), co(&[0, 1, 1]));
    if [a.clone(), b.clone(), c.clone()].iter().any(|v| k.is_zero(v)) {
        return Err(CurveError::DegenerateAnchors("conic anchors are not in general position"));
    }
    // (s:t) -> (u, v, w) = (-a s (b s + c t), -a t (b s + c t), a^2 s t) sends
    // (1:0), (0:1), (c:-b) to x1, x2, x3, and s b y1 - t c y2 sends them to
    // y1, y2, y1 + y2.
    let n = 4;
    let var = |i| MultiPoly::var(k, n, i);
    let (s, t, ra, rb) = (var(0), var(1), var(2), var(3));
    let bs_ct = &s.scale(&b) + &t.scale(&c);
    let u = (&s * &bs_ct).scale(&k.neg(&a));
    let v = (&t * &bs_ct).scale(&k.neg(&a));
    let ww = (&s * &t).scale(&k.mul(&a, &a));
    let by1 = scale_vec(k, &b, y1);
    let cy2 = scale_vec(k, &k.neg(&c), y2);
    let images: Vec<MultiPoly<K>> = (0..5)
        .map(|j| {
            let d = &s.scale(&by1[j]) + &t.scale(&cy2[j]);
            let cc = &(&u.scale(&x1[j]) + &v.scale(&x2[j])) + &ww.scale(&x3[j]);
            &(&ra * &d) + &(&rb * &cc)
        })
        .collect();
    let quadrics = forms_vanishing_on(k, 5, 2, &images);
    let ideal = GradedIdeal::new(k, 5, quadrics)?;
    let hilbert = ideal.hilbert_polynomial()?;
    // (m + 1)(3m + 2)/2
    let expected = HilbertPoly::new(
        [2, 5, 3]
            .iter()
            .map(|&v| num_rational::BigRational::new(v.into(), 2.into()))
            .collect(),
    );
    if hilbert != expected {
        return Err(CurveError::CheckFailed(format!("scroll Hilbert polynomial {hilbert}")));
    }
    if !w.ideal.contains_ideal(&ideal) || !directrix.ideal().contains_ideal(&ideal) {
        return Err(CurveError::CheckFailed("scroll misses the quartic or the directrix".into()));
    }
    let y3 = ProjPoint::new(k, combo(k, &k.one(), y1, &k.one(), y2)).unwrap();
    Ok(ScrollWitness {
        ideal,
        directrix,
        anchors: anchors.clone(),
        y3,
        hilbert,
    })
}

/// The residual elliptic quintic with its five quadrics.
#[derive(Clone, Debug)]
pub struct QuinticCurve<K: Field> {
    pub ideal: GradedIdeal<K>,
    pub quadrics: Vec<MultiPoly<K>>,
    pub hilbert: HilbertPoly,
    /// Hilbert function of the coordinate ring in degrees `0..=8`.
    pub hilbert_values: Vec<u64>,
}

impl<K: Field> QuinticCurve<K> {
    pub fn to_json(&self) -> Value {
        json!({
            "quadrics": self.quadrics.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
            "hilbert": self.hilbert.to_string(),
            "hilbert_values": self.hilbert_values,
        })
    }
}

/// `I_C = ((F) + I_Sigma) : I_C4`, saturated, checked to be a nondegenerate
/// curve of degree 5 and genus 1 cut out by five quadrics.
pub fn residual_quintic<K: Field>(
    x: &CubicThreefold<K>,
    sw: &ScrollWitness<K>,
    w: &QuarticWitness<K>,
) -> Result<QuinticCurve<K>, CurveError> {
    let k = x.field();
    if !w.ideal.contains(x.form()) {
        return Err(CurveError::Precondition("the quartic is not on the threefold".into()));
    }
    let base = sw.ideal.add_generators(&[x.form().clone()]);
    let ideal = base.quotient(&w.ideal).saturate_irrelevant();
    let hilbert = ideal.hilbert_polynomial()?;
    let hilbert_values: Vec<u64> = (0..=8).map(|d| ideal.hilbert_function(d)).collect();
    if hilbert != HilbertPoly::from_ints(&[0, 5]) {
        return Err(CurveError::CheckFailed(format!("residual Hilbert polynomial {hilbert}")));
    }
    if (1..=8).any(|m| hilbert_values[m] != 5 * m as u64) {
        return Err(CurveError::CheckFailed(format!("residual Hilbert function {hilbert_values:?}")));
    }
    if ideal.dim_in_degree(1) != 0 {
        return Err(CurveError::CheckFailed("residual curve is degenerate".into()));
    }
    let quadrics = ideal.degree_part(2);
    if quadrics.len() != 5 {
        return Err(CurveError::CheckFailed(format!("{} quadrics through the residual curve", quadrics.len())));
    }
    let by_quadrics = GradedIdeal::new(k, 5, quadrics.clone())?;
    if !by_quadrics.same_as(&ideal) {
        return Err(CurveError::CheckFailed("the quadrics do not generate the ideal".into()));
    }
    Ok(QuinticCurve {
        ideal,
        quadrics,
        hilbert,
        hilbert_values,
    })
}

/// Everything produced on the way to the quintic.
#[derive(Clone, Debug)]
pub struct QuinticWitness<K: Field> {
    pub quartic: QuarticWitness<K>,
    pub scroll: ScrollWitness<K>,
    pub curve: QuinticCurve<K>,
    pub attempts: usize,
}

impl<K: Field> QuinticWitness<K> {
    pub fn to_json(&self) -> Value {
        json!({
            "quartic": self.quartic.to_json(),
            "scroll": self.scroll.to_json(),
            "quintic": self.curve.to_json(),
            "attempts": self.attempts,
        })
    }
}

/// Anchor choices tried per quartic witness.
const ANCHOR_TRIES: usize = 4;

/// Quartic, scroll and residual quintic on `x`, trying up to `retries`
/// hyperplane sections.
pub fn forge_quintic<K: Field>(
    x: &CubicThreefold<K>,
    rng: &mut Rng64,
    retries: usize,
) -> Result<QuinticWitness<K>, CurveError> {
    for attempt in 1..=retries {
        let w = match build_rational_quartic(x, rng, 1) {
            Ok(w) => w,
            Err(CurveError::Exhausted(_)) => continue,
            Err(e) => return Err(e),
        };
        for skip in 0..ANCHOR_TRIES {
            let Some(anchors) = default_anchors(&w, skip) else { break };
            let res = cross_ratio_scroll(&w, &anchors)
                .and_then(|sw| residual_quintic(x, &sw, &w).map(|c| (sw, c)));
            match res {
                Ok((scroll, curve)) => {
                    return Ok(QuinticWitness {
                        quartic: w,
                        scroll,
                        curve,
                        attempts: attempt,
                    })
                }
                Err(CurveError::CheckFailed(_) | CurveError::DegenerateAnchors(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Err(CurveError::Exhausted(retries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_poly;

    #[test]
    fn point_and_line_counts() {
        let k = PrimeField::new(5).unwrap();
        assert_eq!(proj_points(k, 3).len(), 31);
        assert_eq!(proj_points(k, 1).len(), 1);
        // (q^2 + 1)(q^2 + q + 1) lines in P^3
        assert_eq!(all_lines(k, 4).len(), 26 * 31);
        let lines = all_lines(k, 4);
        let set: std::collections::HashSet<_> = lines.iter().cloned().collect();
        assert_eq!(set.len(), lines.len());
    }

    #[test]
    fn fermat_surface_has_27_lines_mod_7() {
        let k = PrimeField::new(7).unwrap();
        let s = parse_poly(k, 4, "x0^3 + x1^3 + x2^3 + x3^3").unwrap();
        let lines = find_lines_on_surface(&s).unwrap();
        assert_eq!(lines.len(), 27);
        for l in &lines {
            let img = s.substitute(&span_images(k, &l.rows));
            assert!(img.is_zero());
        }
    }

    #[test]
    fn residual_conic_of_a_split_section() {
        let k = PrimeField::new(11).unwrap();
        let s = parse_poly(k, 4, "x0*x1*x2 + x3*(x0^2 + x1^2 + x2^2 + x3^2)").unwrap();
        let l = LineP::new(k, &[0, 1, 0, 0], &[0, 0, 1, 0]).unwrap();
        let c = residual_conic(&s, &l, &[0, 0, 0, 1]).unwrap();
        let rebuilt = &c.form * &MultiPoly::var(k, 3, 2);
        assert_eq!(rebuilt, s.substitute(&span_images(k, &c.basis)));
        assert_eq!(c.rank(), 2);
        assert!(matches!(
            residual_conic(&s, &l, &[0, 1, 0, 0]),
            Err(CurveError::LineNotInPlane)
        ));
    }
}
