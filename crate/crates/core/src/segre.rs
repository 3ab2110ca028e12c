//! Singular loci of cubic threefolds: cones, non-normal and non-integral
//! cubics, double curves and isolated double points, plus the singularities
//! of hyperplane sections.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::change::{annihilator, apply_change, LinearChange, ProjPoint};
use crate::field::Field;
use crate::hilbert::HilbertPoly;
use crate::ideal::{GradedIdeal, IdealError};
use crate::linalg::{complete_basis, Matrix};
use crate::mono::{monomials_of_degree, Monomial};
use crate::points::{local_length, point_count, radical, rational_points, scheme_length};
use crate::poly::{degree_basis, HomogeneousForm, MultiPoly};
use crate::polymatrix::PolyMatrix;
use crate::quadric::quadric_rank;
use crate::Rng64;

#[derive(Debug, Error)]
pub enum SegreError {
    #[error("expected a cubic form in {0} variables")]
    NotCubic(usize),
    #[error("point is not a singular point of the hypersurface")]
    NotSingular,
    #[error("hyperplane section has non-isolated singularities")]
    NonIsolated,
    #[error("undetermined: {0}")]
    Undetermined(String),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// `X = {F = 0}` in `P^4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicThreefold<K: Field> {
    f: HomogeneousForm<K>,
}

impl<K: Field> CubicThreefold<K> {
    pub fn new(f: MultiPoly<K>) -> Result<Self, SegreError> {
        if f.nvars() != 5 {
            return Err(SegreError::NotCubic(5));
        }
        match HomogeneousForm::new(f) {
            Ok(h) if h.degree() == 3 => Ok(CubicThreefold { f: h }),
            _ => Err(SegreError::NotCubic(5)),
        }
    }
    pub fn form(&self) -> &MultiPoly<K> {
        self.f.poly()
    }
    pub fn field(&self) -> K {
        self.f.poly().field()
    }
    pub fn apply_change(&self, g: &LinearChange<K>) -> Self {
        CubicThreefold::new(apply_change(self.form(), g)).expect("changes preserve degree")
    }
}

pub fn random_vector<K: Field>(k: K, n: usize, rng: &mut Rng64) -> Vec<K::Elem> {
    loop {
        let v: Vec<K::Elem> = (0..n).map(|_| k.random(rng)).collect();
        if v.iter().any(|c| !k.is_zero(c)) {
            return v;
        }
    }
}

/// A random hyperplane containing the given points.
pub fn random_hyperplane_through<K: Field>(
    k: K,
    n: usize,
    pts: &[ProjPoint<K>],
    rng: &mut Rng64,
) -> Vec<K::Elem> {
    let vs: Vec<Vec<K::Elem>> = pts.iter().map(|p| p.coords().to_vec()).collect();
    let ann = annihilator(k, &vs, n);
    loop {
        let mut h = vec![k.zero(); n];
        for a in &ann {
            let c = k.random(rng);
            for (x, y) in h.iter_mut().zip(a) {
                *x = k.add(x, &k.mul(&c, y));
            }
        }
        if h.iter().any(|c| !k.is_zero(c)) {
            return h;
        }
    }
}

/// The ideal of partial derivatives (zero partials dropped).
pub fn jacobian_ideal<K: Field>(f: &MultiPoly<K>) -> GradedIdeal<K> {
    let g = f.gradient().into_iter().filter(|p| !p.is_zero()).collect();
    GradedIdeal::new(f.field(), f.nvars(), g).expect("partials are homogeneous")
}

/// Saturated Jacobian ideal; its zero locus is the singular locus.
pub fn singular_scheme<K: Field>(f: &MultiPoly<K>) -> GradedIdeal<K> {
    jacobian_ideal(f).saturate_irrelevant()
}

pub fn hessian<K: Field>(f: &MultiPoly<K>) -> PolyMatrix<K> {
    let n = f.nvars();
    let g = f.gradient();
    let rows = (0..n).map(|i| (0..n).map(|j| g[i].partial(j)).collect()).collect();
    PolyMatrix::from_rows(f.field(), n, rows)
}

/// Rank of the quadric tangent cone at a singular point, read off the Hessian.
pub fn point_rank<K: Field>(f: &MultiPoly<K>, p: &ProjPoint<K>) -> usize {
    hessian(f).eval(p.coords()).rank()
}

/// Vertex directions: vectors `v` with `sum v_i dF/dx_i = 0` identically.
/// Returns a basis of the apex space; empty when `X` is not a cone.
pub fn cone_apex<K: Field>(f: &MultiPoly<K>) -> Vec<ProjPoint<K>> {
    let k = f.field();
    let n = f.nvars();
    let d = f.total_degree().unwrap_or(0);
    if d == 0 {
        return Vec::new();
    }
    let (basis, index) = degree_basis(n, d - 1);
    let cols: Vec<Vec<K::Elem>> = f
        .gradient()
        .iter()
        .map(|g| g.coeff_vector(&basis, &index))
        .collect();
    let m = Matrix::from_fn(k, basis.len(), n, |r, c| cols[c][r].clone());
    m.kernel()
        .into_iter()
        .map(|v| ProjPoint::new(k, v).unwrap())
        .collect()
}

/// `F = X0 q + c` after moving the point to `[1:0:...:0]`.
#[derive(Clone, Debug)]
pub struct TangentCone<K: Field> {
    pub point: ProjPoint<K>,
    pub change: LinearChange<K>,
    pub q: MultiPoly<K>,
    pub c: MultiPoly<K>,
    pub rank: usize,
}

impl<K: Field> TangentCone<K> {
    /// A triple point: the quadratic part vanishes.
    pub fn is_triple(&self) -> bool {
        self.q.is_zero()
    }
}

pub fn tangent_cone_at<K: Field>(
    f: &MultiPoly<K>,
    p: &ProjPoint<K>,
) -> Result<TangentCone<K>, SegreError> {
    let k = f.field();
    let n = f.nvars();
    let g = crate::points::chart_at(p);
    let moved = apply_change(f, &g);
    let mut q = Vec::new();
    let mut c = Vec::new();
    for (m, a) in moved.terms() {
        match m.exp(0) {
            0 => c.push((*m, a.clone())),
            1 => q.push((m.with_exp(0, 0), a.clone())),
            _ => return Err(SegreError::NotSingular),
        }
    }
    let q = MultiPoly::from_terms(k, n, q);
    let rank = if q.is_zero() { 0 } else { quadric_rank(&q).expect("quadratic") };
    Ok(TangentCone {
        point: p.clone(),
        change: g,
        q,
        c: MultiPoly::from_terms(k, n, c),
        rank,
    })
}

/// Binary form `F(a s + b t)` as coefficients of `s^(d-i) t^i`.
fn restrict_to_line<K: Field>(f: &MultiPoly<K>, a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
    let k = f.field();
    let imgs: Vec<MultiPoly<K>> = (0..f.nvars())
        .map(|i| {
            MultiPoly::from_terms(
                k,
                2,
                vec![
                    (Monomial::var(0), a[i].clone()),
                    (Monomial::var(1), b[i].clone()),
                ],
            )
        })
        .collect();
    let r = f.substitute(&imgs);
    let d = f.total_degree().unwrap_or(0);
    (0..=d)
        .map(|i| r.coeff(Monomial::from_exps(&[d - i, i])))
        .collect()
}

/// Split off a linear factor defined over the base field.
///
/// Every rational linear factor `l` has a rational root on each line where
/// `F` does not vanish identically, so hyperplanes through one root on each
/// of `n - 1` random lines exhaust the candidates.
pub fn factor_off_linear<K: Field>(
    f: &MultiPoly<K>,
    rng: &mut Rng64,
) -> Result<Option<(MultiPoly<K>, MultiPoly<K>)>, SegreError> {
    let k = f.field();
    let n = f.nvars();
    let d = f.total_degree().unwrap_or(0);
    if d <= 1 {
        return Ok(None);
    }
    'attempt: for _ in 0..12 {
        let mut root_sets: Vec<Vec<Vec<K::Elem>>> = Vec::new();
        let mut guard = 0;
        while root_sets.len() < n - 1 {
            guard += 1;
            if guard > 200 {
                continue 'attempt;
            }
            let a = random_vector(k, n, rng);
            let b = random_vector(k, n, rng);
            let bin = restrict_to_line(f, &a, &b);
            if k.is_zero(&bin[d as usize]) || bin.iter().all(|c| k.is_zero(c)) {
                continue;
            }
            // roots u of sum bin[i] u^i give points a + u b
            let Some(roots) = k.univariate_roots(&bin) else {
                continue 'attempt;
            };
            if roots.is_empty() {
                return Ok(None);
            }
            let pts = roots
                .iter()
                .map(|u| a.iter().zip(&b).map(|(x, y)| k.add(x, &k.mul(u, y))).collect())
                .collect();
            root_sets.push(pts);
        }
        let mut idx = vec![0usize; n - 1];
        let mut degenerate = false;
        loop {
            let pts: Vec<Vec<K::Elem>> =
                idx.iter().enumerate().map(|(i, &j)| root_sets[i][j].clone()).collect();
            let ann = annihilator(k, &pts, n);
            if ann.len() == 1 {
                let l = MultiPoly::linear(k, &ann[0]);
                if let Some(q) = f.div_exact(&l) {
                    return Ok(Some((l, q)));
                }
            } else {
                degenerate = true;
            }
            // next index tuple
            let mut i = 0;
            loop {
                if i == n - 1 {
                    if degenerate {
                        continue 'attempt;
                    }
                    return Ok(None);
                }
                idx[i] += 1;
                if idx[i] < root_sets[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }
    Err(SegreError::Undetermined(
        "linear factor search inconclusive".into(),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SegreKind {
    Smooth,
    IsolatedDoublePoints,
    DoubleCurve,
    Cone,
    NonNormalPlane,
    NonIntegral,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CurveKind {
    Line,
    Conic,
    TwoLines,
    ThreeConcurrentLines,
    RationalQuartic,
    TwoConicsMeeting,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CurveType {
    First,
    Second,
}

/// Conventional name of a double point by tangent-cone rank.
pub fn node_label(rank: usize) -> &'static str {
    match rank {
        3 | 4 => "conic node",
        2 => "binode",
        1 => "unode",
        _ => "triple point",
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedPoint<K: Field> {
    pub point: ProjPoint<K>,
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct DoubleCurve<K: Field> {
    pub kind: CurveKind,
    pub curve_type: CurveType,
    /// Saturated ideal of the reduced curve.
    pub ideal: GradedIdeal<K>,
    pub hilbert: HilbertPoly,
    /// Largest Hessian rank along the curve.
    pub generic_rank: usize,
    /// Rational points of the curve with their ranks.
    pub samples: Vec<RankedPoint<K>>,
    /// Singular points off the curve.
    pub extra_points: Vec<RankedPoint<K>>,
    /// Number of singular points off the curve over the algebraic closure.
    pub extra_count: u64,
}

#[derive(Clone, Debug)]
pub struct SegreReport<K: Field> {
    pub kind: SegreKind,
    pub singular_hilbert: HilbertPoly,
    /// Rational isolated singular points.
    pub points: Vec<RankedPoint<K>>,
    /// Isolated singular points over the algebraic closure.
    pub closure_count: u64,
    pub curve: Option<DoubleCurve<K>>,
    /// Basis of the vertex space of a cone.
    pub apex: Vec<ProjPoint<K>>,
    /// Two linear forms cutting out the double plane.
    pub plane: Option<(MultiPoly<K>, MultiPoly<K>)>,
    pub factors: Option<(MultiPoly<K>, MultiPoly<K>)>,
}

#[derive(Serialize)]
struct PointOut {
    point: Vec<String>,
    rank: usize,
    label: &'static str,
}

#[derive(Serialize)]
struct ReportOut {
    kind: SegreKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    curve_kind: Option<CurveKind>,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    curve_type: Option<CurveType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    apex: Option<Vec<Vec<String>>>,
    singular_hilbert: String,
    points: Vec<PointOut>,
    ranks: Vec<usize>,
    closure_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    curve_ideal: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    curve_hilbert: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extra_points: Option<Vec<PointOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extra_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    plane_ideal: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    factors: Option<Vec<String>>,
}

fn point_out<K: Field>(p: &RankedPoint<K>) -> PointOut {
    PointOut {
        point: p.point.strings(),
        rank: p.rank,
        label: node_label(p.rank),
    }
}

impl<K: Field> SegreReport<K> {
    fn bare(kind: SegreKind, hp: HilbertPoly) -> Self {
        SegreReport {
            kind,
            singular_hilbert: hp,
            points: Vec::new(),
            closure_count: 0,
            curve: None,
            apex: Vec::new(),
            plane: None,
            factors: None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pts: Vec<&RankedPoint<K>> = match &self.curve {
            Some(c) => c.samples.iter().collect(),
            None => self.points.iter().collect(),
        };
        let out = ReportOut {
            kind: self.kind,
            curve_kind: self.curve.as_ref().map(|c| c.kind),
            curve_type: self.curve.as_ref().map(|c| c.curve_type),
            apex: (!self.apex.is_empty()).then(|| self.apex.iter().map(|p| p.strings()).collect()),
            singular_hilbert: self.singular_hilbert.to_string(),
            points: pts.iter().map(|p| point_out(p)).collect(),
            ranks: pts.iter().map(|p| p.rank).collect(),
            closure_count: self.closure_count,
            curve_ideal: self.curve.as_ref().map(|c| c.ideal.generator_strings()),
            curve_hilbert: self.curve.as_ref().map(|c| c.hilbert.to_string()),
            extra_points: self
                .curve
                .as_ref()
                .map(|c| c.extra_points.iter().map(point_out).collect()),
            extra_count: self.curve.as_ref().map(|c| c.extra_count),
            plane_ideal: self
                .plane
                .as_ref()
                .map(|(a, b)| vec![a.to_string(), b.to_string()]),
            factors: self
                .factors
                .as_ref()
                .map(|(l, q)| vec![l.to_string(), q.to_string()]),
        };
        serde_json::to_value(out).expect("report serializes")
    }
}

impl<K: Field> fmt::Display for SegreReport<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind: {:?}", self.kind)?;
        writeln!(f, "singular scheme Hilbert polynomial: {}", self.singular_hilbert)?;
        match self.kind {
            SegreKind::NonIntegral => {
                let (l, q) = self.factors.as_ref().unwrap();
                writeln!(f, "linear factor: {l}")?;
                writeln!(f, "quadric factor: {q}")?;
            }
            SegreKind::Cone => {
                for p in &self.apex {
                    writeln!(f, "apex direction: {p}")?;
                }
            }
            SegreKind::NonNormalPlane => {
                let (a, b) = self.plane.as_ref().unwrap();
                writeln!(f, "double plane: {a} = {b} = 0")?;
            }
            SegreKind::DoubleCurve => {
                let c = self.curve.as_ref().unwrap();
                writeln!(f, "curve: {:?}, {:?} type", c.kind, c.curve_type)?;
                writeln!(f, "curve Hilbert polynomial: {}", c.hilbert)?;
                writeln!(f, "curve ideal: {}", c.ideal.generator_strings().join(", "))?;
                for p in &c.samples {
                    writeln!(f, "curve point {} rank {}", p.point, p.rank)?;
                }
                writeln!(f, "singular points off the curve: {}", c.extra_count)?;
                for p in &c.extra_points {
                    writeln!(f, "  {} rank {} ({})", p.point, p.rank, node_label(p.rank))?;
                }
            }
            SegreKind::IsolatedDoublePoints => {
                writeln!(f, "singular points over the closure: {}", self.closure_count)?;
                for p in &self.points {
                    writeln!(f, "  {} rank {} ({})", p.point, p.rank, node_label(p.rank))?;
                }
            }
            SegreKind::Smooth => {}
        }
        Ok(())
    }
}

/// Degree-`d` forms vanishing on every scheme in `ideals`.
fn common_forms<K: Field>(ideals: &[GradedIdeal<K>], n: usize, d: u32) -> Vec<MultiPoly<K>> {
    let k = ideals[0].field();
    let basis = monomials_of_degree(n, d);
    let mut rows: Vec<Vec<K::Elem>> = Vec::new();
    for i in ideals {
        let nfs: Vec<MultiPoly<K>> = basis
            .iter()
            .map(|m| i.reduce(&MultiPoly::monomial(k, n, *m, k.one())))
            .collect();
        let mut std: Vec<Monomial> = nfs.iter().flat_map(|p| p.terms().iter().map(|t| t.0)).collect();
        std.sort();
        std.dedup();
        for s in std {
            rows.push(nfs.iter().map(|p| p.coeff(s)).collect());
        }
    }
    if rows.is_empty() {
        return basis
            .iter()
            .map(|m| MultiPoly::monomial(k, n, *m, k.one()))
            .collect();
    }
    Matrix::from_rows(k, rows)
        .kernel()
        .into_iter()
        .map(|v| MultiPoly::from_coeff_vector(k, n, &basis, &v))
        .collect()
}

/// Whether the reduced curve `V(i)` has a singular point.
fn curve_is_singular<K: Field>(i: &GradedIdeal<K>) -> Result<bool, SegreError> {
    let gens = i.minimal_generators();
    let n = i.nvars();
    let codim = n - 2;
    let rows = gens.iter().map(|g| g.gradient()).collect();
    let jac = PolyMatrix::from_rows(i.field(), n, rows);
    let minors = jac.minors(codim);
    let s = i.add_generators(&minors);
    Ok(!s.hilbert_polynomial()?.is_zero())
}

fn curve_kind<K: Field>(i: &GradedIdeal<K>, hp: &HilbertPoly) -> Result<CurveKind, SegreError> {
    let k = i.field();
    let n = i.nvars();
    let e = hp.scheme_degree();
    let genus_one_minus = hp.constant();
    let rational = genus_one_minus == num_rational::BigRational::from_integer(1.into());
    let linear: Vec<Vec<K::Elem>> = i
        .degree_part(1)
        .iter()
        .map(|l| {
            (0..n)
                .map(|j| l.coeff(Monomial::var(j)))
                .collect()
        })
        .collect();
    Ok(match e {
        1 => CurveKind::Line,
        2 if linear.len() == n - 3 && rational => {
            // the conic in its plane: rank 3 smooth, rank 2 a line pair
            let mut rows = linear.clone();
            rows = complete_basis(k, &rows, n);
            // put plane coordinates first
            rows.rotate_left(linear.len());
            let g = LinearChange::from_forms(k, rows).expect("basis");
            let moved = i.apply_change(&g);
            let q = moved
                .degree_part(2)
                .into_iter()
                .map(|p| {
                    let t = p
                        .terms()
                        .iter()
                        .filter(|(m, _)| (3..n).all(|j| m.exp(j) == 0))
                        .cloned()
                        .collect();
                    MultiPoly::from_terms(k, n, t)
                })
                .find(|p| !p.is_zero());
            match q.map(|q| quadric_rank(&q).unwrap()) {
                Some(3) => CurveKind::Conic,
                Some(2) => CurveKind::TwoLines,
                _ => CurveKind::Other,
            }
        }
        3 if rational && linear.len() == n - 4 && curve_is_singular(i)? => {
            CurveKind::ThreeConcurrentLines
        }
        4 if rational && linear.is_empty() => {
            if curve_is_singular(i)? {
                CurveKind::TwoConicsMeeting
            } else {
                CurveKind::RationalQuartic
            }
        }
        _ => CurveKind::Other,
    })
}

/// Reduced one-dimensional part of the singular scheme, recovered from the
/// radicals of hyperplane slices.
fn reduced_curve<K: Field>(
    j: &GradedIdeal<K>,
    rng: &mut Rng64,
) -> Result<(GradedIdeal<K>, Vec<GradedIdeal<K>>), SegreError> {
    let k = j.field();
    let n = j.nvars();
    let mut slices: Vec<(u64, GradedIdeal<K>)> = Vec::new();
    let mut tries = 0;
    while slices.len() < 8 && tries < 40 {
        tries += 1;
        let h = MultiPoly::linear(k, &random_vector(k, n, rng));
        let r = radical(&j.add_generators(&[h]))?;
        let c = r.hilbert_polynomial()?.scheme_degree();
        if c > 0 {
            slices.push((c, r));
        }
    }
    let e = slices
        .iter()
        .map(|s| s.0)
        .min()
        .ok_or_else(|| SegreError::Undetermined("no hyperplane slice meets the curve".into()))?;
    let good: Vec<GradedIdeal<K>> = slices
        .into_iter()
        .filter(|s| s.0 == e)
        .map(|s| s.1)
        .collect();
    if good.len() < 5 {
        return Err(SegreError::Undetermined("too few generic slices".into()));
    }
    for top in 2..=3 {
        let mut forms = Vec::new();
        for d in 1..=top {
            forms.extend(common_forms(&good, n, d));
        }
        let cand = GradedIdeal::new(k, n, forms)?.saturate_irrelevant();
        let hp = cand.hilbert_polynomial()?;
        if hp.dimension() == 1
            && hp.scheme_degree() == e
            && j.generators().iter().all(|g| cand.contains(g))
        {
            return Ok((cand.tidy(), good));
        }
    }
    Err(SegreError::Undetermined("could not recover the double curve".into()))
}

fn find_plane<K: Field>(
    f: &MultiPoly<K>,
    j: &GradedIdeal<K>,
    rng: &mut Rng64,
) -> Result<(MultiPoly<K>, MultiPoly<K>), SegreError> {
    let k = f.field();
    let n = f.nvars();
    for _ in 0..10 {
        let mut sets = Vec::new();
        for _ in 0..3 {
            let h1 = MultiPoly::linear(k, &random_vector(k, n, rng));
            let h2 = MultiPoly::linear(k, &random_vector(k, n, rng));
            let sl = j.add_generators(&[h1, h2]);
            if sl.hilbert_polynomial()?.dimension() != 0 {
                break;
            }
            sets.push(rational_points(&sl)?);
        }
        if sets.len() < 3 {
            continue;
        }
        for a in &sets[0] {
            for b in &sets[1] {
                for c in &sets[2] {
                    let vs = vec![a.coords().to_vec(), b.coords().to_vec(), c.coords().to_vec()];
                    let ann = annihilator(k, &vs, n);
                    if ann.len() != 2 {
                        continue;
                    }
                    let l1 = MultiPoly::linear(k, &ann[0]);
                    let l2 = MultiPoly::linear(k, &ann[1]);
                    let sq = GradedIdeal::new(k, n, vec![&l1 * &l1, &l1 * &l2, &l2 * &l2])?;
                    if sq.contains(f) {
                        return Ok((l1, l2));
                    }
                }
            }
        }
    }
    Err(SegreError::Undetermined("double plane not located".into()))
}

fn ranked<K: Field>(f: &MultiPoly<K>, pts: Vec<ProjPoint<K>>) -> Vec<RankedPoint<K>> {
    pts.into_iter()
        .map(|p| RankedPoint {
            rank: point_rank(f, &p),
            point: p,
        })
        .collect()
}

/// Classify the singular locus. Deterministic given the generator state.
pub fn classify<K: Field>(
    x: &CubicThreefold<K>,
    rng: &mut Rng64,
) -> Result<SegreReport<K>, SegreError> {
    let f = x.form();
    let j = singular_scheme(f);
    let hp = j.hilbert_polynomial()?;
    let dim = hp.dimension();
    // a reducible cubic is singular along a surface
    if dim >= 2 {
        if let Some(fac) = factor_off_linear(f, rng)? {
            let mut r = SegreReport::bare(SegreKind::NonIntegral, hp);
            r.factors = Some(fac);
            return Ok(r);
        }
    }
    let apex = cone_apex(f);
    if !apex.is_empty() {
        let mut r = SegreReport::bare(SegreKind::Cone, hp);
        r.apex = apex;
        return Ok(r);
    }
    match dim {
        -1 => Ok(SegreReport::bare(SegreKind::Smooth, hp)),
        0 => {
            let mut r = SegreReport::bare(SegreKind::IsolatedDoublePoints, hp);
            r.points = ranked(f, rational_points(&j)?);
            r.closure_count = point_count(&j)?;
            Ok(r)
        }
        1 => {
            let (ideal, slices) = reduced_curve(&j, rng)?;
            let chp = ideal.hilbert_polynomial()?;
            let kind = curve_kind(&ideal, &chp)?;
            let h = hessian(f);
            let first = h.minors(3).iter().any(|m| !ideal.contains(m));
            let mut samples = Vec::new();
            for s in &slices {
                for p in rational_points(s)? {
                    if samples.len() < 8 && !samples.contains(&p) {
                        samples.push(p);
                    }
                }
            }
            let extra = j.saturate(&ideal);
            let (extra_points, extra_count) = if extra.hilbert_polynomial()?.is_zero() {
                (Vec::new(), 0)
            } else {
                (ranked(f, rational_points(&extra)?), point_count(&extra)?)
            };
            let mut r = SegreReport::bare(SegreKind::DoubleCurve, hp);
            r.curve = Some(DoubleCurve {
                kind,
                curve_type: if first { CurveType::First } else { CurveType::Second },
                ideal,
                hilbert: chp,
                generic_rank: if first { 3 } else { 2 },
                samples: ranked(f, samples),
                extra_points,
                extra_count,
            });
            Ok(r)
        }
        2 => {
            let plane = find_plane(f, &j, rng)?;
            let mut r = SegreReport::bare(SegreKind::NonNormalPlane, hp);
            r.plane = Some(plane);
            Ok(r)
        }
        _ => Err(SegreError::Undetermined(
            "singular along a hypersurface without a rational linear factor".into(),
        )),
    }
}

/// Type of a double curve `Y` from the Hessian ranks along it.
pub fn double_curve_type<K: Field>(f: &MultiPoly<K>, y: &GradedIdeal<K>) -> CurveType {
    if hessian(f).minors(3).iter().any(|m| !y.contains(m)) {
        CurveType::First
    } else {
        CurveType::Second
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ade {
    A(u64),
    Other,
}

impl fmt::Display for Ade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ade::A(k) => write!(f, "A{k}"),
            Ade::Other => write!(f, "other"),
        }
    }
}

impl Serialize for Ade {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SlicePoint<K: Field> {
    pub point: ProjPoint<K>,
    pub rank: usize,
    pub milnor: u64,
    pub ade: Ade,
}

#[derive(Clone, Debug)]
pub struct SliceReport<K: Field> {
    pub hyperplane: MultiPoly<K>,
    /// Rational singular points of the slice, in the ambient coordinates.
    pub singular_points: Vec<SlicePoint<K>>,
    /// Singular points over the algebraic closure.
    pub closure_count: u64,
    /// Length of the singular scheme of the slice.
    pub total_milnor: u64,
}

/// Singularities of the cubic surface `X ∩ H`.
///
/// Milnor numbers are lengths of the Jacobian scheme at each point, which
/// agree with the Milnor number for the quasi-homogeneous ADE points.
pub fn slice_singularities<K: Field>(
    x: &CubicThreefold<K>,
    h: &[K::Elem],
) -> Result<SliceReport<K>, SegreError> {
    let k = x.field();
    let n = 5;
    let mut rows = complete_basis(k, &[h.to_vec()], n);
    rows.rotate_left(1);
    let g = LinearChange::from_forms(k, rows).map_err(|_| SegreError::NonIsolated)?;
    let moved = apply_change(x.form(), &g);
    let t: Vec<_> = moved
        .terms()
        .iter()
        .filter(|(m, _)| m.exp(n - 1) == 0)
        .cloned()
        .collect();
    let s = MultiPoly::from_terms(k, n, t).restrict_vars(n - 1);
    if s.is_zero() {
        return Err(SegreError::NonIsolated);
    }
    let js = singular_scheme(&s);
    if js.hilbert_polynomial()?.dimension() > 0 {
        return Err(SegreError::NonIsolated);
    }
    let closure_count = point_count(&js)?;
    let total_milnor = scheme_length(&js)?;
    let back = g.inverse();
    let mut pts = Vec::new();
    for p in rational_points(&js)? {
        let rank = point_rank(&s, &p);
        let milnor = local_length(&js, &p)?;
        let ade = match rank {
            3 => Ade::A(1),
            2 => Ade::A(milnor),
            _ => Ade::Other,
        };
        let mut y = p.coords().to_vec();
        y.push(k.zero());
        pts.push(SlicePoint {
            point: ProjPoint::new(k, back.apply_point(&y)).unwrap(),
            rank,
            milnor,
            ade,
        });
    }
    Ok(SliceReport {
        hyperplane: MultiPoly::linear(k, h),
        singular_points: pts,
        closure_count,
        total_milnor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_poly;
    use rand::SeedableRng;

    fn cubic(p: u64, s: &str) -> CubicThreefold<PrimeField> {
        CubicThreefold::new(parse_poly(PrimeField::new(p).unwrap(), 5, s).unwrap()).unwrap()
    }

    #[test]
    fn apex_of_simple_cones() {
        let x = cubic(101, "x0^3");
        assert_eq!(cone_apex(x.form()).len(), 4);
        let fermat = cubic(101, "x0^3 + x1^3 + x2^3 + x3^3 + x4^3");
        assert!(cone_apex(fermat.form()).is_empty());
    }

    #[test]
    fn node_tangent_cone() {
        let x = cubic(101, "x0*(x1*x2 + x3*x4) + x1^3");
        let k = x.field();
        let p = ProjPoint::new(k, vec![1, 0, 0, 0, 0]).unwrap();
        let tc = tangent_cone_at(x.form(), &p).unwrap();
        assert_eq!(tc.rank, 4);
        assert_eq!(point_rank(x.form(), &p), 4);
        let q = ProjPoint::new(k, vec![0, 1, 0, 0, 0]).unwrap();
        assert!(matches!(tangent_cone_at(x.form(), &q), Err(SegreError::NotSingular)));
    }

    #[test]
    fn linear_factors() {
        let mut rng = Rng64::seed_from_u64(1);
        let x = cubic(101, "x0*(x1*x2 + x3*x4 + x0*x1)");
        let (l, q) = factor_off_linear(x.form(), &mut rng).unwrap().unwrap();
        assert_eq!(&l * &q, x.form().clone());
        let fermat = cubic(7, "x0^3 + x1^3 + x2^3 + x3^3 + x4^3");
        assert!(factor_off_linear(fermat.form(), &mut rng).unwrap().is_none());
    }

    #[test]
    fn fermat_is_smooth() {
        let mut rng = Rng64::seed_from_u64(0);
        let r = classify(&cubic(101, "x0^3 + x1^3 + x2^3 + x3^3 + x4^3"), &mut rng).unwrap();
        assert_eq!(r.kind, SegreKind::Smooth);
    }

    #[test]
    fn nodal_cubic_points() {
        let mut rng = Rng64::seed_from_u64(0);
        let r = classify(&cubic(101, "x0*(x1*x2 + x3*x4) + x1^3 + x2^3 + x3^3 + x4^3"), &mut rng)
            .unwrap();
        assert_eq!(r.kind, SegreKind::IsolatedDoublePoints);
        assert_eq!(r.closure_count, 1);
        assert_eq!(r.points[0].rank, 4);
    }
}
