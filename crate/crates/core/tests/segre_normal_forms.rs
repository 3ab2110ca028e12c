use pfaffcubic::change::{LinearChange, ProjPoint};
use pfaffcubic::parse::parse_poly;
use pfaffcubic::segre::{
    classify, random_hyperplane_through, slice_singularities, Ade, CubicThreefold, CurveKind,
    CurveType, SegreKind,
};
use pfaffcubic::{PrimeField, Rng64};
use rand::SeedableRng;

const LINE_FIRST: &str = "x3*(x0^2 + x1*x2) + x4*(x1^2 + x0*x2) + x0^3 + x2^3";
const LINE_SECOND: &str = "x3*x0^2 + x4*x1^2 + x2^3";
const CONIC_FIRST: &str = "x3^3 + x4^3 + x0*x4^2 + x2*x3^2 + (x3 + x4)*(x1^2 - x0*x2)";
const CONIC_SECOND: &str = "x4^3 + x3*x4*(x0 + x2) + x3*(x1^2 - x0*x2)";
const THREE_LINES: &str =
    "x3^3 + x3^2*x4 + x3*(x0*x1 + 2*x1*x2 + 3*x0*x2) + x0*x1*x2";
const SECANT: &str = "x0*(x2*x4 - x3^2) + x2*(x1*x3 - x2^2) + x1*(x3*x2 - x1*x4)";

fn cubic(s: &str) -> CubicThreefold<PrimeField> {
    let k = PrimeField::new(101).unwrap();
    CubicThreefold::new(parse_poly(k, 5, s).unwrap()).unwrap()
}

fn check(src: &str, kind: CurveKind, ty: CurveType, d: u64, r: u64) {
    let x = cubic(src);
    let mut rng = Rng64::seed_from_u64(7);
    let rep = classify(&x, &mut rng).unwrap();
    assert_eq!(rep.kind, SegreKind::DoubleCurve, "{src}");
    let c = rep.curve.as_ref().unwrap();
    assert_eq!(c.kind, kind, "{src}");
    assert_eq!(c.curve_type, ty, "{src}");
    assert_eq!(c.hilbert.scheme_degree(), d);
    assert!(c.samples.iter().all(|p| p.rank <= 3));
    assert!(c.samples.len() >= d as usize);
    let through: Vec<ProjPoint<PrimeField>> =
        c.samples.iter().take(d as usize).map(|p| p.point.clone()).collect();
    let h = random_hyperplane_through(x.field(), 5, &through, &mut rng);
    let s = slice_singularities(&x, &h).unwrap();
    assert_eq!(s.closure_count, d, "{src}");
    assert_eq!(s.total_milnor, d * r, "{src}");
    assert_eq!(s.singular_points.len(), d as usize);
    for p in &s.singular_points {
        assert_eq!(p.ade, Ade::A(r), "{src}");
    }
}

#[test]
fn line_of_first_type() {
    check(LINE_FIRST, CurveKind::Line, CurveType::First, 1, 1);
}

#[test]
fn line_of_second_type() {
    check(LINE_SECOND, CurveKind::Line, CurveType::Second, 1, 2);
}

#[test]
fn conic_of_first_type() {
    check(CONIC_FIRST, CurveKind::Conic, CurveType::First, 2, 1);
}

#[test]
fn conic_of_second_type() {
    check(CONIC_SECOND, CurveKind::Conic, CurveType::Second, 2, 2);
}

#[test]
fn three_concurrent_lines() {
    check(THREE_LINES, CurveKind::ThreeConcurrentLines, CurveType::First, 3, 1);
}

#[test]
fn secant_cubic() {
    check(SECANT, CurveKind::RationalQuartic, CurveType::First, 4, 1);
}

#[test]
fn classification_survives_coordinate_changes() {
    let k = PrimeField::new(101).unwrap();
    let mut rng = Rng64::seed_from_u64(3);
    for src in [LINE_FIRST, LINE_SECOND, SECANT] {
        let x = cubic(src);
        let a = classify(&x, &mut rng).unwrap();
        let g = LinearChange::random(k, 5, &mut rng);
        let b = classify(&x.apply_change(&g), &mut rng).unwrap();
        assert_eq!(a.kind, b.kind);
        let (ca, cb) = (a.curve.unwrap(), b.curve.unwrap());
        assert_eq!(ca.kind, cb.kind);
        assert_eq!(ca.curve_type, cb.curve_type);
    }
}
