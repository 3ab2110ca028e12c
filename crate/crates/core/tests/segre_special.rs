use pfaffcubic::ideal::GradedIdeal;
use pfaffcubic::parse::parse_poly;
use pfaffcubic::points::{point_count, scheme_length};
use pfaffcubic::segre::{
    classify, cone_apex, factor_off_linear, singular_scheme, tangent_cone_at, CubicThreefold,
    SegreKind,
};
use pfaffcubic::{Field, PrimeField, Rationals, Rng64};
use rand::SeedableRng;

fn f101(s: &str) -> CubicThreefold<PrimeField> {
    CubicThreefold::new(parse_poly(PrimeField::new(101).unwrap(), 5, s).unwrap()).unwrap()
}

fn ideal<K: Field>(k: K, gens: &[&str]) -> GradedIdeal<K> {
    let g = gens.iter().map(|s| parse_poly(k, 5, s).unwrap()).collect();
    GradedIdeal::new(k, 5, g).unwrap()
}

#[test]
fn double_plane_is_non_normal() {
    let mut rng = Rng64::seed_from_u64(0);
    let x = f101("x0*x3^2 + x1*x4^2 + x2*x3*x4");
    let r = classify(&x, &mut rng).unwrap();
    assert_eq!(r.kind, SegreKind::NonNormalPlane);
    let (a, b) = r.plane.unwrap();
    let found = GradedIdeal::new(x.field(), 5, vec![a, b]).unwrap();
    assert!(found.same_as(&ideal(x.field(), &["x3", "x4"])));
}

#[test]
fn cones_and_products() {
    let mut rng = Rng64::seed_from_u64(0);
    let cone = f101("x0^3 + x1^3 + x2^3 + x3^3");
    let r = classify(&cone, &mut rng).unwrap();
    assert_eq!(r.kind, SegreKind::Cone);
    assert_eq!(r.apex.len(), 1);
    let tc = tangent_cone_at(cone.form(), &r.apex[0]).unwrap();
    assert!(tc.is_triple());
    let prod = f101("x0*x1*x2");
    assert_eq!(classify(&prod, &mut rng).unwrap().kind, SegreKind::NonIntegral);
    let lq = f101("x4*(x0*x1 + x2*x3 + x4^2)");
    let r = classify(&lq, &mut rng).unwrap();
    assert_eq!(r.kind, SegreKind::NonIntegral);
    let (l, q) = r.factors.unwrap();
    assert_eq!(&l * &q, lq.form().clone());
}

#[test]
fn secant_apex_is_empty() {
    let x = f101("x0*(x2*x4 - x3^2) + x2*(x1*x3 - x2^2) + x1*(x3*x2 - x1*x4)");
    assert!(cone_apex(x.form()).is_empty());
}

#[test]
fn secant_singular_scheme_is_the_quartic_curve() {
    let q = Rationals;
    let f = parse_poly(q, 5, "x0*(x2*x4 - x3^2) + x2*(x1*x3 - x2^2) + x1*(x3*x2 - x1*x4)").unwrap();
    let rnc = ideal(
        q,
        &[
            "x0*x2 - x1^2",
            "x0*x3 - x1*x2",
            "x0*x4 - x2^2",
            "x1*x3 - x2^2",
            "x1*x4 - x2*x3",
            "x2*x4 - x3^2",
        ],
    );
    assert!(singular_scheme(&f).same_as(&rnc));
}

#[test]
fn first_type_line_singular_scheme() {
    let x = f101("x3*(x0^2 + x1*x2) + x4*(x1^2 + x0*x2) + x0^3 + x2^3");
    let j = singular_scheme(x.form());
    let line = ideal(x.field(), &["x0", "x1", "x2"]);
    // the line carries the one-dimensional part; three further singular
    // points sit off the line
    assert!(line.contains_ideal(&j));
    let hp = j.hilbert_polynomial().unwrap();
    assert_eq!((hp.dimension(), hp.scheme_degree()), (1, 1));
    let extra = j.saturate(&line);
    assert_eq!(scheme_length(&extra).unwrap(), 3);
    assert_eq!(point_count(&extra).unwrap(), 3);
    let fermat = f101("x0^3 + x1^3 + x2^3 + x3^3 + x4^3");
    assert!(singular_scheme(fermat.form()).is_unit());
}

#[test]
fn factor_over_q() {
    let mut rng = Rng64::seed_from_u64(5);
    let q = Rationals;
    let f = parse_poly(q, 5, "(x0 + 2*x3)*(x1*x2 - x3*x4 + x0^2)").unwrap();
    let (l, c) = factor_off_linear(&f, &mut rng).unwrap().unwrap();
    assert_eq!(&l * &c, f);
    let fermat = parse_poly(q, 5, "x0^3 + x1^3 + x2^3 + x3^3 + x4^3").unwrap();
    assert!(factor_off_linear(&fermat, &mut rng).unwrap().is_none());
}
