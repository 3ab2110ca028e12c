use pfaffcubic::parse::{parse_matrix, parse_poly};
use pfaffcubic::pfaff::{
    be_matrix, double_plane_matrix, express_in_quadrics, pfaffian_non_integral, pfaffianize, same_span, verify,
    PfaffError, Strategy,
};
use pfaffcubic::polymatrix::{PolyMatrix, SkewLinearMatrix};
use pfaffcubic::segre::{random_vector, CubicThreefold};
use pfaffcubic::{Field, MultiPoly, PrimeField, Rng64};
use rand::SeedableRng;

fn k101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

fn random_linear(k: PrimeField, rng: &mut Rng64) -> MultiPoly<PrimeField> {
    MultiPoly::linear(k, &random_vector(k, 5, rng))
}

fn random_skew(k: PrimeField, size: usize, rng: &mut Rng64) -> SkewLinearMatrix<PrimeField> {
    let mut m = PolyMatrix::zeros(k, 5, size, size);
    for i in 0..size {
        for j in i + 1..size {
            let l = random_linear(k, rng);
            m.set(j, i, -&l);
            m.set(i, j, l);
        }
    }
    SkewLinearMatrix::new(m).unwrap()
}

fn cubic(k: PrimeField, src: &str) -> CubicThreefold<PrimeField> {
    CubicThreefold::new(parse_poly(k, 5, src).unwrap()).unwrap()
}

#[test]
fn be_matrix_recovers_the_complement_span() {
    let k = k101();
    let mut rng = Rng64::seed_from_u64(3);
    for _ in 0..25 {
        let n0 = random_skew(k, 5, &mut rng);
        let q = n0.pfaffian_complements().unwrap();
        let n = be_matrix(&q).unwrap();
        assert!(same_span(&n.pfaffian_complements().unwrap(), &q, 2));
    }
}

#[test]
fn rational_normal_quartic_is_rejected() {
    let k = k101();
    let q: Vec<_> = [
        "x2*x4 - x3^2",
        "x2*x3 - x1*x4",
        "x1*x3 - x2^2",
        "x1*x2 - x0*x3",
        "x0*x2 - x1^2",
        "x0*x4 - x1*x3",
    ]
    .iter()
    .map(|s| parse_poly(k, 5, s).unwrap())
    .collect();
    assert!(matches!(be_matrix(&q), Err(PfaffError::Syzygies(8))));
}

#[test]
fn bordering_identity() {
    let k = k101();
    let mut rng = Rng64::seed_from_u64(5);
    for _ in 0..50 {
        let n = random_skew(k, 5, &mut rng);
        let c: Vec<_> = (0..5).map(|_| random_linear(k, &mut rng)).collect();
        let p = n.pfaffian_complements().unwrap();
        let want = c.iter().zip(&p).fold(MultiPoly::zero(k, 5), |acc, (a, b)| &acc + &(a * b));
        assert_eq!(n.border(&c).unwrap().pfaffian().unwrap(), want);
    }
    let n = random_skew(k, 5, &mut rng);
    let zero = vec![MultiPoly::zero(k, 5); 5];
    assert!(n.border(&zero).unwrap().pfaffian().unwrap().is_zero());
}

#[test]
fn secant_cubic_in_its_quadrics() {
    let k = k101();
    let f = parse_poly(k, 5, "x0*(x2*x4 - x3^2) + x2*(x1*x3 - x2^2) + x1*(x3*x2 - x1*x4)").unwrap();
    let q: Vec<_> = ["x2*x4 - x3^2", "x2*x3 - x1*x4", "x1*x3 - x2^2", "x1*x2 - x0*x3", "x0*x2 - x1^2"]
        .iter()
        .map(|s| parse_poly(k, 5, s).unwrap())
        .collect();
    let c = express_in_quadrics(&f, &q).unwrap();
    let back = c.iter().zip(&q).fold(MultiPoly::zero(k, 5), |acc, (a, b)| &acc + &(a * b));
    assert_eq!(back, f);
    let g = parse_poly(k, 5, "x0^3 + x4^3 + x1*x2*x3").unwrap();
    assert!(matches!(express_in_quadrics(&g, &q), Err(PfaffError::NotInIdeal)));
}

#[test]
fn double_plane_template_and_transport() {
    let k = k101();
    let mut rng = Rng64::seed_from_u64(9);
    for _ in 0..10 {
        let (a, b, c) = (random_linear(k, &mut rng), random_linear(k, &mut rng), random_linear(k, &mut rng));
        let x3 = MultiPoly::var(k, 5, 3);
        let x4 = MultiPoly::var(k, 5, 4);
        let want = &(&(&a * &x3.pow(2)) + &(&(&b * &x3) * &x4)) + &(&c * &x4.pow(2));
        assert_eq!(double_plane_matrix(&a, &b, &c).pfaffian().unwrap(), want);
    }
    let dp = cubic(k, "x0*x3^2 + x1*x4^2 + x2*x3*x4");
    let (cert, _) = pfaffianize(&dp, 0, 8).unwrap();
    assert_eq!(cert.strategy, Strategy::DoublePlane);
    assert!(k.is_one(&cert.lambda));
    // the plane moved to a general position
    let g = pfaffcubic::change::LinearChange::random(k, 5, &mut rng);
    let moved = dp.apply_change(&g);
    let (cert, _) = pfaffianize(&moved, 1, 8).unwrap();
    assert_eq!(cert.strategy, Strategy::DoublePlane);
    assert_eq!(cert.m.pfaffian().unwrap(), *moved.form());
}

#[test]
fn non_integral_products() {
    let k = k101();
    let mut rng = Rng64::seed_from_u64(11);
    for _ in 0..50 {
        let l = random_linear(k, &mut rng);
        let v: Vec<_> = (0..15).map(|_| k.random(&mut rng)).collect();
        let (basis, _) = pfaffcubic::poly::degree_basis(5, 2);
        let q = MultiPoly::from_coeff_vector(k, 5, &basis, &v);
        if q.is_zero() {
            continue;
        }
        let cert = pfaffian_non_integral(&l, &q).unwrap();
        assert_eq!(cert.m.pfaffian().unwrap(), &l * &q);
    }
    let l = MultiPoly::var(k, 5, 0);
    let q = parse_poly(k, 5, "x0*x1 + x2*x3 + x4^2").unwrap();
    assert!(pfaffian_non_integral(&l, &q).unwrap().verified());
    let x = cubic(k, "x0*x1*(x0 + x1)");
    let (cert, _) = pfaffianize(&x, 0, 8).unwrap();
    assert_eq!(cert.strategy, Strategy::NonIntegral);
    assert_eq!(cert.m.pfaffian().unwrap(), *x.form());
}

#[test]
fn cones() {
    let k = PrimeField::new(13).unwrap();
    for src in ["x0^3 + x1^3 + x2^3 + x3^3", "x0^3 + x1^3 + x2^3 + 2*x0*x1*x2"] {
        let x = cubic(k, src);
        let (cert, report) = pfaffianize(&x, 0, 8).unwrap();
        assert_eq!(cert.strategy, Strategy::ConeBase, "{src}: {:?}", report.kind);
        assert_eq!(cert.m.pfaffian().unwrap(), *x.form());
        assert_eq!(cert.checks.get("apex_free"), Some(&true));
        assert_eq!(cert.checks.get("points_h_vector"), Some(&true));
    }
}

#[test]
fn quintic_route() {
    let k = PrimeField::new(13).unwrap();
    for src in [
        "x0^3 + x1^3 + x2^3 + x3^3 + x4^3",
        "x0*(x2*x4 - x3^2) + x2*(x1*x3 - x2^2) + x1*(x3*x2 - x1*x4)",
    ] {
        let x = cubic(k, src);
        let (cert, _) = pfaffianize(&x, 0, 8).unwrap();
        assert_eq!(cert.strategy, Strategy::Quintic);
        assert_eq!(cert.m.pfaffian().unwrap(), *x.form());
        for (name, ok) in &cert.checks {
            assert!(ok, "{src}: check {name}");
        }
        let again = pfaffianize(&x, 0, 8).unwrap().0;
        assert_eq!(cert.to_json().to_string(), again.to_json().to_string());
    }
}

#[test]
fn verify_detects_perturbation_and_scaling() {
    let k = k101();
    let f = parse_poly(k, 5, "x0*x3^2 + x1*x4^2 + x2*x3*x4").unwrap();
    let text = "0; x3; x4; 0; 0; x2\n-x3; 0; 0; 0; x4; 0\n-x4; 0; 0; x3; 0; 0\n0; 0; -x3; 0; 0; x1\n0; -x4; 0; 0; 0; x0\n-x2; 0; 0; -x1; -x0; 0";
    let m = SkewLinearMatrix::new(PolyMatrix::from_rows(k, 5, parse_matrix(k, 5, text).unwrap())).unwrap();
    assert_eq!(verify(&m, &f).unwrap(), Some(1));
    let mut bad = m.matrix().clone();
    bad.set(0, 1, MultiPoly::var(k, 5, 2));
    bad.set(1, 0, -&MultiPoly::var(k, 5, 2));
    assert_eq!(verify(&SkewLinearMatrix::new(bad).unwrap(), &f).unwrap(), None);
    let t = 7u32;
    let scaled = SkewLinearMatrix::new(m.matrix().map_entries(|e| e.scale(&t))).unwrap();
    assert_eq!(verify(&scaled, &f).unwrap(), Some(k.pow(&t, 3)));
}
