//! One PASS/FAIL line per acceptance criterion, then a single assertion.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use pfaffcubic::commands::{cmd_pfaffianize, OutputFormat, RunConfig};
use pfaffcubic::curve::forge_quintic;
use pfaffcubic::hilbert::HilbertPoly;
use pfaffcubic::ideal::{linear_syzygies, GradedIdeal};
use pfaffcubic::lattice::{enumerate_minus_one_classes, enumerate_roots, find_disjoint_e, pair, quintic_class, RootConfig, K};
use pfaffcubic::linalg::Matrix;
use pfaffcubic::parse::{parse_matrix, parse_poly};
use pfaffcubic::pfaff::{be_matrix, pfaffian_non_integral, pfaffianize, same_span, verify, Strategy};
use pfaffcubic::polymatrix::{PolyMatrix, SkewLinearMatrix};
use pfaffcubic::poly::degree_basis;
use pfaffcubic::segre::{
    classify, random_hyperplane_through, random_vector, slice_singularities, Ade, CubicThreefold, CurveKind, CurveType,
    SegreKind,
};
use pfaffcubic::{Field, FieldSpec, MultiPoly, PrimeField, Rng64};
use rand::SeedableRng;

const DOUBLE_PLANE: &str = "x0*x3^2 + x1*x4^2 + x2*x3*x4";
const DOUBLE_PLANE_M: &str = "0; x3; x4; 0; 0; x2
-x3; 0; 0; 0; x4; 0
-x4; 0; 0; x3; 0; 0
0; 0; -x3; 0; 0; x1
0; -x4; 0; 0; 0; x0
-x2; 0; 0; -x1; -x0; 0";
const FERMAT: &str = "x0^3 + x1^3 + x2^3 + x3^3 + x4^3";
const SECANT: &str = "x0*(x2*x4 - x3^2) + x2*(x1*x3 - x2^2) + x1*(x3*x2 - x1*x4)";
const FERMAT_CONE: &str = "x0^3 + x1^3 + x2^3 + x3^3";

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn field(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn poly(k: PrimeField, s: &str) -> MultiPoly<PrimeField> {
    parse_poly(k, 5, s).unwrap()
}

fn cubic(k: PrimeField, s: &str) -> CubicThreefold<PrimeField> {
    CubicThreefold::new(poly(k, s)).unwrap()
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

fn within(t: Instant, limit: Duration) -> Check {
    let e = t.elapsed();
    ensure!(e < limit, "took {e:?}, limit {limit:?}");
    Ok(())
}

fn double_plane_pfaffian() -> Check {
    let t = Instant::now();
    let k = field(101);
    let m = PolyMatrix::from_rows(k, 5, parse_matrix(k, 5, DOUBLE_PLANE_M).unwrap());
    let pf = m.pfaffian().map_err(|e| e.to_string())?;
    ensure!(pf == poly(k, DOUBLE_PLANE), "Pf(M) = {pf}");
    let q = parse_matrix(pfaffcubic::Rationals, 5, DOUBLE_PLANE_M).unwrap();
    let pf_q = PolyMatrix::from_rows(pfaffcubic::Rationals, 5, q).pfaffian().map_err(|e| e.to_string())?;
    ensure!(pf_q == parse_poly(pfaffcubic::Rationals, 5, DOUBLE_PLANE).unwrap(), "over Q: {pf_q}");
    within(t, Duration::from_secs(1))
}

fn secant_identity() -> Check {
    let k = field(101);
    let gens: Vec<_> = ["x2*x4 - x3^2", "x1*x3 - x2^2", "x2*x3 - x1*x4"].iter().map(|s| poly(k, s)).collect();
    let f = poly(k, SECANT);
    let ideal = GradedIdeal::new(k, 5, gens.clone()).map_err(|e| e.to_string())?;
    let (quot, rem) = ideal.normal_form_with_quotients(&f).map_err(|e| e.to_string())?;
    ensure!(rem.is_zero(), "remainder {rem}");
    let mut rebuilt = MultiPoly::zero(k, 5);
    for (q, g) in quot.iter().zip(&gens) {
        rebuilt = &rebuilt + &(q * g);
    }
    ensure!(&f - &rebuilt == MultiPoly::zero(k, 5), "quotients do not rebuild F");
    let x = |i| MultiPoly::var(k, 5, i);
    let displayed = &(&(&x(0) * &gens[0]) + &(&x(2) * &gens[1])) + &(&x(1) * &gens[2]);
    ensure!(&f - &displayed == MultiPoly::zero(k, 5), "displayed identity fails");
    Ok(())
}

fn classification_suite() -> Check {
    let t = Instant::now();
    let k = field(101);
    let cases = [
        ("x3*(x0^2 + x1*x2) + x4*(x1^2 + x0*x2) + x0^3 + x2^3", CurveKind::Line, CurveType::First, 1, 1),
        ("x3*x0^2 + x4*x1^2 + x2^3", CurveKind::Line, CurveType::Second, 1, 2),
        ("x3^3 + x4^3 + x0*x4^2 + x2*x3^2 + (x3 + x4)*(x1^2 - x0*x2)", CurveKind::Conic, CurveType::First, 2, 1),
        ("x4^3 + x3*x4*(x0 + x2) + x3*(x1^2 - x0*x2)", CurveKind::Conic, CurveType::Second, 2, 2),
        (
            "x3^3 + x3^2*x4 + x3*(x0*x1 + 2*x1*x2 + 3*x0*x2) + x0*x1*x2",
            CurveKind::ThreeConcurrentLines,
            CurveType::First,
            3,
            1,
        ),
        (SECANT, CurveKind::RationalQuartic, CurveType::First, 4, 1),
    ];
    for (src, kind, ty, d, r) in cases {
        let x = cubic(k, src);
        let mut rng = Rng64::seed_from_u64(7);
        let rep = classify(&x, &mut rng).map_err(|e| e.to_string())?;
        ensure!(rep.kind == SegreKind::DoubleCurve, "{src}: {:?}", rep.kind);
        let c = rep.curve.as_ref().unwrap();
        ensure!(c.kind == kind && c.curve_type == ty, "{src}: {:?} {:?}", c.kind, c.curve_type);
        let through: Vec<_> = c.samples.iter().take(d as usize).map(|p| p.point.clone()).collect();
        let h = random_hyperplane_through(k, 5, &through, &mut rng);
        let s = slice_singularities(&x, &h).map_err(|e| e.to_string())?;
        ensure!(s.closure_count == d, "{src}: {} points over the closure", s.closure_count);
        ensure!(s.total_milnor == d * r, "{src}: Milnor total {}", s.total_milnor);
        ensure!(s.singular_points.iter().all(|p| p.ade == Ade::A(r)), "{src}: wrong ADE types");
    }
    within(t, Duration::from_secs(120))
}

fn certificate_reverifies(v: &serde_json::Value) -> Check {
    let label = v["field"].as_str().ok_or("no field")?;
    let p: u64 = label.trim_start_matches("F_").parse().map_err(|_| format!("field {label}"))?;
    let k = field(p);
    let rows: Vec<Vec<MultiPoly<PrimeField>>> = v["M"]
        .as_array()
        .ok_or("no matrix")?
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|e| poly(k, e.as_str().unwrap())).collect())
        .collect();
    let m = SkewLinearMatrix::new(PolyMatrix::from_rows(k, 5, rows)).map_err(|e| e.to_string())?;
    let f = poly(k, v["F"].as_str().ok_or("no F")?);
    let lambda = verify(&m, &f).map_err(|e| e.to_string())?.ok_or("Pf(M) is not a multiple of F")?;
    ensure!(k.fmt_elem(&lambda) == v["lambda"].as_str().unwrap_or_default(), "lambda mismatch");
    Ok(())
}

fn json_config() -> RunConfig {
    RunConfig { output: OutputFormat::Json, ..RunConfig::default() }
}

fn end_to_end() -> Check {
    for src in [FERMAT, SECANT] {
        let t = Instant::now();
        let out = cmd_pfaffianize(src, &json_config());
        ensure!(out.code == 0, "{src}: exit {} {}", out.code, out.stderr);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
        ensure!(v["strategy"] == "Quintic", "{src}: strategy {}", v["strategy"]);
        ensure!(v["checks"].as_object().unwrap().values().all(|b| b == true), "{src}: {}", v["checks"]);
        certificate_reverifies(&v)?;
        within(t, Duration::from_secs(600))?;
    }
    Ok(())
}

fn quintic_invariants() -> Check {
    for src in [FERMAT, SECANT] {
        let x = cubic(field(13), src);
        let mut rng = Rng64::seed_from_u64(0);
        let w = forge_quintic(&x, &mut rng, 8).map_err(|e| e.to_string())?;
        let c = &w.curve;
        ensure!(c.hilbert == HilbertPoly::from_ints(&[0, 5]), "HP {}", c.hilbert);
        for m in 1..=8u32 {
            let h = c.ideal.hilbert_function(m);
            ensure!(h == 5 * m as u64, "h({m}) = {h}");
        }
        ensure!(c.ideal.dim_in_degree(1) == 0, "linear forms vanish on C");
        ensure!(c.ideal.dim_in_degree(2) == 5, "h0(I(2)) = {}", c.ideal.dim_in_degree(2));
        ensure!(linear_syzygies(&c.quadrics).len() == 5, "syzygy count");
    }
    Ok(())
}

fn be_roundtrip_and_bordering() -> Check {
    let k = field(101);
    let mut rng = Rng64::seed_from_u64(2024);
    for i in 0..25 {
        let q = random_skew(k, 5, &mut rng).pfaffian_complements().unwrap();
        let n = be_matrix(&q).map_err(|e| format!("sample {i}: {e}"))?;
        ensure!(same_span(&n.pfaffian_complements().unwrap(), &q, 2), "sample {i}: span differs");
    }
    for i in 0..50 {
        let n = random_skew(k, 5, &mut rng);
        let c: Vec<_> = (0..5).map(|_| random_linear(k, &mut rng)).collect();
        let p = n.pfaffian_complements().unwrap();
        let mut want = MultiPoly::zero(k, 5);
        for (ci, pi) in c.iter().zip(&p) {
            want = &want + &(ci * pi);
        }
        ensure!(n.border(&c).unwrap().pfaffian().unwrap() == want, "bordering sample {i}");
    }
    Ok(())
}

fn pfaffian_properties() -> Check {
    let k = field(101);
    let mut rng = Rng64::seed_from_u64(99);
    for i in 0..100 {
        let m = random_skew(k, 6, &mut rng);
        let pf = m.pfaffian().unwrap();
        ensure!(pf.pow(2) == m.matrix().det().unwrap(), "Pf^2 != det at sample {i}");
    }
    for i in 0..50 {
        let m = random_skew(k, 6, &mut rng);
        let p = Matrix::from_fn(k, 6, 6, |_, _| k.random(&mut rng));
        let lhs = m.congruence(&p).pfaffian().unwrap();
        let rhs = m.pfaffian().unwrap().scale(&p.det());
        ensure!(lhs == rhs, "congruence sample {i}");
    }
    Ok(())
}

fn lattice_suite() -> Check {
    let minus_one = enumerate_minus_one_classes();
    let roots = enumerate_roots();
    ensure!(minus_one.len() == 27, "{} (-1)-classes", minus_one.len());
    ensure!(roots.len() == 72, "{} roots", roots.len());
    // ordered tuples of pairwise orthogonal roots, no root repeated up to sign
    let mut layer: Vec<Vec<_>> = roots.iter().map(|&r| vec![r]).collect();
    let mut configs = layer.clone();
    for _ in 0..2 {
        layer = layer
            .iter()
            .flat_map(|c| {
                roots
                    .iter()
                    .filter(|&&r| c.iter().all(|&a| pair(a, r) == 0 && a != r && a != r.scale(-1)))
                    .map(move |&r| {
                        let mut d = c.clone();
                        d.push(r);
                        d
                    })
            })
            .collect();
        configs.extend(layer.iter().cloned());
    }
    let mut tested = 0;
    for c in &configs {
        let cfg = RootConfig::new(c.clone()).map_err(|e| e.to_string())?;
        let e = find_disjoint_e(&cfg).map_err(|err| format!("{c:?}: {err}"))?;
        ensure!(pair(e, c[0]) == 1 && c[1..].iter().all(|&r| pair(e, r) == 0), "{c:?}: pairings");
        let d = quintic_class(c[0], e).map_err(|err| err.to_string())?;
        ensure!(d.square() == 5 && pair(d, K.scale(-1)) == 5, "{c:?}: D");
        ensure!(c.iter().all(|&r| pair(d, r) == 0), "{c:?}: D.R");
        tested += 1;
    }
    ensure!(tested > 72, "only {tested} configurations");
    Ok(())
}

fn non_integral_and_cone() -> Check {
    let k = field(101);
    let mut rng = Rng64::seed_from_u64(5);
    let (basis, _) = degree_basis(5, 2);
    let mut done = 0;
    while done < 50 {
        let l = random_linear(k, &mut rng);
        let v: Vec<_> = (0..basis.len()).map(|_| k.random(&mut rng)).collect();
        let q = MultiPoly::from_coeff_vector(k, 5, &basis, &v);
        if q.is_zero() || l.is_zero() {
            continue;
        }
        let cert = pfaffian_non_integral(&l, &q).map_err(|e| e.to_string())?;
        ensure!(cert.m.pfaffian().unwrap() == &l * &q, "sample {done}");
        done += 1;
    }
    let x = cubic(field(13), FERMAT_CONE);
    let (cert, _) = pfaffianize(&x, 0, 8).map_err(|e| e.to_string())?;
    ensure!(cert.strategy == Strategy::ConeBase, "strategy {:?}", cert.strategy);
    ensure!(cert.verified() && cert.m.pfaffian().unwrap() == *x.form(), "cone certificate");
    Ok(())
}

fn determinism() -> Check {
    for src in [FERMAT, SECANT, FERMAT_CONE, DOUBLE_PLANE] {
        for seed in [0, 17] {
            let cfg = RunConfig { seed, ..json_config() };
            let a = cmd_pfaffianize(src, &cfg);
            let b = cmd_pfaffianize(src, &cfg);
            ensure!(a.code == 0, "{src}: exit {}", a.code);
            ensure!(a == b, "{src} seed {seed}: outputs differ");
        }
    }
    let q = RunConfig { field: FieldSpec::Rationals, ..json_config() };
    ensure!(cmd_pfaffianize(DOUBLE_PLANE, &q) == cmd_pfaffianize(DOUBLE_PLANE, &q), "over Q");
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("double-plane matrix Pfaffian", double_plane_pfaffian),
        ("secant cubic identity", secant_identity),
        ("classification of double-curve normal forms", classification_suite),
        ("end-to-end Pfaffianization", end_to_end),
        ("residual quintic invariants", quintic_invariants),
        ("BE roundtrip and bordering", be_roundtrip_and_bordering),
        ("Pfaffian identities", pfaffian_properties),
        ("lattice enumeration", lattice_suite),
        ("non-integral and cone strategies", non_integral_and_cone),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout().lock();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match r {
            Ok(()) => writeln!(out, "PASS {:>2} {name} ({:.2?})", i + 1, t.elapsed()).unwrap(),
            Err(e) => {
                writeln!(out, "FAIL {:>2} {name}: {e}", i + 1).unwrap();
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
