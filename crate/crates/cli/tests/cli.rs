use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

const DOUBLE_PLANE: &str = "x0*x3^2 + x1*x4^2 + x2*x3*x4";
const DOUBLE_PLANE_M: &str = "0; x3; x4; 0; 0; x2
-x3; 0; 0; 0; x4; 0
-x4; 0; 0; x3; 0; 0
0; 0; -x3; 0; 0; x1
0; -x4; 0; 0; 0; x0
-x2; 0; 0; -x1; -x0; 0";
const FERMAT: &str = "x0^3 + x1^3 + x2^3 + x3^3 + x4^3";
const FERMAT_CONE: &str = "x0^3 + x1^3 + x2^3 + x3^3";

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }
    fn put(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }
}

fn run(args: &[&str], files: &[&PathBuf]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfaffcubic"))
        .args(args)
        .args(files.iter().map(|p| p.as_os_str()))
        .output()
        .unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn classify_double_plane_and_fermat() {
    let t = Files::new();
    let dp = t.put("dp", DOUBLE_PLANE);
    let o = run(&["--json", "classify"], &[&dp]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["kind"], "NonNormalPlane");

    let fe = t.put("fe", FERMAT);
    let o = run(&["--field", "p:101", "--json", "classify"], &[&fe]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["kind"], "Smooth");
}

#[test]
fn parse_errors_exit_two_with_position() {
    let t = Files::new();
    let bad = t.put("bad", "x0^3 + * x1");
    let o = run(&["classify"], &[&bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 7"));

    let missing = t.0.path().join("missing");
    assert_eq!(run(&["classify"], &[&missing]).status.code(), Some(2));
    assert_eq!(run(&["--field", "p:12", "lattice", "roots"], &[]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"], &[]).status.code(), Some(2));
}

#[test]
fn pfaffianize_each_strategy() {
    let t = Files::new();
    for (src, strategy) in [(DOUBLE_PLANE, "DoublePlane"), (FERMAT, "Quintic"), (FERMAT_CONE, "ConeBase")] {
        let f = t.put("cubic", src);
        let o = run(&["--json", "pfaffianize"], &[&f]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let v = json(&o);
        assert_eq!(v["strategy"], strategy);
        assert!(v["checks"].as_object().unwrap().values().all(|b| b == true));
    }
}

#[test]
fn pfaffianize_output_is_reproducible() {
    let t = Files::new();
    let f = t.put("fe", FERMAT);
    let a = run(&["--json", "--seed", "5", "pfaffianize"], &[&f]);
    let b = run(&["--json", "--seed", "5", "pfaffianize"], &[&f]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_exit_codes() {
    let t = Files::new();
    let f = t.put("f", DOUBLE_PLANE);
    let m = t.put("m", DOUBLE_PLANE_M);
    let o = run(&["--json", "verify"], &[&m, &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["lambda"], "1");

    let perturbed = t.put("m2", &DOUBLE_PLANE_M.replacen("x2", "x1", 1).replacen("-x2", "-x1", 1));
    assert_eq!(run(&["verify"], &[&perturbed, &f]).status.code(), Some(1));

    let odd = t.put("m3", "0; x0; x1\n-x0; 0; x2\n-x1; -x2; 0");
    assert_eq!(run(&["verify"], &[&odd, &f]).status.code(), Some(2));
}

#[test]
fn lattice_listings() {
    let o = run(&["lattice", "minus-one"], &[]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 27);
    let o = run(&["lattice", "roots"], &[]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 72);

    let o = run(&["--json", "lattice", "find-e", "--config", "A1"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["e_squared"], -1);
    assert_eq!(v["e_dot_k"], -1);
    assert_eq!(v["e_dot_roots"][0], 1);
    assert_eq!(v["d_squared"], 5);
    assert_eq!(run(&["lattice", "find-e", "--config", "D4"], &[]).status.code(), Some(2));
}

#[test]
fn curve_command_reports_quintic() {
    let t = Files::new();
    let f = t.put("fe", FERMAT);
    let o = run(&["--json", "curve"], &[&f]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["linear_syzygies"], 5);
    assert_eq!(run(&["curve"], &[&t.put("cone", FERMAT_CONE)]).status.code(), Some(2));
}

#[test]
fn search_exhaustion_exits_three() {
    // the curve search needs a small field
    let t = Files::new();
    let f = t.put("fe", FERMAT);
    assert_eq!(run(&["--field", "p:101", "pfaffianize"], &[&f]).status.code(), Some(3));
}
