//! Subcommand drivers shared by the command-line front end and the tests.
//!
//! Every driver takes input text and a [`RunConfig`] and returns an
//! [`Outcome`] carrying the exit code and both output streams, so nothing
//! here touches the process or the filesystem.

use serde_json::{json, Value};
use thiserror::Error;

use crate::curve::forge_quintic;
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::ideal::{linear_syzygies, set_dmax};
use crate::lattice::{enumerate_minus_one_classes, enumerate_roots, find_disjoint_e, pair, quintic_class, RootConfig, K};
use crate::parse::{parse_matrix, parse_poly};
use crate::pfaff::{pfaffianize, verify, PfaffError};
use crate::polymatrix::{MatrixError, PolyMatrix, SkewLinearMatrix};
use crate::segre::{classify, CubicThreefold, SegreError};
use crate::Rng64;
use rand::SeedableRng;

/// Primes tried in order when a search over a small field comes up empty.
pub const PRIME_LADDER: [u32; 4] = [11, 13, 17, 31];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: FieldSpec,
    pub seed: u64,
    pub max_retries: usize,
    pub d_max: u32,
    pub output: OutputFormat,
    /// Accepted for compatibility; scans run serially.
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: FieldSpec::Prime(13),
            seed: 0,
            max_retries: 8,
            d_max: crate::ideal::DEFAULT_DMAX,
            output: OutputFormat::Text,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Error)]
pub enum CmdError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    Exhausted(String),
}

impl CmdError {
    pub fn code(&self) -> i32 {
        match self {
            CmdError::Verification(_) => 1,
            CmdError::Usage(_) => 2,
            CmdError::Exhausted(_) => 3,
        }
    }
}

impl From<PfaffError> for CmdError {
    fn from(e: PfaffError) -> Self {
        if e.is_search_failure() {
            return CmdError::Exhausted(e.to_string());
        }
        match e {
            PfaffError::Unsupported(_)
            | PfaffError::Segre(SegreError::NotCubic(_))
            | PfaffError::Matrix(MatrixError::OddSize(_) | MatrixError::NotSkew(..) | MatrixError::NotSquare(..)) => {
                CmdError::Usage(e.to_string())
            }
            PfaffError::Curve(crate::curve::CurveError::Precondition(_)) => CmdError::Usage(e.to_string()),
            other => CmdError::Verification(other.to_string()),
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CmdError {
    CmdError::Usage(e.to_string())
}

fn finish(cfg: &RunConfig, r: Result<Value, CmdError>) -> Outcome {
    match r {
        Ok(v) => Outcome { code: 0, stdout: render(&v, cfg.output), stderr: String::new() },
        Err(e) => Outcome { code: e.code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// JSON is pretty-printed; text mode lists the top-level keys one per line.
pub fn render(v: &Value, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")),
        OutputFormat::Text => {
            let mut out = String::new();
            match v {
                Value::Object(map) => {
                    for (k, val) in map {
                        let shown = match val {
                            Value::String(s) => s.clone(),
                            other => other.to_string(),
                        };
                        out.push_str(&format!("{k}: {shown}\n"));
                    }
                }
                Value::Array(rows) => {
                    for r in rows {
                        out.push_str(&format!("{}\n", r.as_str().map(str::to_string).unwrap_or_else(|| r.to_string())));
                    }
                }
                other => out.push_str(&format!("{other}\n")),
            }
            out
        }
    }
}

macro_rules! with_field {
    ($spec:expr, |$k:ident| $body:expr) => {
        match $spec {
            FieldSpec::Rationals => {
                let $k = Rationals;
                $body
            }
            FieldSpec::Prime(p) => {
                let $k = PrimeField::new(p as u64).expect("validated prime");
                $body
            }
        }
    };
}

fn cubic<K: Field>(k: K, text: &str) -> Result<CubicThreefold<K>, CmdError> {
    let f = parse_poly(k, 5, text).map_err(|e| CmdError::Usage(format!("parse error: {e}")))?;
    CubicThreefold::new(f).map_err(usage)
}

/// Fields to try: the configured one, then larger primes of the ladder.
fn ladder(spec: FieldSpec) -> Vec<FieldSpec> {
    match spec {
        FieldSpec::Rationals => vec![spec],
        FieldSpec::Prime(p) => {
            let mut v = vec![spec];
            v.extend(PRIME_LADDER.iter().filter(|&&q| q > p).map(|&q| FieldSpec::Prime(q)));
            v
        }
    }
}

/// Runs `step` over each field of the ladder until it stops reporting a
/// search failure.
fn climb(cfg: &RunConfig, mut step: impl FnMut(FieldSpec) -> Result<Value, CmdError>) -> Result<Value, CmdError> {
    let mut last = None;
    for spec in ladder(cfg.field) {
        match step(spec) {
            Err(CmdError::Exhausted(msg)) => last = Some(format!("over {spec}: {msg}")),
            other => return other,
        }
    }
    Err(CmdError::Exhausted(last.unwrap_or_default()))
}

fn prepare(cfg: &RunConfig) {
    set_dmax(cfg.d_max);
}

pub fn cmd_classify(text: &str, cfg: &RunConfig) -> Outcome {
    prepare(cfg);
    let r = with_field!(cfg.field, |k| {
        cubic(k, text).and_then(|x| {
            let mut rng = Rng64::seed_from_u64(cfg.seed);
            let report = classify(&x, &mut rng).map_err(|e| CmdError::Exhausted(e.to_string()))?;
            let mut v = report.to_json();
            v["field"] = json!(k.label());
            Ok(v)
        })
    });
    finish(cfg, r)
}

pub fn cmd_pfaffianize(text: &str, cfg: &RunConfig) -> Outcome {
    prepare(cfg);
    let r = climb(cfg, |spec| {
        with_field!(spec, |k| {
            let x = cubic(k, text)?;
            let (cert, report) = pfaffianize(&x, cfg.seed, cfg.max_retries)?;
            if !cert.verified() {
                return Err(CmdError::Verification("certificate checks failed".into()));
            }
            let mut v = cert.to_json();
            v["kind"] = json!(report.kind);
            Ok(v)
        })
    });
    finish(cfg, r)
}

/// Checks `Pf(M) = lambda F` for a skew matrix of linear forms.
pub fn cmd_verify(matrix: &str, cubic_text: &str, cfg: &RunConfig) -> Outcome {
    prepare(cfg);
    let r = with_field!(cfg.field, |k| {
        (|| {
            let f = parse_poly(k, 5, cubic_text).map_err(|e| CmdError::Usage(format!("cubic: {e}")))?;
            let rows = parse_matrix(k, 5, matrix).map_err(|e| CmdError::Usage(format!("matrix: {e}")))?;
            let n = rows.len();
            if rows.iter().any(|r| r.len() != n) {
                return Err(CmdError::Usage(format!("matrix: not square ({n} rows)")));
            }
            let m = SkewLinearMatrix::new(PolyMatrix::from_rows(k, 5, rows)).map_err(|e| CmdError::Usage(format!("matrix: {e}")))?;
            match verify(&m, &f)? {
                Some(lambda) => Ok(json!({
                    "field": k.label(),
                    "size": n,
                    "verified": true,
                    "lambda": k.fmt_elem(&lambda),
                    "pfaffian": m.pfaffian().map_err(usage)?.to_string(),
                })),
                None => Err(CmdError::Verification(format!(
                    "Pf(M) = {} is not a multiple of F",
                    m.pfaffian().map_err(usage)?
                ))),
            }
        })()
    });
    finish(cfg, r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeAction {
    MinusOne,
    Roots,
    /// Configuration name such as `A1`, `2A1`, `3A1`.
    FindE(String),
}

/// First ordered tuple of `r` pairwise orthogonal roots in enumeration order.
fn first_orthogonal_roots(r: usize) -> Vec<crate::lattice::LatticeClass> {
    let mut chosen = Vec::new();
    for root in enumerate_roots() {
        if chosen.len() == r {
            break;
        }
        if chosen.iter().all(|&c| pair(c, root) == 0) && !chosen.contains(&root.scale(-1)) {
            chosen.push(root);
        }
    }
    chosen
}

fn parse_config(name: &str) -> Result<usize, CmdError> {
    let t = name.trim();
    let r = match t.strip_suffix("A1") {
        Some("") => 1,
        Some(n) => n.parse().map_err(|_| usage(format!("unknown configuration {t:?}")))?,
        None => return Err(usage(format!("unknown configuration {t:?}; expected A1, 2A1 or 3A1"))),
    };
    if !(1..=3).contains(&r) {
        return Err(usage(format!("configuration {t:?} has {r} roots; at most 3 are supported")));
    }
    Ok(r)
}

pub fn cmd_lattice(action: &LatticeAction, cfg: &RunConfig) -> Outcome {
    let r = (|| match action {
        LatticeAction::MinusOne => Ok(json!(enumerate_minus_one_classes().iter().map(|c| c.to_string()).collect::<Vec<_>>())),
        LatticeAction::Roots => Ok(json!(enumerate_roots().iter().map(|c| c.to_string()).collect::<Vec<_>>())),
        LatticeAction::FindE(name) => {
            let n = parse_config(name)?;
            let roots = first_orthogonal_roots(n);
            let config = RootConfig::new(roots.clone()).map_err(usage)?;
            let e = find_disjoint_e(&config).map_err(|err| CmdError::Exhausted(err.to_string()))?;
            let d = quintic_class(roots[0], e).map_err(|err| CmdError::Verification(err.to_string()))?;
            Ok(json!({
                "config": config.dynkin_type(),
                "roots": roots.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "e": e.to_string(),
                "e_squared": e.square(),
                "e_dot_k": pair(e, K),
                "e_dot_roots": roots.iter().map(|&r| pair(e, r)).collect::<Vec<_>>(),
                "d": d.to_string(),
                "d_squared": d.square(),
                "d_dot_minus_k": pair(d, K.scale(-1)),
            }))
        }
    })();
    finish(cfg, r)
}

/// Runs the quartic, scroll and residual quintic construction.
pub fn cmd_curve(text: &str, cfg: &RunConfig) -> Outcome {
    prepare(cfg);
    let r = climb(cfg, |spec| {
        with_field!(spec, |k| {
            let x = cubic(k, text)?;
            let mut rng = Rng64::seed_from_u64(cfg.seed);
            let w = forge_quintic(&x, &mut rng, cfg.max_retries).map_err(|e| CmdError::from(PfaffError::from(e)))?;
            let mut v = w.to_json();
            v["field"] = json!(k.label());
            v["linear_syzygies"] = json!(linear_syzygies(&w.curve.quadrics).len());
            Ok(v)
        })
    });
    finish(cfg, r)
}
