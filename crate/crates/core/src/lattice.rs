//! The lattice `Z^{1,6}` of a degree-3 weak del Pezzo surface: classes
//! `(d; m1..m6) = d l + sum m_i e_i`, pairing `diag(1, -1, ..., -1)`.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("class {0} is not a root")]
    NotRoot(LatticeClass),
    #[error("roots {0} and {1} are not orthogonal")]
    NotOrthogonal(LatticeClass, LatticeClass),
    #[error("configurations of {0} roots are not supported (at most 3)")]
    TooLarge(usize),
    #[error("pairing of R and E is {0}, expected 1")]
    BadPairing(i64),
    #[error("no (-1)-class satisfies the conditions")]
    NotFound,
}

/// Coordinates in the basis `(l, e1, ..., e6)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticeClass(pub [i64; 7]);

/// Canonical class `-3l + e1 + ... + e6`.
pub const K: LatticeClass = LatticeClass([-3, 1, 1, 1, 1, 1, 1]);

impl LatticeClass {
    pub fn l() -> Self {
        LatticeClass([1, 0, 0, 0, 0, 0, 0])
    }
    /// `e_i` for `i` in `1..=6`.
    pub fn e(i: usize) -> Self {
        let mut c = [0; 7];
        c[i] = 1;
        LatticeClass(c)
    }
    pub fn add(self, o: Self) -> Self {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(o.0) {
            *x += y;
        }
        LatticeClass(c)
    }
    pub fn scale(self, t: i64) -> Self {
        LatticeClass(self.0.map(|x| x * t))
    }
    pub fn sub(self, o: Self) -> Self {
        self.add(o.scale(-1))
    }
    pub fn square(self) -> i64 {
        pair(self, self)
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

pub fn pair(a: LatticeClass, b: LatticeClass) -> i64 {
    a.0[0] * b.0[0] - (1..7).map(|i| a.0[i] * b.0[i]).sum::<i64>()
}

/// Coordinate bounds for classes with `D^2 >= -2` and `|D.K| <= 1`.
const D_BOUND: i64 = 6;
const M_BOUND: i64 = 3;

fn enumerate(square: i64, k_pair: i64) -> Vec<LatticeClass> {
    let mut out = Vec::new();
    let mut m = [0i64; 7];
    fn rec(i: usize, m: &mut [i64; 7], square: i64, k_pair: i64, out: &mut Vec<LatticeClass>) {
        if i == 7 {
            let c = LatticeClass(*m);
            if c.square() == square && pair(c, K) == k_pair {
                out.push(c);
            }
            return;
        }
        let b = if i == 0 { D_BOUND } else { M_BOUND };
        for v in -b..=b {
            m[i] = v;
            rec(i + 1, m, square, k_pair, out);
        }
    }
    rec(0, &mut m, square, k_pair, &mut out);
    debug_assert!(out
        .iter()
        .all(|c| c.0[0].abs() < D_BOUND && c.0[1..].iter().all(|x| x.abs() < M_BOUND)));
    out
}

/// All classes with `D^2 = D.K = -1`, lexicographic.
pub fn enumerate_minus_one_classes() -> Vec<LatticeClass> {
    static CACHE: OnceLock<Vec<LatticeClass>> = OnceLock::new();
    CACHE.get_or_init(|| enumerate(-1, -1)).clone()
}

/// All roots: `D^2 = -2`, `D.K = 0`, lexicographic.
pub fn enumerate_roots() -> Vec<LatticeClass> {
    static CACHE: OnceLock<Vec<LatticeClass>> = OnceLock::new();
    CACHE.get_or_init(|| enumerate(-2, 0)).clone()
}

/// A set of roots with non-negative mutual pairings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootConfig {
    roots: Vec<LatticeClass>,
}

impl RootConfig {
    pub fn new(roots: Vec<LatticeClass>) -> Result<Self, LatticeError> {
        for (i, &r) in roots.iter().enumerate() {
            if r.square() != -2 || pair(r, K) != 0 {
                return Err(LatticeError::NotRoot(r));
            }
            for &s in &roots[i + 1..] {
                if pair(r, s) < 0 {
                    return Err(LatticeError::NotOrthogonal(r, s));
                }
            }
        }
        Ok(RootConfig { roots })
    }
    pub fn roots(&self) -> &[LatticeClass] {
        &self.roots
    }

    /// Dynkin type of the intersection graph, e.g. `"3A1"` or `"A2+A1"`.
    pub fn dynkin_type(&self) -> String {
        let n = self.roots.len();
        let adj = |i: usize, j: usize| i != j && pair(self.roots[i], self.roots[j]) != 0;
        let mut seen = vec![false; n];
        let mut comps: Vec<String> = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                for w in 0..n {
                    if !seen[w] && adj(v, w) {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            let deg: Vec<usize> = comp
                .iter()
                .map(|&v| comp.iter().filter(|&&w| adj(v, w)).count())
                .collect();
            let size = comp.len();
            let name = match deg.iter().position(|&d| d >= 3) {
                None => format!("A{size}"),
                Some(b) => {
                    let center = comp[b];
                    let mut arms: Vec<usize> = comp
                        .iter()
                        .filter(|&&w| adj(center, w))
                        .map(|&w| {
                            // walk away from the center
                            let (mut prev, mut cur, mut len) = (center, w, 1);
                            loop {
                                let next = comp
                                    .iter()
                                    .copied()
                                    .find(|&x| x != prev && adj(cur, x));
                                match next {
                                    Some(x) => {
                                        prev = cur;
                                        cur = x;
                                        len += 1;
                                    }
                                    None => break len,
                                }
                            }
                        })
                        .collect();
                    arms.sort();
                    match arms.as_slice() {
                        [1, 1, _] => format!("D{size}"),
                        [1, 2, 2] => "E6".into(),
                        [1, 2, 3] => "E7".into(),
                        [1, 2, 4] => "E8".into(),
                        _ => format!("?{size}"),
                    }
                }
            };
            comps.push(name);
        }
        // group equal components: "A1+A1+A1" -> "3A1"
        comps.sort();
        let mut out: Vec<String> = Vec::new();
        let mut i = 0;
        while i < comps.len() {
            let j = (i..comps.len()).find(|&j| comps[j] != comps[i]).unwrap_or(comps.len());
            let c = j - i;
            out.push(if c == 1 {
                comps[i].clone()
            } else {
                format!("{c}{}", comps[i])
            });
            i = j;
        }
        out.join("+")
    }
}

/// A `(-1)`-class `E` with `E.R1 = 1` and `E.Ri = 0` for the other roots of
/// a configuration of at most three pairwise orthogonal roots. The first
/// such class in lexicographic order is returned.
pub fn find_disjoint_e(config: &RootConfig) -> Result<LatticeClass, LatticeError> {
    let r = config.roots();
    if r.len() > 3 {
        return Err(LatticeError::TooLarge(r.len()));
    }
    for (i, &a) in r.iter().enumerate() {
        for &b in &r[i + 1..] {
            if pair(a, b) != 0 {
                return Err(LatticeError::NotOrthogonal(a, b));
            }
        }
    }
    let Some((&first, rest)) = r.split_first() else {
        return Err(LatticeError::NotFound);
    };
    enumerate_minus_one_classes()
        .into_iter()
        .find(|&e| pair(e, first) == 1 && rest.iter().all(|&ri| pair(e, ri) == 0))
        .ok_or(LatticeError::NotFound)
}

/// `D = R - K + 2E`, checked to have `D^2 = D.(-K) = 5`, `D.R = D.E = 0`.
pub fn quintic_class(r: LatticeClass, e: LatticeClass) -> Result<LatticeClass, LatticeError> {
    let p = pair(r, e);
    if p != 1 {
        return Err(LatticeError::BadPairing(p));
    }
    let d = r.sub(K).add(e.scale(2));
    assert_eq!(d.square(), 5);
    assert_eq!(pair(d, K.scale(-1)), 5);
    assert_eq!(pair(d, r), 0);
    assert_eq!(pair(d, e), 0);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_basics() {
        assert_eq!(pair(K, K), 3);
        assert_eq!(pair(LatticeClass::l(), LatticeClass::l()), 1);
        let r = LatticeClass([1, -1, -1, -1, 0, 0, 0]);
        assert_eq!(pair(LatticeClass::e(1), r), 1);
    }

    #[test]
    fn counts() {
        let m = enumerate_minus_one_classes();
        assert_eq!(m.len(), 27);
        for i in 1..=6 {
            assert!(m.contains(&LatticeClass::e(i)));
        }
        assert!(m.contains(&LatticeClass([1, -1, -1, 0, 0, 0, 0])));
        let r = enumerate_roots();
        assert_eq!(r.len(), 72);
        assert!(r.contains(&LatticeClass([1, -1, -1, -1, 0, 0, 0])));
        assert!(r.contains(&LatticeClass::e(1).sub(LatticeClass::e(2))));
    }

    #[test]
    fn pairings_between_lines_and_roots_are_small() {
        let m = enumerate_minus_one_classes();
        for &e in &m {
            for &r in &enumerate_roots() {
                assert!((-1..=2).contains(&pair(e, r)));
            }
        }
    }

    #[test]
    fn disjoint_e_examples() {
        let r = LatticeClass([1, -1, -1, -1, 0, 0, 0]);
        let cfg = RootConfig::new(vec![r]).unwrap();
        let e = find_disjoint_e(&cfg).unwrap();
        assert_eq!(pair(e, r), 1);
        assert_eq!(pair(LatticeClass::e(1), r), 1);
        let r2 = LatticeClass::e(1).sub(LatticeClass::e(2));
        let e2 = find_disjoint_e(&RootConfig::new(vec![r2]).unwrap()).unwrap();
        assert_eq!(pair(e2, r2), 1);
        assert_eq!(pair(LatticeClass::e(2), r2), 1);
    }

    #[test]
    fn quintic_example() {
        let r = LatticeClass([1, -1, -1, -1, 0, 0, 0]);
        let d = quintic_class(r, LatticeClass::e(1)).unwrap();
        assert_eq!(d, LatticeClass([4, 0, -2, -2, -1, -1, -1]));
        assert_eq!(pair(d, K), -5);
        // the printed tuple (4,0,-2,-2,0,0,0) has square 8
        assert_eq!(LatticeClass([4, 0, -2, -2, 0, 0, 0]).square(), 8);
    }

    #[test]
    fn dynkin_names() {
        let a = LatticeClass::e(1).sub(LatticeClass::e(2));
        let b = LatticeClass::e(2).sub(LatticeClass::e(3));
        let c = LatticeClass::e(4).sub(LatticeClass::e(5));
        assert_eq!(RootConfig::new(vec![a, b, c]).unwrap().dynkin_type(), "A1+A2");
        let d = LatticeClass([1, -1, -1, -1, 0, 0, 0]);
        let e = LatticeClass::e(4).sub(LatticeClass::e(5));
        let f = LatticeClass::e(5).sub(LatticeClass::e(6));
        assert_eq!(RootConfig::new(vec![d, e]).unwrap().dynkin_type(), "2A1");
        assert_eq!(RootConfig::new(vec![d, e, f]).unwrap().dynkin_type(), "A1+A2");
    }
}
