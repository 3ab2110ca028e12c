//! Packed monomials: up to eight exponents, one byte each.

use std::cmp::Ordering;

pub const MAX_VARS: usize = 8;
const HIGH: u64 = 0x8080_8080_8080_8080;
const LOW: u64 = 0x0101_0101_0101_0101;

/// Exponent vector packed little-endian into a `u64`, exponents < 128.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u64);

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.exps(MAX_VARS))
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_exps(e: &[u32]) -> Self {
        assert!(e.len() <= MAX_VARS, "too many variables");
        let mut w = 0u64;
        for (i, &x) in e.iter().enumerate() {
            assert!(x < 128, "exponent overflow");
            w |= (x as u64) << (8 * i);
        }
        Monomial(w)
    }

    pub fn var(i: usize) -> Self {
        assert!(i < MAX_VARS);
        Monomial(1 << (8 * i))
    }

    pub fn raw(self) -> u64 {
        self.0
    }

    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> (8 * i)) & 0xff) as u32
    }

    pub fn exps(self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.exp(i)).collect()
    }

    pub fn degree(self) -> u32 {
        (self.0.wrapping_mul(LOW) >> 56) as u32
    }

    /// Degree counted only over the variables in `mask` (byte mask).
    pub fn masked_degree(self, mask: u64) -> u32 {
        Monomial(self.0 & mask).degree()
    }

    /// Index of the largest variable that occurs, if any.
    pub fn max_var(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some((63 - self.0.leading_zeros() as usize) / 8)
        }
    }

    pub fn mul(self, o: Monomial) -> Monomial {
        let r = self.0 + o.0;
        debug_assert!(r & HIGH == 0, "exponent overflow");
        Monomial(r)
    }

    pub fn divides(self, o: Monomial) -> bool {
        ((o.0 | HIGH) - self.0) & HIGH == HIGH
    }

    /// `o / self` when `self | o`.
    pub fn div(self, o: Monomial) -> Option<Monomial> {
        if self.divides(o) {
            Some(Monomial(o.0 - self.0))
        } else {
            None
        }
    }

    pub fn lcm(self, o: Monomial) -> Monomial {
        let mut w = 0u64;
        for i in 0..MAX_VARS {
            let s = 8 * i;
            w |= ((self.0 >> s) & 0xff).max((o.0 >> s) & 0xff) << s;
        }
        Monomial(w)
    }

    pub fn gcd(self, o: Monomial) -> Monomial {
        let mut w = 0u64;
        for i in 0..MAX_VARS {
            let s = 8 * i;
            w |= ((self.0 >> s) & 0xff).min((o.0 >> s) & 0xff) << s;
        }
        Monomial(w)
    }

    pub fn is_coprime(self, o: Monomial) -> bool {
        self.gcd(o).0 == 0
    }

    pub fn with_exp(self, i: usize, e: u32) -> Monomial {
        assert!(e < 128);
        let s = 8 * i;
        Monomial((self.0 & !(0xff << s)) | ((e as u64) << s))
    }

    /// Variable `i` of the result carries exponent `self[perm[i]]`.
    pub fn permute(self, perm: &[usize]) -> Monomial {
        let mut w = 0u64;
        for (i, &j) in perm.iter().enumerate() {
            w |= ((self.0 >> (8 * j)) & 0xff) << (8 * i);
        }
        Monomial(w)
    }

    pub fn cmp_degrevlex(self, o: Monomial) -> Ordering {
        match self.degree().cmp(&o.degree()) {
            Ordering::Equal => {}
            c => return c,
        }
        let x = self.0 ^ o.0;
        if x == 0 {
            return Ordering::Equal;
        }
        let byte = (63 - x.leading_zeros() as usize) / 8;
        // Smaller exponent in the last differing variable wins.
        o.exp(byte).cmp(&self.exp(byte))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_degrevlex(*other)
    }
}

pub fn var_mask(vars: &[usize]) -> u64 {
    vars.iter().fold(0, |m, &i| m | (0xff << (8 * i)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonoOrder {
    DegRevLex,
    /// Block order: degree in the masked variables first, then degrevlex.
    Eliminate { block: u64 },
}

impl MonoOrder {
    pub fn cmp(&self, a: Monomial, b: Monomial) -> Ordering {
        match *self {
            MonoOrder::DegRevLex => a.cmp_degrevlex(b),
            MonoOrder::Eliminate { block } => a
                .masked_degree(block)
                .cmp(&b.masked_degree(block))
                .then_with(|| a.cmp_degrevlex(b)),
        }
    }
}

/// All monomials of degree `d` in `n` variables, largest first.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = e.len();
        if i + 1 == n {
            e[i] = left;
            out.push(Monomial::from_exps(e));
            return;
        }
        for k in 0..=left {
            e[i] = k;
            rec(i + 1, left - k, e, out);
        }
        e[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::ONE);
        }
        return out;
    }
    rec(0, d, &mut e, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}
