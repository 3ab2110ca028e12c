//! Coefficient fields: prime fields, the rationals, and a quadratic
//! extension of a prime field used when rational points run out.

use std::fmt::{self, Debug};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Rng64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is not supported (need p > 3)")]
    SmallCharacteristic(u64),
    #[error("prime {0} is too large (limit 2^31)")]
    TooLarge(u64),
    #[error("cannot parse field spec {0:?}; expected `q` or `p:<prime>`")]
    BadSpec(String),
    #[error("denominator vanishes in {0}")]
    DenominatorVanishes(String),
}

/// Field selection as given on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        PrimeField::new(p).map(|f| FieldSpec::Prime(f.p))
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let rest = t
            .strip_prefix("p:")
            .or_else(|| t.strip_prefix("P:"))
            .ok_or_else(|| FieldError::BadSpec(s.to_string()))?;
        let p: u64 = rest.parse().map_err(|_| FieldError::BadSpec(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "p:{p}"),
        }
    }
}

pub trait Field: Copy + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;
    /// Field used when a search over this field comes up short.
    type Ext: Field;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, FieldError>;
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<u64>;
    /// All elements of a finite field; small integers `-h..=h` otherwise.
    fn search_elements(&self, height: i64) -> Vec<Self::Elem>;
    fn random(&self, rng: &mut Rng64) -> Self::Elem;
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn fmt_elem(&self, a: &Self::Elem) -> String;
    /// Whether the element prints with a leading minus sign.
    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }
    fn label(&self) -> String;
    fn extension(&self) -> Option<Self::Ext>;
    fn embed(&self, ext: &Self::Ext, a: &Self::Elem) -> <Self::Ext as Field>::Elem;
    /// Roots in this field of `c[0] + c[1] t + ...`; `None` when the
    /// search cannot be completed.
    fn univariate_roots(&self, c: &[Self::Elem]) -> Option<Vec<Self::Elem>>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b).expect("division by zero"))
    }
    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
    /// Random nonzero element.
    fn random_nonzero(&self, rng: &mut Rng64) -> Self::Elem {
        loop {
            let a = self.random(rng);
            if !self.is_zero(&a) {
                return a;
            }
        }
    }
}

fn brute_force_roots<K: Field>(k: &K, c: &[K::Elem]) -> Vec<K::Elem> {
    k.search_elements(0)
        .into_iter()
        .filter(|t| k.is_zero(&horner(k, c, t)))
        .collect()
}

pub(crate) fn horner<K: Field>(k: &K, c: &[K::Elem], t: &K::Elem) -> K::Elem {
    let mut acc = k.zero();
    for a in c.iter().rev() {
        acc = k.add(&k.mul(&acc, t), a);
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field F_p for a prime 3 < p < 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 31 {
            return Err(FieldError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p <= 3 {
            return Err(FieldError::SmallCharacteristic(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    fn reduce(&self, v: i128) -> u32 {
        v.rem_euclid(self.p as i128) as u32
    }

    fn non_residue(&self) -> u32 {
        (2..self.p)
            .find(|&a| self.sqrt(&a).is_none())
            .expect("odd prime has a non-residue")
    }
}

impl Field for PrimeField {
    type Elem = u32;
    type Ext = Fp2;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        Some(self.pow(a, self.p as u64 - 2))
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce(v as i128)
    }
    fn from_rational(&self, q: &BigRational) -> Result<u32, FieldError> {
        let pb = BigInt::from(self.p);
        let num = q.numer().mod_floor(&pb).to_u32().unwrap();
        let den = q.denom().mod_floor(&pb).to_u32().unwrap();
        let inv = self
            .inv(&den)
            .ok_or_else(|| FieldError::DenominatorVanishes(format!("{q} mod {}", self.p)))?;
        Ok(self.mul(&num, &inv))
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn order(&self) -> Option<u64> {
        Some(self.p as u64)
    }
    fn search_elements(&self, _height: i64) -> Vec<u32> {
        (0..self.p).collect()
    }
    fn random(&self, rng: &mut Rng64) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn sqrt(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return Some(0);
        }
        // Euler criterion, then Tonelli-Shanks.
        let p = self.p as u64;
        if self.pow(a, (p - 1) / 2) != 1 {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let z = (2..self.p)
            .find(|z| self.pow(z, (p - 1) / 2) == self.p - 1)
            .unwrap();
        let mut m = s;
        let mut c = self.pow(&z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(&tt, &tt);
                i += 1;
            }
            let b = self.pow(&c, 1 << (m - i - 1));
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r.min(self.p - r))
    }
    fn fmt_elem(&self, a: &u32) -> String {
        a.to_string()
    }
    fn label(&self) -> String {
        format!("F_{}", self.p)
    }
    fn extension(&self) -> Option<Fp2> {
        Some(Fp2::new(*self))
    }
    fn embed(&self, _ext: &Fp2, a: &u32) -> (u32, u32) {
        (*a, 0)
    }
    fn univariate_roots(&self, c: &[u32]) -> Option<Vec<u32>> {
        Some(brute_force_roots(self, c))
    }
}

/// F_p[w] / (w^2 - n) with n a fixed non-residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp2 {
    base: PrimeField,
    nr: u32,
}

impl Fp2 {
    pub fn new(base: PrimeField) -> Self {
        Fp2 {
            base,
            nr: base.non_residue(),
        }
    }
    pub fn base(&self) -> PrimeField {
        self.base
    }
}

impl Field for Fp2 {
    type Elem = (u32, u32);
    type Ext = Fp2;

    fn zero(&self) -> (u32, u32) {
        (0, 0)
    }
    fn one(&self) -> (u32, u32) {
        (1, 0)
    }
    fn is_zero(&self, a: &(u32, u32)) -> bool {
        *a == (0, 0)
    }
    fn add(&self, a: &(u32, u32), b: &(u32, u32)) -> (u32, u32) {
        let k = &self.base;
        (k.add(&a.0, &b.0), k.add(&a.1, &b.1))
    }
    fn sub(&self, a: &(u32, u32), b: &(u32, u32)) -> (u32, u32) {
        let k = &self.base;
        (k.sub(&a.0, &b.0), k.sub(&a.1, &b.1))
    }
    fn mul(&self, a: &(u32, u32), b: &(u32, u32)) -> (u32, u32) {
        let k = &self.base;
        let re = k.add(&k.mul(&a.0, &b.0), &k.mul(&self.nr, &k.mul(&a.1, &b.1)));
        let im = k.add(&k.mul(&a.0, &b.1), &k.mul(&a.1, &b.0));
        (re, im)
    }
    fn neg(&self, a: &(u32, u32)) -> (u32, u32) {
        (self.base.neg(&a.0), self.base.neg(&a.1))
    }
    fn inv(&self, a: &(u32, u32)) -> Option<(u32, u32)> {
        let k = &self.base;
        let norm = k.sub(&k.mul(&a.0, &a.0), &k.mul(&self.nr, &k.mul(&a.1, &a.1)));
        let ni = k.inv(&norm)?;
        Some((k.mul(&a.0, &ni), k.neg(&k.mul(&a.1, &ni))))
    }
    fn from_i64(&self, v: i64) -> (u32, u32) {
        (self.base.from_i64(v), 0)
    }
    fn from_rational(&self, q: &BigRational) -> Result<(u32, u32), FieldError> {
        Ok((self.base.from_rational(q)?, 0))
    }
    fn characteristic(&self) -> u64 {
        self.base.p as u64
    }
    fn order(&self) -> Option<u64> {
        Some(self.base.p as u64 * self.base.p as u64)
    }
    fn search_elements(&self, _height: i64) -> Vec<(u32, u32)> {
        let p = self.base.p;
        (0..p).flat_map(|a| (0..p).map(move |b| (a, b))).collect()
    }
    fn random(&self, rng: &mut Rng64) -> (u32, u32) {
        (self.base.random(rng), self.base.random(rng))
    }
    fn sqrt(&self, a: &(u32, u32)) -> Option<(u32, u32)> {
        self.search_elements(0)
            .into_iter()
            .find(|x| self.mul(x, x) == *a)
    }
    fn fmt_elem(&self, a: &(u32, u32)) -> String {
        if a.1 == 0 {
            a.0.to_string()
        } else {
            format!("({}+{}w)", a.0, a.1)
        }
    }
    fn label(&self) -> String {
        format!("F_{}^2", self.base.p)
    }
    fn extension(&self) -> Option<Fp2> {
        None
    }
    fn embed(&self, _ext: &Fp2, a: &(u32, u32)) -> (u32, u32) {
        *a
    }
    fn univariate_roots(&self, c: &[(u32, u32)]) -> Option<Vec<(u32, u32)>> {
        Some(brute_force_roots(self, c))
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

/// Bound on |coefficient| above which rational root search gives up
/// instead of factoring.
const RATIONAL_ROOT_LIMIT: u64 = 1 << 40;

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl Field for Rationals {
    type Elem = BigRational;
    type Ext = Rationals;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational, FieldError> {
        Ok(q.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn search_elements(&self, height: i64) -> Vec<BigRational> {
        let mut v = vec![self.zero()];
        for a in 1..=height.max(1) {
            v.push(self.from_i64(a));
            v.push(self.from_i64(-a));
        }
        v
    }
    fn random(&self, rng: &mut Rng64) -> BigRational {
        self.from_i64(rng.gen_range(-30..=30))
    }
    fn sqrt(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_negative() {
            return None;
        }
        let n = a.numer().sqrt();
        let d = a.denom().sqrt();
        if &(&n * &n) == a.numer() && &(&d * &d) == a.denom() {
            Some(BigRational::new(n, d))
        } else {
            None
        }
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
    fn label(&self) -> String {
        "Q".to_string()
    }
    fn extension(&self) -> Option<Rationals> {
        None
    }
    fn embed(&self, _ext: &Rationals, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn univariate_roots(&self, c: &[BigRational]) -> Option<Vec<BigRational>> {
        // Clear denominators, strip the factor t^k, then test p/q with
        // p | a_0 and q | a_n.
        let mut c: Vec<BigRational> = c.to_vec();
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        if c.is_empty() {
            return None;
        }
        let mut roots = Vec::new();
        let k = c.iter().position(|x| !x.is_zero()).unwrap();
        if k > 0 {
            roots.push(self.zero());
            c.drain(..k);
        }
        if c.len() == 1 {
            return Some(roots);
        }
        let lcm = c
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = c.iter().map(|x| (x * &lcm).to_integer()).collect();
        let a0 = ints[0].abs().to_u64()?;
        let an = ints.last().unwrap().abs().to_u64()?;
        if a0 > RATIONAL_ROOT_LIMIT || an > RATIONAL_ROOT_LIMIT {
            return None;
        }
        let cand_p = divisors(a0);
        let cand_q = divisors(an);
        let mut seen = std::collections::HashSet::new();
        for p in &cand_p {
            for q in &cand_q {
                for sign in [1i64, -1] {
                    let r = BigRational::new(BigInt::from(*p) * sign, BigInt::from(*q));
                    if seen.insert(r.clone()) && horner(self, &c, &r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
        Some(roots)
    }
}
