//! Hilbert functions and polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Polynomial in `m` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPoly {
    coeffs: Vec<BigRational>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl HilbertPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        HilbertPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| rat(v)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, m: i64) -> BigRational {
        let x = rat(m);
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// `None` for the zero polynomial (empty projective scheme).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Projective dimension of the scheme, `-1` when empty.
    pub fn dimension(&self) -> i64 {
        self.degree().map_or(-1, |d| d as i64)
    }

    /// Degree of the scheme: leading coefficient times `dim!`.
    pub fn scheme_degree(&self) -> u64 {
        let Some(d) = self.degree() else { return 0 };
        let fact: BigInt = (1..=d as u64).map(BigInt::from).product();
        (self.coeffs[d].clone() * BigRational::from_integer(fact))
            .to_integer()
            .to_u64()
            .unwrap_or(0)
    }

    /// Constant term, e.g. `1 - p_a` for a curve.
    pub fn constant(&self) -> BigRational {
        self.coeffs.first().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Fit the unique polynomial of degree `< xs.len()` through the points.
    pub fn interpolate(xs: &[i64], ys: &[i64]) -> Self {
        // Newton divided differences, then expand to the power basis.
        let n = xs.len();
        let mut dd: Vec<BigRational> = ys.iter().map(|&y| rat(y)).collect();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / rat(xs[i] - xs[i - j]);
            }
        }
        let mut poly = vec![BigRational::zero(); n];
        let mut basis = vec![BigRational::one()];
        for (i, c) in dd.iter().enumerate() {
            for (k, b) in basis.iter().enumerate() {
                poly[k] += c * b;
            }
            // basis *= (m - xs[i])
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * rat(xs[i]);
            }
            basis = next;
        }
        Self::new(poly)
    }
}

impl fmt::Display for HilbertPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match d {
                0 => String::new(),
                1 => "m".to_string(),
                _ => format!("m^{d}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for HilbertPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    /// `values[d] = dim (S/I)_d` for `d = 0..=d_max`.
    pub values: Vec<u64>,
    pub polynomial: HilbertPoly,
    /// From this degree on the function agrees with the polynomial (up to `d_max`).
    pub regularity_bound: u32,
}

impl HilbertData {
    pub fn value(&self, d: usize) -> Option<u64> {
        self.values.get(d).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_recovers_polynomials() {
        let xs = [3, 4, 5, 6];
        let ys: Vec<i64> = xs.iter().map(|m| (m + 1) * (3 * m + 2) / 2).collect();
        let p = HilbertPoly::interpolate(&xs, &ys);
        assert_eq!(p.to_string(), "3/2*m^2 + 5/2*m + 1");
        assert_eq!(p.scheme_degree(), 3);
        assert_eq!(p.dimension(), 2);
        let lin = HilbertPoly::interpolate(&[1, 2, 3], &[5, 10, 15]);
        assert_eq!(lin, HilbertPoly::from_ints(&[0, 5]));
        assert_eq!(lin.to_string(), "5*m");
    }
}
