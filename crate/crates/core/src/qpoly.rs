//! Dense polynomials in one variable `q` with arbitrary-precision integer
//! coefficients, plus the Gaussian binomial and multinomial coefficients.
//!
//! Coefficient `k` of the backing vector is the coefficient of `q^k`. The
//! vector never ends in a zero, so the zero polynomial is the empty vector and
//! structural equality is polynomial equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::monomial(BigInt::one(), 0)
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        QPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = QPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds the polynomial `sum_k counts[k] q^k` from a histogram.
    pub fn from_counts(counts: &[u64]) -> Self {
        QPoly::from_coeffs(counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl Add for &QPoly {
    type Output = QPoly;

    fn add(self, rhs: &QPoly) -> QPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, d) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += d;
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Add for QPoly {
    type Output = QPoly;

    fn add(self, rhs: QPoly) -> QPoly {
        &self + &rhs
    }
}

impl Neg for &QPoly {
    type Output = QPoly;

    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &QPoly {
    type Output = QPoly;

    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;

    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Mul for QPoly {
    type Output = QPoly;

    fn mul(self, rhs: QPoly) -> QPoly {
        &self * &rhs
    }
}

impl std::iter::Product for QPoly {
    fn product<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::one(), |acc, p| &acc * &p)
    }
}

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |acc, p| &acc + &p)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{mag}q^{k}")?,
            }
        }
        Ok(())
    }
}

// JSON form is the bare ascending coefficient list, e.g. `[1,2,2,1]`.
impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let nums: Vec<serde_json::Number> = self
            .coeffs
            .iter()
            .map(|c| {
                c.to_i64()
                    .map(serde_json::Number::from)
                    .or_else(|| c.to_u64().map(serde_json::Number::from))
                    .ok_or_else(|| serde::ser::Error::custom(format!("coefficient {c} exceeds 64 bits")))
            })
            .collect::<Result<_, _>>()?;
        nums.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<i64>::deserialize(deserializer)?;
        Ok(QPoly::from_i64s(&raw))
    }
}

/// The Gaussian binomial `[h choose s]_q`.
///
/// Zero when `s < 0` or `s > h`. Built row by row with the q-Pascal rule
/// `[n, k] = [n-1, k-1] + q^k [n-1, k]`.
pub fn qbinomial(h: i64, s: i64) -> QPoly {
    if s < 0 || h < 0 || s > h {
        return QPoly::zero();
    }
    let k = s.min(h - s) as usize;
    let h = h as usize;
    // row[j] = [n, j] for the current n, j <= k
    let mut row: Vec<QPoly> = vec![QPoly::one()];
    for n in 1..=h {
        let top = k.min(n);
        let mut next = Vec::with_capacity(top + 1);
        for j in 0..=top {
            let left = if j >= 1 { row[j - 1].clone() } else { QPoly::zero() };
            let right = row.get(j).map(|p| p.shift(j)).unwrap_or_default();
            next.push(&left + &right);
        }
        row = next;
    }
    row.swap_remove(k)
}

/// The q-multinomial `[n; parts]_q` with `n = sum(parts)`.
pub fn qmultinomial(parts: &[usize]) -> QPoly {
    let mut remaining: usize = parts.iter().sum();
    let mut acc = QPoly::one();
    for &p in parts {
        acc = &acc * &qbinomial(remaining as i64, p as i64);
        remaining -= p;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_i64s(c)
    }

    /// Sum of q^(i_1+...+i_s) over 0 <= i_1 <= ... <= i_s <= h - s.
    fn qbinomial_by_partitions(h: usize, s: usize) -> Vec<u64> {
        fn rec(lo: usize, hi: usize, left: usize, sum: usize, out: &mut Vec<u64>) {
            if left == 0 {
                if out.len() <= sum {
                    out.resize(sum + 1, 0);
                }
                out[sum] += 1;
                return;
            }
            for i in lo..=hi {
                rec(i, hi, left - 1, sum + i, out);
            }
        }
        let mut out = Vec::new();
        rec(0, h - s, s, 0, &mut out);
        out
    }

    #[test]
    fn add_examples() {
        assert_eq!(&p(&[1, 1]) + &QPoly::zero(), p(&[1, 1]));
        assert_eq!(&p(&[1, 1]) + &p(&[0, 1, 1]), p(&[1, 2, 1]));
        assert!((&p(&[1, 2, 2, 1]) + &p(&[-1, -2, -2, -1])).is_zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p(&[1, 1]) * &QPoly::one(), p(&[1, 1]));
        assert_eq!(&p(&[1, 1]) * &p(&[1, 1, 1]), p(&[1, 2, 2, 1]));
        assert!((&QPoly::zero() * &p(&[1, 1, 1])).is_zero());
    }

    #[test]
    fn qbinomial_examples() {
        assert_eq!(qbinomial(2, 1), p(&[1, 1]));
        assert_eq!(qbinomial(3, 1), p(&[1, 1, 1]));
        for h in 0..6 {
            assert_eq!(qbinomial(h, 0), QPoly::one());
            assert_eq!(qbinomial(h, h), QPoly::one());
        }
        assert_eq!(qbinomial(4, 2).coeffs(), QPoly::from_counts(&qbinomial_by_partitions(4, 2)).coeffs());
        assert_eq!(qbinomial(4, 2), p(&[1, 1, 2, 1, 1]));
        assert!(qbinomial(3, 4).is_zero());
        assert!(qbinomial(3, -1).is_zero());
        assert!(qbinomial(-2, 1).is_zero());
    }

    #[test]
    fn qbinomial_matches_partition_oracle() {
        for h in 0..9usize {
            for s in 0..=h {
                let want = QPoly::from_counts(&qbinomial_by_partitions(h, s));
                assert_eq!(qbinomial(h as i64, s as i64), want, "h={h} s={s}");
            }
        }
    }

    #[test]
    fn qmultinomial_examples() {
        assert_eq!(qmultinomial(&[1, 1]), qbinomial(2, 1));
        assert_eq!(qmultinomial(&[2, 1]), qmultinomial(&[1, 2]));
        assert_eq!(qmultinomial(&[1, 1, 1]), &qbinomial(3, 1) * &qbinomial(2, 1));
        assert_eq!(qmultinomial(&[1, 1, 1]), p(&[1, 2, 2, 1]));
        assert_eq!(qmultinomial(&[]), QPoly::one());
    }

    #[test]
    fn display_and_json() {
        assert_eq!(p(&[1, 2, 0, 1]).to_string(), "1 + 2q + q^3");
        assert_eq!(p(&[0, -1]).to_string(), "-q");
        assert_eq!(QPoly::zero().to_string(), "0");
        let json = serde_json::to_string(&p(&[1, 2, 2, 1])).unwrap();
        assert_eq!(json, "[1,2,2,1]");
        let back: QPoly = serde_json::from_str("[1,2,2,1,0,0]").unwrap();
        assert_eq!(back, p(&[1, 2, 2, 1]));
    }
}
