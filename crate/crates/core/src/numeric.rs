//! Exact scalars: half-integers stored doubled, big rationals, and the
//! symmetric-function helpers shared by the symbolic modules.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseNumberError {
    #[error("empty number")]
    Empty,
    #[error("malformed number {0:?}")]
    Malformed(String),
    #[error("{0:?} is not an integer or half-integer")]
    NotHalfInteger(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// `p/q` as a rational.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as a rational.
pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn half() -> Rational {
    rat(1, 2)
}

/// Parses `p`, `-p` or `p/q` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational, ParseNumberError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(ParseNumberError::Empty);
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| ParseNumberError::Malformed(t.to_string()))?;
    let den = BigInt::from_str(den).map_err(|_| ParseNumberError::Malformed(t.to_string()))?;
    if den.is_zero() {
        return Err(ParseNumberError::ZeroDenominator(t.to_string()));
    }
    Ok(Rational::new(num, den))
}

/// Nearest double to an exact rational.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // fall back for huge operands: scale both sides down together
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Renders a non-negative rational `p/q` as `√(p/q)`, or `√p` / `0` / `1`.
pub fn sqrt_text(r: &Rational) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    if r.is_one() {
        return "1".to_string();
    }
    if r.is_integer() {
        format!("√{}", r)
    } else {
        format!("√({})", r)
    }
}

/// An integer or half-integer, stored as twice its value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfInt {
    twice: BigInt,
}

impl HalfInt {
    pub fn from_twice(twice: impl Into<BigInt>) -> Self {
        HalfInt { twice: twice.into() }
    }

    pub fn from_int(value: impl Into<BigInt>) -> Self {
        HalfInt {
            twice: value.into() * 2,
        }
    }

    pub fn zero() -> Self {
        HalfInt::from_twice(0)
    }

    pub fn twice(&self) -> &BigInt {
        &self.twice
    }

    pub fn is_integral(&self) -> bool {
        self.twice.is_even()
    }

    pub fn is_zero(&self) -> bool {
        self.twice.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.twice.is_negative()
    }

    pub fn abs(&self) -> Self {
        HalfInt {
            twice: self.twice.abs(),
        }
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.twice.clone(), BigInt::from(2))
    }

    pub fn to_f64(&self) -> f64 {
        self.twice.to_f64().unwrap_or(f64::NAN) / 2.0
    }

    /// Integer part of a value known to be integral.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integral() {
            (&self.twice / BigInt::from(2)).to_i64()
        } else {
            None
        }
    }

    pub fn plus_int(&self, k: i64) -> Self {
        HalfInt {
            twice: &self.twice + BigInt::from(2 * k),
        }
    }
}

impl Ord for HalfInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.twice.cmp(&other.twice)
    }
}

impl PartialOrd for HalfInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: &HalfInt) -> HalfInt {
        HalfInt {
            twice: &self.twice + &rhs.twice,
        }
    }
}

impl Sub for &HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: &HalfInt) -> HalfInt {
        HalfInt {
            twice: &self.twice - &rhs.twice,
        }
    }
}

impl Neg for &HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt {
            twice: -&self.twice,
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", &self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInt {
    type Err = ParseNumberError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let r = parse_rational(s)?;
        let doubled = &r * int(2);
        if !doubled.is_integer() {
            return Err(ParseNumberError::NotHalfInteger(s.trim().to_string()));
        }
        Ok(HalfInt {
            twice: doubled.to_integer(),
        })
    }
}

/// σ_ℓ of the values; σ_0 = 1 and σ_ℓ = 0 once ℓ exceeds the length.
pub fn elementary_symmetric(values: &[Rational], ell: usize) -> Rational {
    if ell > values.len() {
        return Rational::zero();
    }
    // e[k] after processing a prefix holds σ_k of that prefix
    let mut e = vec![Rational::zero(); ell + 1];
    e[0] = Rational::one();
    for v in values {
        for k in (1..=ell).rev() {
            let add = &e[k - 1] * v;
            e[k] += add;
        }
    }
    e.swap_remove(ell)
}

/// All of σ_0 … σ_len at once.
pub fn elementary_symmetric_all(values: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); values.len() + 1];
    e[0] = Rational::one();
    for (seen, v) in values.iter().enumerate() {
        for k in (1..=seen + 1).rev() {
            let add = &e[k - 1] * v;
            e[k] += add;
        }
    }
    e
}

/// Σ vᵢ^ℓ; ℓ = 0 gives the count.
pub fn power_sum(values: &[Rational], ell: u32) -> Rational {
    values
        .iter()
        .map(|v| num_traits::pow(v.clone(), ell as usize))
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// Truncated power series with exact coefficients: `coeffs[k]` is the
/// coefficient of tᵏ, everything above `len - 1` is discarded.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn from_coeffs(mut coeffs: Vec<Rational>, len: usize) -> Self {
        coeffs.resize(len, Rational::zero());
        Series { coeffs }
    }

    pub fn one(len: usize) -> Self {
        Series::from_coeffs(vec![Rational::one()], len)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn add(&self, other: &Series) -> Series {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Series { coeffs }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let len = self.len().min(other.len());
        let mut out = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        Series { coeffs: out }
    }

    /// Series division by long division; `den` must have a nonzero
    /// constant term.
    pub fn div(&self, den: &Series) -> Option<Series> {
        let len = self.len().min(den.len());
        let d0 = den.coeffs.first()?.clone();
        if d0.is_zero() {
            return None;
        }
        let mut rem = self.coeffs[..len].to_vec();
        let mut out = vec![Rational::zero(); len];
        for k in 0..len {
            let q = &rem[k] / &d0;
            if !q.is_zero() {
                for (j, dj) in den.coeffs.iter().enumerate().take(len - k) {
                    rem[k + j] -= &q * dj;
                }
            }
            out[k] = q;
        }
        Some(Series { coeffs: out })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(xs: &[(i64, i64)]) -> Vec<Rational> {
        xs.iter().map(|&(p, q)| rat(p, q)).collect()
    }

    #[test]
    fn elementary_symmetric_examples() {
        let v = rs(&[(2, 1), (0, 1), (-1, 1)]);
        assert_eq!(elementary_symmetric(&v, 0), int(1));
        assert_eq!(elementary_symmetric(&v, 2), int(-2));
        assert_eq!(elementary_symmetric(&v, 3), int(0));
        assert_eq!(elementary_symmetric(&v, 7), int(0));
        assert_eq!(elementary_symmetric_all(&v), vec![int(1), int(1), int(-2), int(0)]);
    }

    #[test]
    fn power_sum_examples() {
        let v = rs(&[(5, 2), (1, 2), (-3, 2)]);
        assert_eq!(power_sum(&v, 1), rat(3, 2));
        assert_eq!(power_sum(&v, 3), rat(99, 8));
        assert_eq!(power_sum(&v, 0), int(3));
        assert_eq!(power_sum(&[], 2), int(0));
    }

    #[test]
    fn half_int_parse_and_render() {
        let h: HalfInt = "3/2".parse().unwrap();
        assert_eq!(h.twice(), &BigInt::from(3));
        assert!(!h.is_integral());
        assert_eq!(h.to_string(), "3/2");
        let k: HalfInt = "-4/2".parse().unwrap();
        assert_eq!(k.to_string(), "-2");
        assert!(k.is_integral());
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("x".parse::<HalfInt>().is_err());
        assert!("1/0".parse::<HalfInt>().is_err());
        assert!(HalfInt::from_twice(1) < HalfInt::from_int(1));
    }

    #[test]
    fn series_division_inverts_multiplication() {
        // (1 + 2t) / (1 - t) = 1 + 3t + 3t^2 + ...
        let a = Series::from_coeffs(vec![int(1), int(2)], 5);
        let b = Series::from_coeffs(vec![int(1), int(-1)], 5);
        let q = a.div(&b).unwrap();
        assert_eq!(q.into_coeffs(), vec![int(1), int(3), int(3), int(3), int(3)]);
        assert!(a.div(&Series::from_coeffs(vec![int(0), int(1)], 5)).is_none());
    }

    #[test]
    fn sqrt_rendering() {
        assert_eq!(sqrt_text(&rat(3, 5)), "√(3/5)");
        assert_eq!(sqrt_text(&int(2)), "√2");
        assert_eq!(sqrt_text(&int(0)), "0");
    }
}
