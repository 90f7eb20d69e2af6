//! Scalar abstraction with a binary64 and an exact big-rational realization.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar backed by arbitrary precision integers.
pub type Rational = BigRational;

/// Threshold policy used to decide when a float quantity counts as zero.
///
/// A float value `x` is negligible relative to a running magnitude `scale`
/// when `|x| <= relative * f64::EPSILON * scale`. Exact scalars ignore the
/// policy and only treat an exact zero as zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroPolicy {
    pub relative: f64,
}

impl Default for ZeroPolicy {
    fn default() -> Self {
        ZeroPolicy { relative: 1e2 }
    }
}

/// Field element used by every computation in the crate.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// True for realizations where field axioms hold exactly.
    const EXACT: bool;
    /// Short name used in reports ("f64" or "rational").
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_u128(v: u128) -> Self;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;

    /// Division that reports a zero divisor instead of producing a non-finite value.
    fn checked_div(&self, rhs: &Self) -> Result<Self>;

    /// Parses a decimal literal (with optional exponent) or a `p/q` fraction.
    fn parse_literal(text: &str) -> Result<Self>;

    /// Whether `self` is zero under `policy`, given the magnitude of the
    /// quantities it was accumulated from.
    fn is_negligible(&self, scale: f64, policy: &ZeroPolicy) -> bool;

    /// Equality for exact scalars, relative closeness `tol` for floats.
    fn matches(&self, other: &Self, tol: f64) -> bool;

    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }

    fn ratio(num: i64, den: i64) -> Result<Self> {
        Self::from_i64(num).checked_div(&Self::from_i64(den))
    }

    fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn powi(&self, e: i32) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * self.clone();
        }
        if e < 0 {
            acc.recip()
        } else {
            Ok(acc)
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const NAME: &'static str = "f64";

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_u128(v: u128) -> Self {
        v as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if *rhs == 0.0 {
            return Err(Error::DivisionByZero("f64 division"));
        }
        let q = self / rhs;
        if q.is_finite() {
            Ok(q)
        } else {
            Err(Error::DivisionByZero("f64 division (non-finite quotient)"))
        }
    }

    fn parse_literal(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p: f64 = p.trim().parse().map_err(|_| Error::Parse(text.to_string()))?;
            let q: f64 = q.trim().parse().map_err(|_| Error::Parse(text.to_string()))?;
            return p.checked_div(&q).map_err(|_| Error::Parse(text.to_string()));
        }
        let v: f64 = t.parse().map_err(|_| Error::Parse(text.to_string()))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Parse(text.to_string()))
        }
    }

    fn is_negligible(&self, scale: f64, policy: &ZeroPolicy) -> bool {
        *self == 0.0 || f64::abs(*self) <= policy.relative * f64::EPSILON * scale
    }

    fn matches(&self, other: &Self, tol: f64) -> bool {
        f64::abs(self - other) <= tol * f64::abs(*other).max(1.0)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const NAME: &'static str = "rational";

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_u128(v: u128) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if Zero::is_zero(rhs) {
            Err(Error::DivisionByZero("rational division"))
        } else {
            Ok(self / rhs)
        }
    }

    fn parse_literal(text: &str) -> Result<Self> {
        parse_rational(text.trim()).ok_or_else(|| Error::Parse(text.to_string()))
    }

    fn is_negligible(&self, _scale: f64, _policy: &ZeroPolicy) -> bool {
        Zero::is_zero(self)
    }

    fn matches(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
}

fn parse_rational(t: &str) -> Option<Rational> {
    if let Some((p, q)) = t.split_once('/') {
        let p = parse_rational(p.trim())?;
        let q = parse_rational(q.trim())?;
        return if Zero::is_zero(&q) { None } else { Some(p / q) };
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let numer: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().ok()? };
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(numer);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, scale.unsigned_abs() as usize));
    }
    Some(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d).unwrap()
    }

    #[test]
    fn rational_literals() {
        assert_eq!(Rational::parse_literal("7/10").unwrap(), q(7, 10));
        assert_eq!(Rational::parse_literal("0.5").unwrap(), q(1, 2));
        assert_eq!(Rational::parse_literal("-1.25e1").unwrap(), q(-25, 2));
        assert_eq!(Rational::parse_literal("3e-2").unwrap(), q(3, 100));
        assert_eq!(Rational::parse_literal(" 4 ").unwrap(), q(4, 1));
        assert!(Rational::parse_literal("1/0").is_err());
        assert!(Rational::parse_literal("abc").is_err());
        assert!(Rational::parse_literal(".").is_err());
    }

    #[test]
    fn float_literals() {
        assert_eq!(f64::parse_literal("1/4").unwrap(), 0.25);
        assert_eq!(f64::parse_literal("2.5").unwrap(), 2.5);
        assert!(f64::parse_literal("inf").is_err());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(1.0f64.checked_div(&0.0).is_err());
        assert!(q(1, 3).checked_div(&<Rational as Scalar>::zero()).is_err());
        assert_eq!(q(1, 3).checked_div(&q(2, 3)).unwrap(), q(1, 2));
    }

    #[test]
    fn negligible_uses_running_magnitude() {
        let p = ZeroPolicy::default();
        assert!(1e-20f64.is_negligible(1.0, &p));
        assert!(!1e-10f64.is_negligible(1.0, &p));
        assert!(1e-10f64.is_negligible(1e8, &p));
        assert!(!q(1, 1_000_000_000).is_negligible(1e30, &p));
    }

    #[test]
    fn integer_powers() {
        assert_eq!(q(1, 2).powi(3).unwrap(), q(1, 8));
        assert_eq!(q(2, 1).powi(-2).unwrap(), q(1, 4));
        assert_eq!(q(0, 1).powi(0).unwrap(), q(1, 1));
    }
}
