//! Numeric plumbing shared by the float and exact-rational code paths.
//!
//! Every quantity in an [`Economy`](crate::model::Economy) is held as a
//! [`Value`]: an exact rational together with its `f64` image. Algorithms that
//! must run in both modes are generic over [`Scalar`], implemented for `f64`
//! and [`Rational`].

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};

use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Arithmetic used by the generic table, polynomial and certificate code.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// `true` when arithmetic is exact.
    const EXACT: bool;

    fn from_value(v: &Value) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn from_i64(i: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// -1, 0 or 1.
    fn sign(&self) -> i8;
    fn powu(&self, k: u32) -> Self;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_value(v: &Value) -> Self {
        v.float
    }
    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }
    fn from_i64(i: i64) -> Self {
        i as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sign(&self) -> i8 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }
    fn powu(&self, k: u32) -> Self {
        self.powi(k as i32)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_value(v: &Value) -> Self {
        v.exact.clone()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn from_i64(i: i64) -> Self {
        Rational::from_integer(BigInt::from(i))
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
    fn sign(&self) -> i8 {
        match self.numer().sign() {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::NoSign => 0,
        }
    }
    fn powu(&self, k: u32) -> Self {
        Pow::pow(self, k)
    }
}

/// A model quantity: its exact rational representation and its `f64` image.
///
/// `is_exact` is false when the true value is irrational (for instance
/// `beta^(1/gamma)`) and `exact` holds the rational value of the rounded float.
#[derive(Debug, Clone, PartialEq)]
pub struct Value {
    pub exact: Rational,
    pub float: f64,
    pub is_exact: bool,
}

impl Value {
    pub fn new(exact: Rational) -> Self {
        let float = rational_to_f64(&exact);
        Value {
            exact,
            float,
            is_exact: true,
        }
    }

    /// Wraps a float that approximates an irrational quantity.
    pub fn rounded(float: f64) -> Result<Self> {
        let exact =
            Rational::from_float(float).ok_or_else(|| Error::InvalidParameter(format!("non-finite value {float}")))?;
        Ok(Value {
            exact,
            float,
            is_exact: false,
        })
    }

    pub fn from_f64(x: f64) -> Result<Self> {
        Ok(Value::new(f64_to_rational(x)?))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(Value::new(parse_rational(s)?))
    }
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value::new(r)
    }
}

impl From<i64> for Value {
    fn from(i: i64) -> Self {
        Value::new(Rational::from_integer(BigInt::from(i)))
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    ToPrimitive::to_f64(r).unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Converts a float through its shortest round-trip decimal representation,
/// so `1.4` becomes `7/5` rather than the nearest dyadic rational.
pub fn f64_to_rational(x: f64) -> Result<Rational> {
    if !x.is_finite() {
        return Err(Error::InvalidParameter(format!("non-finite value {x}")));
    }
    parse_rational(&format!("{x}"))
}

/// Parses `"p/q"`, integers, decimals and scientific notation exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::ConfigParse(format!("cannot parse number {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_rational(num)?;
        let den = parse_rational(den)?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(num / den);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(idx) => (&s[..idx], s[idx + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{whole}{frac}");
    let numer: BigInt = if all_digits.is_empty() {
        BigInt::zero()
    } else {
        all_digits.parse().map_err(|_| bad())?
    };
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10u32);
    let mut value = Rational::from_integer(numer);
    if scale >= 0 {
        value *= Rational::from_integer(Pow::pow(&ten, scale as u32));
    } else {
        value /= Rational::from_integer(Pow::pow(&ten, scale.unsigned_abs()));
    }
    Ok(if negative { -value } else { value })
}

/// Exact `n`-th root of a positive rational, if it is a perfect power.
pub fn nth_root_exact(r: &Rational, n: u32) -> Option<Rational> {
    if !r.is_positive() || n == 0 {
        return None;
    }
    let num_root = r.numer().nth_root(n);
    let den_root = r.denom().nth_root(n);
    if Pow::pow(&num_root, n) == *r.numer() && Pow::pow(&den_root, n) == *r.denom() {
        Some(Rational::new(num_root, den_root))
    } else {
        None
    }
}

/// Exact `r^(m/n)` when it is rational. Gives up on very large intermediates.
pub fn rational_power_exact(r: &Rational, m: u32, n: u32) -> Option<Rational> {
    const MAX_BITS: u64 = 1 << 14;
    let bits = r.numer().bits().max(r.denom().bits());
    if bits.saturating_mul(m as u64) > MAX_BITS {
        return None;
    }
    let root = nth_root_exact(r, n)?;
    Some(Pow::pow(&root, m))
}

/// Formats a rational as `p/q` (or `p` when integral).
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
