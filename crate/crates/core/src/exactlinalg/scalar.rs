//! Exact scalars in the Gaussian rationals ℚ(i).
//!
//! Both parts are arbitrary-precision rationals kept in lowest terms with a
//! positive denominator, so structural equality coincides with numeric
//! equality.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::WorkbenchError;

/// `re + im·i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        // BigRational is always stored reduced with a positive denominator.
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `num/den` as a real scalar. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    /// `re + im·i` from integer parts.
    pub fn from_parts(re: i64, im: i64) -> Self {
        Self::new(
            BigRational::from_integer(BigInt::from(re)),
            BigRational::from_integer(BigInt::from(im)),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|²`, a non-negative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Exact division; fails on a zero divisor.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self, WorkbenchError> {
        let inv = rhs
            .checked_inv()
            .ok_or_else(|| WorkbenchError::InvalidOperand("division by zero".into()))?;
        Ok(self * &inv)
    }

    /// `(-1)^e` as a scalar.
    pub fn sign(negative: bool) -> Self {
        if negative {
            Self::from_int(-1)
        } else {
            Self::one()
        }
    }
}

/// Scalar operations selectable at runtime (used by the property tests and
/// the CLI's expression checks).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith(
    a: &GaussianRational,
    b: &GaussianRational,
    op: ScalarOp,
) -> Result<GaussianRational, WorkbenchError> {
    Ok(match op {
        ScalarOp::Add => a + b,
        ScalarOp::Sub => a - b,
        ScalarOp::Mul => a * b,
        ScalarOp::Div => a.checked_div(b)?,
    })
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => f.write_str(&fmt_rational(&self.re)),
            (true, false) => write!(f, "{}*i", fmt_rational(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(
                    f,
                    "{}{}{}*i",
                    fmt_rational(&self.re),
                    sign,
                    fmt_rational(&self.im.abs())
                )
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, WorkbenchError> {
    let bad = || WorkbenchError::Parse(format!("malformed rational `{s}`"));
    let s = s.trim();
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses the imaginary coefficient of a term ending in `i`: `"3/2*i"`,
/// `"-i"`, `"+2i"`.
fn parse_imag(s: &str) -> Result<BigRational, WorkbenchError> {
    let body = s.strip_suffix('i').unwrap_or(s);
    if let Some(coeff) = body.strip_suffix('*') {
        return parse_rational(coeff);
    }
    match body {
        "" | "+" => Ok(BigRational::one()),
        "-" => Ok(-BigRational::one()),
        _ => parse_rational(body),
    }
}

impl FromStr for GaussianRational {
    type Err = WorkbenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(WorkbenchError::Parse("empty scalar".into()));
        }
        if !s.ends_with('i') {
            return Ok(Self::new(parse_rational(&s)?, BigRational::zero()));
        }
        // Split at the last sign that is not the leading one.
        let split = s
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(idx, _)| idx)
            .last();
        match split {
            Some(idx) => {
                let re = parse_rational(&s[..idx])?;
                let im = parse_imag(&s[idx..])?;
                Ok(Self::new(re, im))
            }
            None => Ok(Self::new(BigRational::zero(), parse_imag(&s)?)),
        }
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self::Output {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self::Output {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> Self::Output {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> Self::Output {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> Self::Output {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::new(&self.re * &rhs.re, BigRational::zero());
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

/// Panics on a zero divisor; use [`GaussianRational::checked_div`] for
/// untrusted operands.
impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> Self::Output {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> Self::Output {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> Self::Output {
                (&self).$method(rhs)
            }
        }
        impl $trait<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> Self::Output {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign for GaussianRational {
    fn add_assign(&mut self, rhs: GaussianRational) {
        *self += &rhs;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl SubAssign for GaussianRational {
    fn sub_assign(&mut self, rhs: GaussianRational) {
        *self -= &rhs;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl Sum for GaussianRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Sum<&'a GaussianRational> for GaussianRational {
    fn sum<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for GaussianRational {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}

/// Shorthand for building scalars from string literals in tests and
/// built-in tables. Panics on malformed input.
pub fn gq(s: &str) -> GaussianRational {
    s.parse().unwrap_or_else(|e| panic!("bad scalar literal `{s}`: {e}"))
}
