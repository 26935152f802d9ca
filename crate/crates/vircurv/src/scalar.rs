//! Exact rational and Gaussian-rational scalars.
//!
//! Every quantity in this crate is an arbitrary-precision rational.
//! Floating point appears only in report fields explicitly suffixed
//! `_approx`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::error::Error;

/// Arbitrary-precision rational, kept in lowest terms with a positive
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar(BigRational::from(BigInt::from(n)))
    }

    /// Builds `num/den` in lowest terms.
    ///
    /// Panics if `den == 0`; fallible construction goes through the
    /// parser or [`Scalar::checked_div`].
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "scalar denominator must be nonzero");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar(BigRational::from(n))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(&self.0 / &rhs.0))
    }

    /// Nearest double, for report fields labeled approximate.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

macro_rules! impl_scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
    };
}

impl_scalar_binop!(Add, add);
impl_scalar_binop!(Sub, sub);
impl_scalar_binop!(Mul, mul);

/// Division panics on a zero divisor; use [`Scalar::checked_div`] where the
/// divisor is not known to be nonzero.
impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "scalar division by zero");
        Scalar(&self.0 / &rhs.0)
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        (&self).div(&rhs)
    }
}

impl Div<&Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        (&self).div(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Parse failure for a scalar literal `p` or `p/q` with optional leading
/// sign. Offsets are 0-based character positions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarParseError {
    #[error("invalid scalar at offset {0}: expected digit")]
    ExpectedDigit(usize),
    #[error("invalid scalar at offset {0}: unexpected character {1:?}")]
    UnexpectedChar(usize, char),
    #[error("invalid scalar at offset {0}: denominator is zero")]
    ZeroDenominator(usize),
}

impl FromStr for Scalar {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        if matches!(chars.get(i), Some('+') | Some('-')) {
            i += 1;
        }
        let num_start = i;
        while matches!(chars.get(i), Some(c) if c.is_ascii_digit()) {
            i += 1;
        }
        if i == num_start {
            return Err(ScalarParseError::ExpectedDigit(i));
        }
        let numer: BigInt = chars[..i]
            .iter()
            .collect::<String>()
            .parse()
            .expect("sign and digits form a valid integer");
        if i == chars.len() {
            return Ok(Scalar(BigRational::from(numer)));
        }
        if chars[i] != '/' {
            return Err(ScalarParseError::UnexpectedChar(i, chars[i]));
        }
        i += 1;
        let den_start = i;
        while matches!(chars.get(i), Some(c) if c.is_ascii_digit()) {
            i += 1;
        }
        if i == den_start {
            return Err(ScalarParseError::ExpectedDigit(i));
        }
        if i != chars.len() {
            return Err(ScalarParseError::UnexpectedChar(i, chars[i]));
        }
        let denom: BigInt = chars[den_start..i]
            .iter()
            .collect::<String>()
            .parse()
            .expect("digits form a valid integer");
        if denom.is_zero() {
            return Err(ScalarParseError::ZeroDenominator(den_start));
        }
        Ok(Scalar(BigRational::new(numer, denom)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Gaussian-rational scalar `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexScalar {
    pub re: Scalar,
    pub im: Scalar,
}

impl ComplexScalar {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        ComplexScalar { re, im }
    }

    pub fn zero() -> Self {
        ComplexScalar::new(Scalar::zero(), Scalar::zero())
    }

    pub fn one() -> Self {
        ComplexScalar::new(Scalar::one(), Scalar::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        ComplexScalar::new(Scalar::zero(), Scalar::one())
    }

    pub fn from_real(re: Scalar) -> Self {
        ComplexScalar::new(re, Scalar::zero())
    }

    /// `i * n` for an integer `n`.
    pub fn imag_int(n: i64) -> Self {
        ComplexScalar::new(Scalar::zero(), Scalar::int(n))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexScalar::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Scalar {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplication by the imaginary unit.
    pub fn times_i(&self) -> Self {
        ComplexScalar::new(-&self.im, self.re.clone())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        ComplexScalar::new(&self.re * s, &self.im * s)
    }
}

impl Add for &ComplexScalar {
    type Output = ComplexScalar;
    fn add(self, rhs: &ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &ComplexScalar {
    type Output = ComplexScalar;
    fn sub(self, rhs: &ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &ComplexScalar {
    type Output = ComplexScalar;
    fn mul(self, rhs: &ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        ComplexScalar::new(-&self.re, -&self.im)
    }
}

impl Add for ComplexScalar {
    type Output = ComplexScalar;
    fn add(self, rhs: ComplexScalar) -> ComplexScalar {
        &self + &rhs
    }
}

impl Sub for ComplexScalar {
    type Output = ComplexScalar;
    fn sub(self, rhs: ComplexScalar) -> ComplexScalar {
        &self - &rhs
    }
}

impl Mul for ComplexScalar {
    type Output = ComplexScalar;
    fn mul(self, rhs: ComplexScalar) -> ComplexScalar {
        &self * &rhs
    }
}

impl Neg for ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        -&self
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn imag_part(im: &Scalar) -> String {
            if im.is_one() {
                "i".to_string()
            } else if im.denom().is_one() {
                format!("{im}i")
            } else {
                format!("({im})i")
            }
        }
        if self.is_zero() {
            write!(f, "0")
        } else if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{}", imag_part(&self.im.abs()))
            } else {
                write!(f, "{}", imag_part(&self.im))
            }
        } else if self.im.is_negative() {
            write!(f, "{} - {}", self.re, imag_part(&self.im.abs()))
        } else {
            write!(f, "{} + {}", self.re, imag_part(&self.im))
        }
    }
}
