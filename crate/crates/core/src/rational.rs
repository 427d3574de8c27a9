//! Exact non-negative-friendly rational numbers.
//!
//! Every weight, bound and budget in the crate is a [`Rational`]. Comparisons
//! that decide termination (strict weight gains, `|P| + 2 sl(P) <= 7/eps`) are
//! never made in floating point.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational number, always held in lowest terms with a positive
/// denominator. Renders as `num/den` (integers render as `k/1`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

/// Failure to read a rational from text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("`{literal}` has {digits} fractional digits, at most {max} are accepted")]
    TooManyDigits { literal: String, digits: usize, max: usize },
}

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(numer.into(), denom))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
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

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Largest integer not exceeding `self`.
    pub fn floor(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }

    /// Smallest integer not below `self`.
    pub fn ceil(&self) -> BigInt {
        self.numer().div_ceil(self.denom())
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    /// Lossy conversion for display and ratios in reports.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Fixed-point decimal rendering with `places` digits, rounded half away from zero.
    pub fn to_decimal(&self, places: usize) -> String {
        let scale = BigInt::from(10u32).pow(places as u32);
        let scaled = &self.0 * BigRational::from_integer(scale.clone());
        let rounded = scaled.round().to_integer();
        let negative = rounded.is_negative();
        let digits = rounded.abs().to_string();
        let (int_part, frac_part) = if places == 0 {
            (digits, String::new())
        } else if digits.len() > places {
            let split = digits.len() - places;
            (digits[..split].to_string(), digits[split..].to_string())
        } else {
            ("0".to_string(), format!("{digits:0>places$}"))
        };
        let sign = if negative { "-" } else { "" };
        if places == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    /// Parses `a/b`, `a`, or a decimal `x.yyy` with at most `max_digits`
    /// fractional digits, converting exactly.
    pub fn parse_with_max_digits(text: &str, max_digits: usize) -> Result<Self, ParseRationalError> {
        let s = text.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let invalid = || ParseRationalError::Invalid(s.to_string());
        if let Some((num, den)) = s.split_once('/') {
            let num: BigInt = parse_int(num.trim()).ok_or_else(invalid)?;
            let den: BigInt = parse_int(den.trim()).ok_or_else(invalid)?;
            if den.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            return Ok(Rational::new(num, den));
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(invalid());
            }
            if frac_part.len() > max_digits {
                return Err(ParseRationalError::TooManyDigits {
                    literal: s.to_string(),
                    digits: frac_part.len(),
                    max: max_digits,
                });
            }
            let negative = int_part.starts_with('-');
            let int_digits = int_part.trim_start_matches(['-', '+']);
            let int_value: BigInt = if int_digits.is_empty() {
                BigInt::zero()
            } else {
                parse_int(int_digits).ok_or_else(invalid)?
            };
            let frac_value: BigInt = frac_part.parse().map_err(|_| invalid())?;
            let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
            let magnitude = int_value * &scale + frac_value;
            let numer = if negative { -magnitude } else { magnitude };
            return Ok(Rational::new(numer, scale));
        }
        Ok(Rational::from_integer(parse_int(s).ok_or_else(invalid)?))
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Decimal literals accept at most this many fractional digits.
pub const MAX_DECIMAL_DIGITS: usize = 9;

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rational::parse_with_max_digits(s, MAX_DECIMAL_DIGITS)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigRational> for Rational {
    fn from(v: BigRational) -> Self {
        Rational(v)
    }
}

impl From<Rational> for BigRational {
    fn from(v: Rational) -> Self {
        v.0
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0 == BigRational::from_integer(BigInt::from(*other))
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(&BigRational::from_integer(BigInt::from(*other)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let x = r(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(Rational::from_integer(4).to_string(), "4/1");
    }

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!("1/4".parse::<Rational>().unwrap(), r(1, 4));
        assert_eq!("0.25".parse::<Rational>().unwrap(), r(1, 4));
        assert_eq!(".5".parse::<Rational>().unwrap(), r(1, 2));
        assert_eq!("7".parse::<Rational>().unwrap(), r(7, 1));
        assert_eq!("-1.5".parse::<Rational>().unwrap(), r(-3, 2));
        assert_eq!("0.000000001".parse::<Rational>().unwrap(), r(1, 1_000_000_000));
    }

    #[test]
    fn rejects_bad_literals() {
        assert!(matches!("".parse::<Rational>(), Err(ParseRationalError::Empty)));
        assert!(matches!(
            "1/0".parse::<Rational>(),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
        assert!(matches!(
            "0.0000000001".parse::<Rational>(),
            Err(ParseRationalError::TooManyDigits { digits: 10, .. })
        ));
        assert!("abc".parse::<Rational>().is_err());
        assert!("1/2/3".parse::<Rational>().is_err());
        assert!("1.".parse::<Rational>().is_err());
        assert!("--1".parse::<Rational>().is_err());
    }

    #[test]
    fn floor_and_ceil_are_exact() {
        assert_eq!(r(7, 2).floor(), BigInt::from(3));
        assert_eq!(r(7, 2).ceil(), BigInt::from(4));
        assert_eq!(r(-7, 2).floor(), BigInt::from(-4));
        assert_eq!(r(8, 2).floor(), BigInt::from(4));
        assert_eq!(r(8, 2).ceil(), BigInt::from(4));
    }

    #[test]
    fn exact_addition() {
        assert_eq!(r(1, 3) + r(1, 6), r(1, 2));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(r(2, 3).to_decimal(6), "0.666667");
        assert_eq!(r(3, 4).to_decimal(2), "0.75");
        assert_eq!(r(5, 1).to_decimal(3), "5.000");
        assert_eq!(r(1, 1000).to_decimal(2), "0.00");
        assert_eq!(r(-1, 2).to_decimal(1), "-0.5");
    }

    #[test]
    fn serde_as_text() {
        let json = serde_json::to_string(&r(3, 2)).unwrap();
        assert_eq!(json, "\"3/2\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r(3, 2));
    }
}
