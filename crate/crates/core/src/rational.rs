//! Exact rational numbers for threshold arithmetic.
//!
//! Every threshold test in the pipeline compares an integer count against a
//! [`Rational`]. Hot loops never compare rationals directly: they precompute
//! an integer cutoff with [`Rational::ceil_i128`] / [`Rational::floor_i128`],
//! which is exact for integer counts.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RationalError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse {0:?} as a rational (expected `p`, `p/q` or a decimal)")]
    Parse(String),
}

/// An exact, always-reduced rational number with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, RationalError> {
        let den = den.into();
        if den.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// `num / 2^exp`.
    pub fn dyadic(num: impl Into<BigInt>, exp: u32) -> Self {
        Rational(BigRational::new(num.into(), BigInt::one() << exp))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Ceiling, saturated into the `i128` range.
    ///
    /// For an integer `c`: `c >= self` iff `c >= self.ceil_i128()` and
    /// `c < self` iff `c < self.ceil_i128()`.
    pub fn ceil_i128(&self) -> i128 {
        saturate(&self.ceil())
    }

    /// Floor, saturated into the `i128` range.
    ///
    /// For an integer `c`: `c <= self` iff `c <= self.floor_i128()`.
    pub fn floor_i128(&self) -> i128 {
        saturate(&self.floor())
    }

    /// Exact comparison of an integer count against this value.
    pub fn cmp_count(&self, count: u64) -> Ordering {
        BigRational::from_integer(BigInt::from(count)).cmp(&self.0)
    }

    /// Nearest approximation, for display and logging only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// The value as `(num, den)` if both fit in `u64` (non-negative values only).
    pub fn to_u64_pair(&self) -> Option<(u64, u64)> {
        Some((self.numer().to_u64()?, self.denom().to_u64()?))
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Nearest integer, halves rounded away from zero.
    pub fn round(&self) -> BigInt {
        self.0.round().to_integer()
    }

    /// Parse a finite decimal string like `0.125` or `-3.5e-2` exactly.
    fn parse_decimal(s: &str) -> Option<Self> {
        let (mantissa, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
            None => (s, 0),
        };
        let (neg, mantissa) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = match mantissa.split_once('.') {
            Some((i, f)) => (i, f),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
        {
            return None;
        }
        let digits = format!("{int_part}{frac_part}");
        let mut num: BigInt = digits.parse().ok()?;
        if neg {
            num = -num;
        }
        let scale = exp - frac_part.len() as i32;
        let ten = BigInt::from(10u8);
        let value = if scale >= 0 {
            BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
        } else {
            BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
        };
        Some(Rational(value))
    }
}

fn saturate(v: &BigInt) -> i128 {
    v.to_i128().unwrap_or(if v.is_negative() {
        i128::MIN
    } else {
        i128::MAX
    })
}

impl From<u64> for Rational {
    fn from(v: u64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<usize> for Rational {
    fn from(v: usize) -> Self {
        Rational::from_integer(v)
    }
}

impl FromStr for Rational {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| RationalError::Parse(s.into()))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| RationalError::Parse(s.into()))?;
            return Rational::new(n, d);
        }
        Rational::parse_decimal(s).ok_or_else(|| RationalError::Parse(s.into()))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

// Serialized as `{"num": <int>, "den": <int>}`. Integers beyond the i128
// range are written as decimal strings.
impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Int<'a>(&'a BigInt);
        impl Serialize for Int<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                match self.0.to_i64() {
                    Some(v) => s.serialize_i64(v),
                    None => match self.0.to_i128() {
                        Some(v) => s.serialize_i128(v),
                        None => s.serialize_str(&self.0.to_string()),
                    },
                }
            }
        }
        let mut st = serializer.serialize_struct("Rational", 2)?;
        st.serialize_field("den", &Int(self.denom()))?;
        st.serialize_field("num", &Int(self.numer()))?;
        st.end()
    }
}

struct BigIntRepr(BigInt);

impl<'de> Deserialize<'de> for BigIntRepr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = BigIntRepr;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigIntRepr, E> {
                Ok(BigIntRepr(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigIntRepr, E> {
                Ok(BigIntRepr(v.into()))
            }
            fn visit_i128<E: de::Error>(self, v: i128) -> Result<BigIntRepr, E> {
                Ok(BigIntRepr(v.into()))
            }
            fn visit_u128<E: de::Error>(self, v: u128) -> Result<BigIntRepr, E> {
                Ok(BigIntRepr(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<BigIntRepr, E> {
                v.parse().map(BigIntRepr).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Rational;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a {num, den} object, an integer or a rational string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(Rational::from(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational::from(v))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                v.parse().map_err(E::custom)
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Rational, A::Error> {
                let mut num = None;
                let mut den = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "num" => num = Some(map.next_value::<BigIntRepr>()?.0),
                        "den" => den = Some(map.next_value::<BigIntRepr>()?.0),
                        _ => {
                            map.next_value::<de::IgnoredAny>()?;
                        }
                    }
                }
                let num = num.ok_or_else(|| de::Error::missing_field("num"))?;
                let den = den.ok_or_else(|| de::Error::missing_field("den"))?;
                Rational::new(num, den).map_err(de::Error::custom)
            }
        }
        d.deserialize_any(V)
    }
}
