//! Exact rational values.
//!
//! [`ExactProb`] is the currency of every exact result in the crate. It is a
//! thin newtype over [`BigRational`], always kept in lowest terms, that
//! prints as `p/q` and serializes the same way.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An arbitrary-precision rational in lowest terms.
///
/// Probabilities live in `[0, 1]`; expectations built from the same type may
/// exceed 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactProb(BigRational);

impl ExactProb {
    pub fn zero() -> Self {
        ExactProb(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactProb(BigRational::one())
    }

    /// `numer / denom`, reduced. Panics on a zero denominator.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        ExactProb(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        ExactProb(BigRational::from_integer(value.into()))
    }

    /// `(1/2)^k`.
    pub fn half_pow(k: u32) -> Self {
        ExactProb::new(1, BigInt::one() << k as usize)
    }

    /// `(1/4)^k`.
    pub fn quarter_pow(k: u32) -> Self {
        ExactProb::half_pow(2 * k)
    }

    pub fn from_rational(value: BigRational) -> Self {
        ExactProb(value)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_rational(self) -> BigRational {
        self.0
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

    pub fn abs(&self) -> Self {
        ExactProb(self.0.abs())
    }

    /// Nearest `f64`, correct even when numerator and denominator overflow
    /// `f64` individually.
    pub fn to_f64(&self) -> f64 {
        if let Some(v) = self.0.to_f64() {
            if v.is_finite() {
                return v;
            }
        }
        ratio_to_f64(self.numer(), self.denom())
    }
}

/// Long-division fallback for rationals whose parts do not fit in `f64`.
fn ratio_to_f64(numer: &BigInt, denom: &BigInt) -> f64 {
    let negative = numer.is_negative() != denom.is_negative();
    let num: BigUint = numer.magnitude().clone();
    let den: BigUint = denom.magnitude().clone();
    if num.is_zero() {
        return 0.0;
    }
    // Scale so the integer quotient carries 64 significant bits.
    let shift = 64 + den.bits() as i64 - num.bits() as i64;
    let q = if shift >= 0 {
        (num << shift as usize) / &den
    } else {
        (num >> (-shift) as usize) / &den
    };
    let mantissa = q.to_f64().unwrap_or(f64::NAN);
    let value = mantissa * 2f64.powi(-shift as i32);
    if negative {
        -value
    } else {
        value
    }
}

impl fmt::Display for ExactProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for ExactProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactProb {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid("rational must look like p/q", s);
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(ExactProb::new(p, q))
    }
}

impl Serialize for ExactProb {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactProb {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactProb {
            type Output = ExactProb;
            fn $method(self, rhs: ExactProb) -> ExactProb {
                ExactProb(self.0.$method(rhs.0))
            }
        }

        impl<'a> $trait<&'a ExactProb> for ExactProb {
            type Output = ExactProb;
            fn $method(self, rhs: &'a ExactProb) -> ExactProb {
                ExactProb(self.0.$method(&rhs.0))
            }
        }

        impl<'a, 'b> $trait<&'b ExactProb> for &'a ExactProb {
            type Output = ExactProb;
            fn $method(self, rhs: &'b ExactProb) -> ExactProb {
                ExactProb((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for ExactProb {
    type Output = ExactProb;
    fn neg(self) -> ExactProb {
        ExactProb(-self.0)
    }
}

impl Sum for ExactProb {
    fn sum<I: Iterator<Item = ExactProb>>(iter: I) -> Self {
        iter.fold(ExactProb::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for ExactProb {
    fn from(v: i64) -> Self {
        ExactProb::from_integer(v)
    }
}

impl From<BigRational> for ExactProb {
    fn from(v: BigRational) -> Self {
        ExactProb(v)
    }
}
