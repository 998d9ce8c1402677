//! Arbitrary-precision rational numbers.
//!
//! Thin wrapper around [`num_rational::BigRational`] pinning the invariants the
//! rest of the crate relies on: always in lowest terms, denominator positive,
//! zero stored as 0/1. Serialization uses decimal strings so that values of any
//! size survive JSON round-trips.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: BigInt, denom: BigInt) -> Option<Rational> {
        if denom.is_zero() {
            return None;
        }
        Some(Rational(BigRational::new(numer, denom)))
    }

    pub fn from_int(v: i64) -> Rational {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn one() -> Rational {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        let s = self.numer().to_string();
        s.parse().ok()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Option<Rational> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn pow(&self, exp: i64) -> Option<Rational> {
        if exp == 0 {
            return Some(Rational::one());
        }
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut acc = Rational::one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    /// Exact square root, if `self` is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Rational> {
        if self.is_negative() {
            return None;
        }
        if self.is_zero() {
            return Some(Rational::zero());
        }
        let ns = self.numer().sqrt();
        let ds = self.denom().sqrt();
        if &(&ns * &ns) == self.numer() && &(&ds * &ds) == self.denom() {
            Rational::new(ns, ds)
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        // Good enough for display purposes; exact paths never call this.
        let n: f64 = self.numer().to_string().parse().unwrap_or(f64::NAN);
        let d: f64 = self.denom().to_string().parse().unwrap_or(f64::NAN);
        n / d
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Rational, String> {
        let parse_int =
            |t: &str| BigInt::from_str(t.trim()).map_err(|e| format!("invalid integer `{t}`: {e}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let numer = parse_int(n)?;
                let denom = parse_int(d)?;
                Rational::new(numer, denom).ok_or_else(|| format!("zero denominator in `{s}`"))
            }
            None => Ok(Rational(BigRational::from_integer(parse_int(s)?))),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&self.numer().to_string())?;
        seq.serialize_element(&self.denom().to_string())?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        struct RatVisitor;

        impl<'de> Visitor<'de> for RatVisitor {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a [\"num\",\"den\"] pair, a \"p/q\" string, or an integer")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Rational, A::Error> {
                let n: String = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let d: String = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<String>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                format!("{n}/{d}").parse().map_err(de::Error::custom)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                v.parse().map_err(de::Error::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(Rational::from_int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational(BigRational::from_integer(BigInt::from(v))))
            }
        }

        deserializer.deserialize_any(RatVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d)).unwrap()
    }

    #[test]
    fn lowest_terms_and_sign() {
        let r = q(6, -4);
        assert_eq!(r.numer().to_string(), "-3");
        assert_eq!(r.denom().to_string(), "2");
        assert_eq!(q(0, 7), Rational::zero());
        assert_eq!(q(0, 7).denom().to_string(), "1");
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        assert_eq!(&q(1, 2) * &q(2, 3), q(1, 3));
        assert_eq!(&q(1, 2) / &q(1, 4), q(2, 1));
        assert_eq!(-q(3, 5), q(-3, 5));
    }

    #[test]
    fn sqrt_exact_cases() {
        assert_eq!(q(4, 9).sqrt_exact(), Some(q(2, 3)));
        assert_eq!(q(2, 1).sqrt_exact(), None);
        assert_eq!(q(-4, 1).sqrt_exact(), None);
        assert_eq!(q(0, 1).sqrt_exact(), Some(Rational::zero()));
    }

    #[test]
    fn parse_and_serde_round_trip() {
        let r: Rational = "-22/7".parse().unwrap();
        assert_eq!(r, q(-22, 7));
        let js = serde_json::to_string(&r).unwrap();
        assert_eq!(js, r#"["-22","7"]"#);
        let back: Rational = serde_json::from_str(&js).unwrap();
        assert_eq!(back, r);
        let from_str: Rational = serde_json::from_str(r#""5/3""#).unwrap();
        assert_eq!(from_str, q(5, 3));
        let from_int: Rational = serde_json::from_str("12").unwrap();
        assert_eq!(from_int, q(12, 1));
    }

    #[test]
    fn pow_handles_negative_exponents() {
        assert_eq!(q(2, 3).pow(-2), Some(q(9, 4)));
        assert_eq!(Rational::zero().pow(-1), None);
        assert_eq!(q(7, 2).pow(0), Some(Rational::one()));
    }
}
