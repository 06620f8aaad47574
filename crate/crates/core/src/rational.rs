//! Exact rationals for Clifford-index values.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A reduced fraction with positive denominator.
///
/// Displays and serializes as `"p/q"` even when `q = 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("expected \"p/q\", got {0:?}")]
    Shape(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("{0:?} is not in lowest terms with a positive denominator")]
    NotReduced(String),
}

impl ExactRational {
    /// Panics on a zero denominator.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Self(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.denom().is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0 > BigRational::zero()
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Accepts only the canonical `"p/q"` rendering.
impl FromStr for ExactRational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (p, q) = s
            .split_once('/')
            .ok_or_else(|| ParseRationalError::Shape(s.to_owned()))?;
        let p: BigInt = p
            .parse()
            .map_err(|_| ParseRationalError::Shape(s.to_owned()))?;
        let q: BigInt = q
            .parse()
            .map_err(|_| ParseRationalError::Shape(s.to_owned()))?;
        if q.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.to_owned()));
        }
        let r = ExactRational::new(p.clone(), q.clone());
        if *r.numer() != p || *r.denom() != q {
            return Err(ParseRationalError::NotReduced(s.to_owned()));
        }
        Ok(r)
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for ExactRational {
    type Output = ExactRational;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for ExactRational {
    type Output = ExactRational;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        let r = ExactRational::new(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(ExactRational::from_integer(7).to_string(), "7/1");
        assert_eq!(ExactRational::new(0, 5).to_string(), "0/1");
    }

    #[test]
    fn parse_accepts_only_canonical() {
        assert_eq!("9/2".parse(), Ok(ExactRational::new(9, 2)));
        assert_eq!("-1/2".parse(), Ok(ExactRational::new(-1, 2)));
        assert!(matches!(
            "2/4".parse::<ExactRational>(),
            Err(ParseRationalError::NotReduced(_))
        ));
        assert!(matches!(
            "1/-2".parse::<ExactRational>(),
            Err(ParseRationalError::NotReduced(_))
        ));
        assert!(matches!(
            "3".parse::<ExactRational>(),
            Err(ParseRationalError::Shape(_))
        ));
        assert!(matches!(
            "3/0".parse::<ExactRational>(),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
    }

    #[test]
    fn ordering_is_numeric() {
        assert!(ExactRational::new(9, 2) < ExactRational::from_integer(5));
        assert!(ExactRational::new(-1, 3) < ExactRational::new(-1, 4));
        assert_eq!(
            ExactRational::new(9, 2).min(ExactRational::from_integer(5)),
            ExactRational::new(9, 2)
        );
    }

    #[test]
    fn serde_uses_string_form() {
        let r = ExactRational::new(13, 2);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, "\"13/2\"");
        let back: ExactRational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
