//! Exact rational values of the ratio `|L1(G)| / |G|`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::GroupError;

/// A nonnegative rational number kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlphaValue(BigRational);

impl AlphaValue {
    pub fn new(
        numerator: impl Into<BigUint>,
        denominator: impl Into<BigUint>,
    ) -> Result<Self, GroupError> {
        let den: BigUint = denominator.into();
        if den.is_zero() {
            return Err(GroupError::InvalidParameter("zero denominator".into()));
        }
        Ok(Self(BigRational::new(
            BigInt::from(numerator.into()),
            BigInt::from(den),
        )))
    }

    pub fn from_rational(value: BigRational) -> Result<Self, GroupError> {
        if value.is_negative() {
            return Err(GroupError::InvalidParameter(format!(
                "negative ratio {value}"
            )));
        }
        Ok(Self(value))
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    /// 3/4, the value that defines membership in the class under study.
    pub fn three_quarters() -> Self {
        Self::ratio(3, 4)
    }

    pub fn one_half() -> Self {
        Self::ratio(1, 2)
    }

    /// Small-integer convenience constructor. Panics on a zero denominator.
    pub fn ratio(numerator: u64, denominator: u64) -> Self {
        Self::new(numerator, denominator).expect("nonzero denominator")
    }

    pub fn numerator(&self) -> BigUint {
        self.0.numer().magnitude().clone()
    }

    pub fn denominator(&self) -> BigUint {
        self.0.denom().magnitude().clone()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Absolute difference, exact.
    pub fn distance(&self, other: &AlphaValue) -> BigRational {
        (&self.0 - &other.0).abs()
    }

    pub fn product<'a>(values: impl IntoIterator<Item = &'a AlphaValue>) -> AlphaValue {
        let mut acc = BigRational::one();
        for v in values {
            acc *= &v.0;
        }
        AlphaValue(acc)
    }

    /// Lossy conversion for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl std::ops::Mul for &AlphaValue {
    type Output = AlphaValue;

    fn mul(self, rhs: &AlphaValue) -> AlphaValue {
        AlphaValue(&self.0 * &rhs.0)
    }
}

impl fmt::Display for AlphaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for AlphaValue {
    type Err = GroupError;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GroupError::InvalidParameter(format!("not a rational literal: {s:?}"));
        let (num, den) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigUint = num.parse().map_err(|_| bad())?;
        let den: BigUint = den.parse().map_err(|_| bad())?;
        Self::new(num, den)
    }
}

impl Serialize for AlphaValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AlphaValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let a = AlphaValue::ratio(12, 16);
        assert_eq!(a, AlphaValue::three_quarters());
        assert_eq!(a.to_string(), "3/4");
        assert_eq!(a.numerator(), BigUint::from(3u32));
    }

    #[test]
    fn product_is_exact() {
        let p = &AlphaValue::ratio(3, 4) * &AlphaValue::ratio(2, 3);
        assert_eq!(p, AlphaValue::one_half());
    }

    #[test]
    fn parses_literals() {
        assert_eq!(
            "6/8".parse::<AlphaValue>().unwrap(),
            AlphaValue::three_quarters()
        );
        assert_eq!("1".parse::<AlphaValue>().unwrap(), AlphaValue::one());
        assert!("1/0".parse::<AlphaValue>().is_err());
        assert!("-1/2".parse::<AlphaValue>().is_err());
        assert!("abc".parse::<AlphaValue>().is_err());
    }

    #[test]
    fn json_uses_string_form() {
        let s = serde_json::to_string(&AlphaValue::ratio(5, 8)).unwrap();
        assert_eq!(s, "\"5/8\"");
        let back: AlphaValue = serde_json::from_str(&s).unwrap();
        assert_eq!(back, AlphaValue::ratio(5, 8));
    }
}
