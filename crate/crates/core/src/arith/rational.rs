use std::fmt;
use std::ops::{Add, Div, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// An exact nonnegative rational number in lowest terms.
///
/// The numerator and denominator are always coprime, and zero is stored as
/// `0/1`. These are the `n(q)` and `d(q)` of the usual factorization-theory
/// notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<BigUint>);

impl Rational {
    /// Builds `n/d` in lowest terms.
    ///
    /// ```
    /// use puiseux::Rational;
    /// let q = Rational::new(4u32, 6u32)?;
    /// assert_eq!((q.numer().clone(), q.denom().clone()), (2u32.into(), 3u32.into()));
    /// assert!(Rational::new(1u32, 0u32).is_err());
    /// # Ok::<(), puiseux::Error>(())
    /// ```
    pub fn new(n: impl Into<BigUint>, d: impl Into<BigUint>) -> Result<Self> {
        let (n, d) = (n.into(), d.into());
        if d.is_zero() {
            return Err(Error::domain("zero denominator"));
        }
        Ok(Rational(Ratio::new(n, d)))
    }

    pub fn from_integer(n: impl Into<BigUint>) -> Self {
        Rational(Ratio::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(Ratio::zero())
    }

    pub fn one() -> Self {
        Rational(Ratio::one())
    }

    pub fn numer(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigUint> {
        self.is_integer().then(|| self.numer().clone())
    }

    /// The value as a `u64`, if it is an integer that fits.
    pub fn to_u64(&self) -> Option<u64> {
        self.to_integer().and_then(|n| n.to_u64())
    }

    /// `self - other`, or `None` if the difference would be negative.
    pub fn checked_sub(&self, other: &Rational) -> Option<Rational> {
        (self >= other).then(|| Rational(&self.0 - &other.0))
    }

    /// `self / other`, or `None` when `other` is zero.
    pub fn checked_div(&self, other: &Rational) -> Option<Rational> {
        (!other.is_zero()).then(|| Rational(&self.0 / &other.0))
    }

    pub fn floor(&self) -> BigUint {
        self.numer() / self.denom()
    }

    /// The largest rational `g` with every input an integer multiple of `g`:
    /// `gcd` of the numerators over `lcm` of the denominators. Zero for an
    /// empty or all-zero input.
    pub fn gcd_of<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
        let mut num = BigUint::zero();
        let mut den = BigUint::one();
        for v in values {
            if v.is_zero() {
                continue;
            }
            num = num.gcd(v.numer());
            den = den.lcm(v.denom());
        }
        if num.is_zero() {
            Rational::zero()
        } else {
            Rational(Ratio::new(num, den))
        }
    }

    /// Always `num/den`, including for integers. Used by the JSON formats.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
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

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `a` or `a/b` with decimal nonnegative integers.
    fn from_str(s: &str) -> Result<Self> {
        let parse = |part: &str| {
            let part = part.trim();
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::domain(format!("not a nonnegative rational: {s:?}")));
            }
            BigUint::from_str(part).map_err(|_| Error::domain(format!("bad integer in {s:?}")))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse(n)?, parse(d)?),
            None => Ok(Rational::from_integer(parse(s)?)),
        }
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigUint> for Rational {
    fn from(n: BigUint) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Mul, mul);
// Division panics on a zero divisor, like the integer types do.
forward_binop!(Div, div);

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_fraction_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u64, d: u64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn reduces_on_construction() {
        let r = q(4, 6);
        assert_eq!(r.numer(), &BigUint::from(2u32));
        assert_eq!(r.denom(), &BigUint::from(3u32));
        let z = q(0, 7);
        assert_eq!(z.denom(), &BigUint::one());
        assert!(z.is_zero());
        let c = q(8, 5);
        assert_eq!((c.numer(), c.denom()), (&BigUint::from(8u32), &BigUint::from(5u32)));
    }

    #[test]
    fn zero_denominator_is_a_domain_error() {
        assert!(matches!(Rational::new(3u32, 0u32), Err(Error::Domain(_))));
        assert!("3/0".parse::<Rational>().is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("12/8".parse::<Rational>().unwrap(), q(3, 2));
        assert_eq!(" 7 ".parse::<Rational>().unwrap(), q(7, 1));
        assert!("-1/2".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
        assert_eq!(q(3, 2).to_string(), "3/2");
        assert_eq!(q(4, 2).to_string(), "2");
        assert_eq!(q(4, 2).to_fraction_string(), "2/1");
    }

    #[test]
    fn checked_sub_refuses_negatives() {
        assert_eq!(q(1, 2).checked_sub(&q(1, 3)), Some(q(1, 6)));
        assert_eq!(q(1, 3).checked_sub(&q(1, 2)), None);
    }

    #[test]
    fn rational_gcd() {
        let g = Rational::gcd_of(&[q(4, 5), q(6, 7)]);
        assert_eq!(g, q(2, 35));
        let g = Rational::gcd_of(&[q(2, 1), q(3, 1)]);
        assert_eq!(g, q(1, 1));
        assert!(Rational::gcd_of(&[]).is_zero());
    }

    #[test]
    fn serde_uses_fraction_strings() {
        let s = serde_json::to_string(&q(6, 1)).unwrap();
        assert_eq!(s, "\"6/1\"");
        let back: Rational = serde_json::from_str("\"10/4\"").unwrap();
        assert_eq!(back, q(5, 2));
    }
}
