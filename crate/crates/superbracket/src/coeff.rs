//! Exact rational coefficients.
//!
//! Every identity checked by this crate is an exact algebraic statement:
//! a residual is zero or it is not. Coefficients are therefore arbitrary
//! precision rationals, kept in lowest terms with a positive denominator.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// An exact rational number, the coefficient field for all elements.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coeff(BigRational);

impl Coeff {
    pub fn zero() -> Self {
        Coeff(BigRational::zero())
    }

    pub fn one() -> Self {
        Coeff(BigRational::one())
    }

    pub fn minus_one() -> Self {
        -Coeff::one()
    }

    /// Builds `num/den`, reduced. Fails on a zero denominator.
    pub fn fraction(num: i64, den: i64) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::Parse("zero denominator in rational".into()));
        }
        Ok(Coeff(BigRational::new(BigInt::from(num), BigInt::from(den))))
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

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Coeff(self.0.recip()))
        }
    }

    pub fn abs(&self) -> Self {
        Coeff(self.0.abs())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Coeff(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigRational> for Coeff {
    fn from(r: BigRational) -> Self {
        Coeff(r)
    }
}

/// Parses `"p/q"` or a plain integer literal.
impl FromStr for Coeff {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt, Error> {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad rational literal: {s:?}")))
        };
        match s.split_once('/') {
            Some((p, q)) => {
                let num = parse_int(p)?;
                let den = parse_int(q)?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator: {s:?}")));
                }
                Ok(Coeff(BigRational::new(num, den)))
            }
            None => Ok(Coeff(BigRational::from_integer(parse_int(s)?))),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CoeffVisitor;

        impl Visitor<'_> for CoeffVisitor {
            type Value = Coeff;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a string \"p/q\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Coeff, E> {
                Ok(Coeff::from(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Coeff, E> {
                Ok(Coeff(BigRational::from_integer(BigInt::from(v))))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Coeff, E> {
                v.parse().map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_any(CoeffVisitor)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Coeff {
            type Output = Coeff;
            fn $method(self, rhs: Coeff) -> Coeff {
                Coeff((self.0).$method(rhs.0))
            }
        }

        impl $trait for &Coeff {
            type Output = Coeff;
            fn $method(self, rhs: &Coeff) -> Coeff {
                Coeff((&self.0).$method(&rhs.0))
            }
        }

        impl $trait<&Coeff> for Coeff {
            type Output = Coeff;
            fn $method(self, rhs: &Coeff) -> Coeff {
                Coeff((self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Coeff {
    type Output = Coeff;
    fn div(self, rhs: Coeff) -> Coeff {
        assert!(!rhs.is_zero(), "division of Coeff by zero");
        Coeff(self.0 / rhs.0)
    }
}

impl Div for &Coeff {
    type Output = Coeff;
    fn div(self, rhs: &Coeff) -> Coeff {
        assert!(!rhs.is_zero(), "division of Coeff by zero");
        Coeff(&self.0 / &rhs.0)
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff(-self.0)
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff(-&self.0)
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, rhs: &Coeff) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Coeff> for Coeff {
    fn sub_assign(&mut self, rhs: &Coeff) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Coeff> for Coeff {
    fn mul_assign(&mut self, rhs: &Coeff) {
        self.0 *= &rhs.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rational() -> impl Strategy<Value = Coeff> {
        (-50i64..=50, 1i64..=20).prop_map(|(p, q)| Coeff::fraction(p, q).unwrap())
    }

    #[test]
    fn canonical_form() {
        let c = Coeff::fraction(4, -6).unwrap();
        assert_eq!(c.to_string(), "-2/3");
        assert!(!c.denominator().is_negative());
        assert_eq!(Coeff::fraction(0, 7).unwrap(), Coeff::zero());
    }

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!("3".parse::<Coeff>().unwrap(), Coeff::from(3));
        assert_eq!("-1/2".parse::<Coeff>().unwrap(), Coeff::fraction(-1, 2).unwrap());
        assert_eq!(" 9/12 ".parse::<Coeff>().unwrap(), Coeff::fraction(3, 4).unwrap());
        assert!("1/0".parse::<Coeff>().is_err());
        assert!("a/b".parse::<Coeff>().is_err());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(Coeff::fraction(1, 0).is_err());
    }

    #[test]
    fn serde_round_trip_accepts_both_forms() {
        let c: Coeff = serde_json::from_str("\"-7/3\"").unwrap();
        assert_eq!(c, Coeff::fraction(-7, 3).unwrap());
        let c: Coeff = serde_json::from_str("5").unwrap();
        assert_eq!(c, Coeff::from(5));
        assert_eq!(serde_json::to_string(&Coeff::fraction(1, 2).unwrap()).unwrap(), "\"1/2\"");
    }

    proptest! {
        #[test]
        fn field_laws(a in rational(), b in rational(), c in rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &Coeff::zero(), a.clone());
            prop_assert_eq!(&a * &Coeff::one(), a.clone());
            prop_assert_eq!(&a + &(-&a), Coeff::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inverse().unwrap(), Coeff::one());
            }
        }
    }
}
