use super::{format_rational, parse_rational, ExactError, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// A rational number modulo 1, kept in [0, 1).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QmodZ(Rational);

impl QmodZ {
    pub fn new(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(num.into(), den.into()))
    }

    pub fn zero() -> Self {
        QmodZ(Rational::zero())
    }

    pub fn from_rational(r: Rational) -> Self {
        let n = r.numer().mod_floor(r.denom());
        QmodZ(Rational::new(n, r.denom().clone()))
    }

    pub fn as_rational(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub(crate) fn numer_u64(&self) -> u64 {
        self.0.numer().to_u64().expect("numerator fits in u64")
    }

    pub(crate) fn denom_u64(&self) -> u64 {
        self.0.denom().to_u64().expect("denominator fits in u64")
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self::from_rational(&self.0 * Rational::from_integer(k.clone()))
    }
}

impl Add for &QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: &QmodZ) -> QmodZ {
        QmodZ::from_rational(&self.0 + &rhs.0)
    }
}

impl Add for QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: QmodZ) -> QmodZ {
        &self + &rhs
    }
}

impl Sub for &QmodZ {
    type Output = QmodZ;
    fn sub(self, rhs: &QmodZ) -> QmodZ {
        QmodZ::from_rational(&self.0 - &rhs.0)
    }
}

impl Sub for QmodZ {
    type Output = QmodZ;
    fn sub(self, rhs: QmodZ) -> QmodZ {
        &self - &rhs
    }
}

impl Neg for &QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        QmodZ::from_rational(-&self.0)
    }
}

impl Mul<i64> for &QmodZ {
    type Output = QmodZ;
    fn mul(self, k: i64) -> QmodZ {
        self.mul_int(&BigInt::from(k))
    }
}

impl FromStr for QmodZ {
    type Err = ExactError;
    fn from_str(s: &str) -> Result<Self, ExactError> {
        parse_rational(s).map(QmodZ::from_rational)
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl fmt::Debug for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for QmodZ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QmodZ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduces_into_unit_interval() {
        assert_eq!(QmodZ::new(-1, 3), QmodZ::new(2, 3));
        assert_eq!(QmodZ::new(7, 4).to_string(), "3/4");
        assert!(QmodZ::new(5, 5).is_zero());
        assert_eq!("-1/2".parse::<QmodZ>().unwrap(), QmodZ::new(1, 2));
    }

    proptest! {
        #[test]
        fn group_laws(a in -100i64..100, b in -100i64..100, d in 1i64..30, e in 1i64..30) {
            let x = QmodZ::new(a, d);
            let y = QmodZ::new(b, e);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            prop_assert!((&x + &(-&x)).is_zero());
            prop_assert_eq!(&x * d, QmodZ::zero());
            let r = x.as_rational();
            prop_assert!(*r >= Rational::zero() && *r < Rational::from_integer(1.into()));
        }
    }
}
