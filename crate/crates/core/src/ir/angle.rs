use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::scalar::Scalar;

/// A phase `π·p/q`, held exactly in lowest terms and reduced into `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(Rational64);

impl Angle {
    pub const ZERO: Angle = Angle(Rational64::new_raw(0, 1));
    pub const PI: Angle = Angle(Rational64::new_raw(1, 1));
    pub const HALF_PI: Angle = Angle(Rational64::new_raw(1, 2));
    pub const QUARTER_PI: Angle = Angle(Rational64::new_raw(1, 4));

    /// `π·numerator/denominator`; the denominator must be positive.
    pub fn new(numerator: i64, denominator: i64) -> Result<Self, Error> {
        if denominator <= 0 {
            return Err(Error::InvalidAngle(format!("denominator must be positive, got {denominator}")));
        }
        Ok(Self::from_ratio(Rational64::new(numerator, denominator)))
    }

    fn from_ratio(r: Rational64) -> Self {
        let two = Rational64::from_integer(2);
        let mut v = r % two;
        if v < Rational64::zero() {
            v += two;
        }
        Angle(v)
    }

    /// Multiple of π in `[0, 2)`.
    pub fn turns_of_pi(&self) -> Rational64 {
        self.0
    }

    pub fn numerator(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_pi(&self) -> bool {
        self.0.is_one()
    }

    pub fn radians<T: Scalar>(&self) -> T {
        T::PI() * T::lit(self.numerator() as f64) / T::lit(self.denominator() as f64)
    }
}

impl Default for Angle {
    fn default() -> Self {
        Angle::ZERO
    }
}

impl Add for Angle {
    type Output = Angle;

    fn add(self, rhs: Angle) -> Angle {
        Angle::from_ratio(self.0 + rhs.0)
    }
}

impl Sub for Angle {
    type Output = Angle;

    fn sub(self, rhs: Angle) -> Angle {
        Angle::from_ratio(self.0 - rhs.0)
    }
}

impl Neg for Angle {
    type Output = Angle;

    fn neg(self) -> Angle {
        Angle::from_ratio(-self.0)
    }
}

/// Renders as the QCF angle token: `p` or `p/q`.
impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator() == 1 {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), self.denominator())
        }
    }
}

impl FromStr for Angle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidAngle(format!("malformed angle `{s}`"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p, q),
            None => (s, "1"),
        };
        let p: i64 = p.parse().map_err(|_| bad())?;
        let q: i64 = q.parse().map_err(|_| bad())?;
        if q <= 0 {
            return Err(bad());
        }
        Angle::new(p, q)
    }
}
