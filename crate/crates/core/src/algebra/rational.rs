use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ring::{Domain, Field, Ring};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Bit size of numerator plus denominator; a crude height.
pub fn height(q: &Rational) -> u64 {
    q.numer().bits() + q.denom().bits()
}

pub fn is_negative(q: &Rational) -> bool {
    q.is_negative()
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Domain for Rational {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if Zero::is_zero(d) {
            None
        } else {
            Some(self / d)
        }
    }
}

impl Field for Rational {
    fn inv(&self) -> Self {
        self.recip()
    }
}
