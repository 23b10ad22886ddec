use core::fmt::Debug;

use super::rational::Rational;

/// A commutative ring with exact equality.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&super::rational::int(v))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// An integral domain in which exact division can be attempted.
pub trait Domain: Ring {
    /// `Some(q)` with `q * divisor == self`, or `None` if no such `q` exists.
    fn div_exact(&self, divisor: &Self) -> Option<Self>;
}

pub trait Field: Domain {
    /// Panics on zero; callers check `is_zero` first.
    fn inv(&self) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}
