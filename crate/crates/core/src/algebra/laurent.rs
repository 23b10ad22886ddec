use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use core::fmt;

use super::rational::Rational;
use super::ring::Ring;

/// Laurent polynomial in `t` with coefficients in `R`.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentPoly<R: Ring> {
    terms: BTreeMap<i64, R>,
}

impl<R: Ring> Default for LaurentPoly<R> {
    fn default() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }
}

impl<R: Ring> LaurentPoly<R> {
    /// `c * t^k`
    pub fn monomial(k: i64, c: R) -> Self {
        let mut p = LaurentPoly::default();
        p.add_term(k, c);
        p
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(0, c)
    }

    pub fn t_pow(k: i64) -> Self {
        Self::monomial(k, R::one())
    }

    fn add_term(&mut self, k: i64, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn coeff(&self, k: i64) -> R {
        self.terms.get(&k).cloned().unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn min_deg(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_deg(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `Some((k, c))` when the polynomial is a single term `c t^k`.
    pub fn as_monomial(&self) -> Option<(i64, &R)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, f: F) -> LaurentPoly<S> {
        let mut p = LaurentPoly::default();
        for (k, c) in &self.terms {
            p.add_term(*k, f(c));
        }
        p
    }

    pub fn shift(&self, by: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (k + by, c.clone())).collect() }
    }
}

impl<R: Ring> Ring for LaurentPoly<R> {
    fn zero() -> Self {
        LaurentPoly::default()
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(*k, c.clone());
        }
        r
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let mut r = LaurentPoly::default();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term(a + b, x.mul(y));
            }
        }
        r
    }
    fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect() }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(R::from_rational(q))
    }
}

impl<R: Ring + fmt::Display> fmt::Display for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match *k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, Rational};

    type L = LaurentPoly<Rational>;

    #[test]
    fn arithmetic() {
        let a = L::t_pow(-1).add(&L::constant(int(2)));
        let b = L::t_pow(1).sub(&L::constant(int(2)));
        let p = a.mul(&b);
        // (t^-1 + 2)(t - 2) = 1 - 2 t^-1 + 2 t - 4
        assert_eq!(p.coeff(-1), int(-2));
        assert_eq!(p.coeff(0), int(-3));
        assert_eq!(p.coeff(1), int(2));
        assert_eq!(p.min_deg(), Some(-1));
        assert_eq!(p.max_deg(), Some(1));
        assert!(a.sub(&a).is_zero());
        assert_eq!(L::t_pow(3).as_monomial(), Some((3, &int(1))));
    }
}
