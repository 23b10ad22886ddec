use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::rational::{int, Rational};
use super::ring::{Domain, Field, Ring};

/// Polynomial in one variable `s` over `Q`, coefficients ascending.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    c: Vec<Rational>,
}

impl UniPoly {
    pub fn from_coeffs(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn constant(q: Rational) -> Self {
        UniPoly::from_coeffs(vec![q])
    }

    /// `a + b*s`
    pub fn linear(a: Rational, b: Rational) -> Self {
        UniPoly::from_coeffs(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.c.last()
    }

    pub fn eval_at(&self, s: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for a in self.c.iter().rev() {
            acc = acc * s + a;
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> Self {
        UniPoly::from_coeffs(self.c.iter().map(|a| a * q).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let dl = d.lead().unwrap().clone();
        let mut r = self.c.clone();
        let mut q = vec![Rational::zero(); self.c.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().unwrap() / &dl;
            for (i, a) in d.c.iter().enumerate() {
                r[k + i] -= &f * a;
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (UniPoly::from_coeffs(q), UniPoly::from_coeffs(r))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.c.is_empty() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Integer coefficients with gcd 1 (positive lead).
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.c.is_empty() {
            return Vec::new();
        }
        let mut l = BigInt::from(1);
        for a in &self.c {
            l = l.lcm(a.denom());
        }
        let mut v: Vec<BigInt> =
            self.c.iter().map(|a| (a * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = v.iter().fold(BigInt::from(0), |g, x| g.gcd(x));
        let neg = v.last().unwrap().is_negative();
        for x in v.iter_mut() {
            *x = &*x / &g;
            if neg {
                *x = -&*x;
            }
        }
        v
    }

    /// Distinct rational roots, ascending.
    ///
    /// Candidates come from the rational root theorem. Integers are factored
    /// by trial division up to `trial_limit`; an unfactored cofactor is treated
    /// as prime, so roots can be missed on huge coefficients but no
    /// non-root is ever returned. `None` when the candidate count would
    /// exceed `max_candidates`.
    pub fn rational_roots(&self, trial_limit: u64, max_candidates: usize) -> Option<Vec<Rational>> {
        let mut roots = Vec::new();
        if self.c.is_empty() {
            return Some(roots);
        }
        let mut p = self.clone();
        if p.c[0].is_zero() {
            roots.push(Rational::zero());
            let k = p.c.iter().position(|a| !a.is_zero()).unwrap();
            p = UniPoly::from_coeffs(p.c[k..].to_vec());
        }
        // Square-free part keeps the coefficients honest after repeated roots.
        let dp = p.derivative();
        if !dp.c.is_empty() {
            let g = p.gcd(&dp);
            p = p.divrem(&g).0;
        }
        if p.degree().unwrap_or(0) == 0 {
            roots.sort();
            return Some(roots);
        }
        let ic = p.primitive_integer();
        let num_divs = divisors(&ic[0], trial_limit, max_candidates)?;
        let den_divs = divisors(ic.last().unwrap(), trial_limit, max_candidates)?;
        if num_divs.len().saturating_mul(den_divs.len()).saturating_mul(2) > max_candidates {
            return None;
        }
        let mut seen = alloc::collections::BTreeSet::new();
        for a in &num_divs {
            for b in &den_divs {
                for sgn in [1i32, -1] {
                    let q = Rational::new(a * BigInt::from(sgn), b.clone());
                    if seen.insert(q.clone()) && p.eval_at(&q).is_zero() {
                        roots.push(q);
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        Some(roots)
    }

    pub fn derivative(&self) -> Self {
        UniPoly::from_coeffs(
            self.c.iter().enumerate().skip(1).map(|(i, a)| a * int(i as i64)).collect(),
        )
    }
}

/// Positive divisors of `|x|` (x nonzero).
fn divisors(x: &BigInt, trial_limit: u64, cap: usize) -> Option<Vec<BigInt>> {
    let mut m = x.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d: u64 = 2;
    while d <= trial_limit {
        let bd = BigInt::from(d);
        if &bd * &bd > m {
            break;
        }
        let mut e = 0;
        while (&m % &bd) == BigInt::from(0) {
            m /= &bd;
            e += 1;
        }
        if e > 0 {
            primes.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > BigInt::from(1) {
        primes.push((m, 1));
    }
    let count: usize = primes.iter().try_fold(1usize, |acc, (_, e)| acc.checked_mul(*e as usize + 1))?;
    if count > cap {
        return None;
    }
    let mut out = vec![BigInt::from(1)];
    for (p, e) in &primes {
        let cur = out.clone();
        let mut pk = BigInt::from(1);
        for _ in 0..*e {
            pk *= p;
            out.extend(cur.iter().map(|v| v * &pk));
        }
    }
    out.sort();
    Some(out)
}

impl Ring for UniPoly {
    fn zero() -> Self {
        UniPoly::default()
    }
    fn one() -> Self {
        UniPoly::constant(int(1))
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = Rational::zero();
        UniPoly::from_coeffs(
            (0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect(),
        )
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return UniPoly::default();
        }
        let mut r = vec![Rational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(r)
    }
    fn neg(&self) -> Self {
        UniPoly { c: self.c.iter().map(|a| -a).collect() }
    }
    fn from_rational(q: &Rational) -> Self {
        UniPoly::constant(q.clone())
    }
}

impl Domain for UniPoly {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let m = a.abs();
            match i {
                0 => write!(f, "{m}")?,
                _ => {
                    if !m.is_one() {
                        write!(f, "{m}*")?;
                    }
                    f.write_str("s")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Element of `Q(s)`: reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: UniPoly::one() };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num.divrem(&g).0, den.divrem(&g).0);
        let l = d.lead().unwrap().clone();
        if !l.is_one() {
            let li = l.recip();
            n = n.scale(&li);
            d = d.scale(&li);
        }
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc { num: p, den: UniPoly::one() }
    }

    pub fn numer(&self) -> &UniPoly {
        &self.num
    }

    pub fn denom(&self) -> &UniPoly {
        &self.den
    }

    /// Value at `s`, or `None` at a pole.
    pub fn eval_at(&self, s: &Rational) -> Option<Rational> {
        let d = self.den.eval_at(s);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval_at(s) / d)
        }
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(UniPoly::zero())
    }
    fn one() -> Self {
        RatFunc::from_poly(UniPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone());
        }
        RatFunc::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn from_rational(q: &Rational) -> Self {
        RatFunc::from_poly(UniPoly::constant(q.clone()))
    }
}

impl Domain for RatFunc {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        (!d.is_zero()).then(|| self.div(d))
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Self {
        RatFunc::new(self.den.clone(), self.num.clone())
    }
}

/// Small-integer view used in diagnostics.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn p(v: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn divrem_identity() {
        let a = p(&[1, 0, -3, 2, 5]);
        let b = p(&[2, 1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_of_products() {
        let g = p(&[-1, 1]); // s - 1
        let a = g.mul(&p(&[3, 1]));
        let b = g.mul(&p(&[0, 2, 1]));
        assert_eq!(a.gcd(&b), g);
    }

    #[test]
    fn rational_roots_found() {
        // (2s - 1)(s + 3) s^2 (s^2 + 1)
        let f = p(&[-1, 2]).mul(&p(&[3, 1])).mul(&p(&[0, 0, 1])).mul(&p(&[1, 0, 1]));
        let r = f.rational_roots(1000, 10_000).unwrap();
        assert_eq!(r, vec![int(-3), int(0), rat(1, 2)]);
        assert_eq!(p(&[5]).rational_roots(10, 10).unwrap(), vec![]);
    }

    #[test]
    fn ratfunc_field_ops() {
        let a = RatFunc::new(p(&[1, 1]), p(&[-1, 1]));
        let b = RatFunc::new(p(&[2]), p(&[0, 1]));
        let c = a.add(&b).mul(&b.inv());
        let back = c.mul(&b).sub(&b);
        assert_eq!(back, a);
        assert_eq!(a.eval_at(&int(1)), None);
        assert_eq!(a.eval_at(&int(3)), Some(int(2)));
        assert_eq!(a.mul(&a.inv()), RatFunc::one());
    }
}
