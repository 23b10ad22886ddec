use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::rational::{int, Rational};
use super::ring::{Domain, Ring};
use crate::error::{Error, Result};

/// Exponent vector with trailing zeros trimmed. Variable `k` (0-based) is
/// displayed as `z{k+1}`.
///
/// Ordered by total degree, then lexicographically starting from the
/// highest-index variable, so `z1 < z2 < ...` and `z3*z4 < z2*z5`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn var(k: usize) -> Self {
        let mut e = vec![0; k + 1];
        e[k] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, k: usize) -> u32 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let len = self.0.len().max(o.0.len());
        Monomial::new((0..len).map(|k| self.exponent(k) + o.exponent(k)).collect())
    }

    pub fn divides(&self, o: &Self) -> bool {
        (0..self.0.len()).all(|k| self.exponent(k) <= o.exponent(k))
    }

    /// `o / self`, assuming `self.divides(o)`.
    fn quotient_of(&self, o: &Self) -> Self {
        Monomial::new((0..o.0.len()).map(|k| o.exponent(k) - self.exponent(k)).collect())
    }

    /// All monomials in `nvars` variables of total degree exactly `d`, ascending.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if k + 1 == cur.len() {
                cur[k] = left;
                out.push(Monomial::new(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[k] = e;
                rec(k + 1, left - e, cur, out);
            }
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::one());
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All monomials of total degree at most `d`, ascending.
    pub fn up_to_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        (0..=d).flat_map(|k| Monomial::all_of_degree(nvars, k)).collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            let len = self.0.len().max(o.0.len());
            for k in (0..len).rev() {
                match self.exponent(k).cmp(&o.exponent(k)) {
                    Ordering::Equal => continue,
                    c => return c,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "z{}", k + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Polynomial in `z1, z2, ...` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn constant(c: Rational) -> Self {
        let mut p = MultiPoly::default();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(k: usize) -> Self {
        let mut p = MultiPoly::default();
        p.add_term(Monomial::var(k), int(1));
        p
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = MultiPoly::default();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = MultiPoly::default();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    /// Number of variables the polynomial can mention (max index + 1).
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    pub fn uses_var(&self, k: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(k) > 0)
    }

    /// Evaluates at `vals`, reading variable `k` from `vals[k]`.
    pub fn eval<R: Ring>(&self, vals: &[R]) -> R {
        assert!(self.num_vars() <= vals.len(), "too few values for polynomial");
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut t = R::from_rational(c);
            for (k, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&vals[k].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::default();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Primitive form: integer coefficients with gcd 1 and positive
    /// coefficient on the greatest monomial. Zero stays zero.
    pub fn normalized(&self) -> Self {
        if self.terms.is_empty() {
            return self.clone();
        }
        let mut l = BigInt::from(1);
        for c in self.terms.values() {
            l = l.lcm(c.denom());
        }
        let mut g = BigInt::from(0);
        for c in self.terms.values() {
            let v = (c * Rational::from_integer(l.clone())).to_integer();
            g = g.gcd(&v);
        }
        let mut s = Rational::new(l, g);
        if self.leading().unwrap().1.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// Equal up to a nonzero rational scalar.
    pub fn associate(&self, o: &Self) -> bool {
        self.normalized() == o.normalized()
    }

    /// Exact quotient by `d`, or `None` when `d` does not divide `self`.
    ///
    /// Single-divisor reduction under a monomial order leaves a zero
    /// remainder exactly when `d` divides.
    pub fn div_exact_poly(&self, d: &Self) -> Option<Self> {
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut r = self.clone();
        let mut q = MultiPoly::default();
        while let Some((rm, rc)) = r.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let tm = dm.quotient_of(rm);
            let tc = rc / &dc;
            let t = MultiPoly::monomial(tm, tc);
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Replaces variable `k` by `value`.
    pub fn substitute_var(&self, k: usize, value: &MultiPoly) -> Self {
        let mut acc = MultiPoly::default();
        for (m, c) in &self.terms {
            let e = m.exponent(k);
            let mut rest = m.0.clone();
            if k < rest.len() {
                rest[k] = 0;
            }
            let t = MultiPoly::monomial(Monomial::new(rest), c.clone()).mul(&value.pow(e));
            acc = acc.add(&t);
        }
        acc
    }

    /// Parses the canonical display form, e.g. `-z3*z4 + 1/2*z2^2 - 3`.
    pub fn parse(s: &str) -> Result<Self> {
        let err = |m: &str| Error::Parse(alloc::format!("polynomial '{s}': {m}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty"));
        }
        let mut out = MultiPoly::default();
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(i > 0 && cur.ends_with('/')) {
                if i > 0 {
                    chunks.push((neg, core::mem::take(&mut cur)));
                } else if !cur.is_empty() {
                    return Err(err("sign placement"));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        chunks.push((neg, cur));
        for (neg, body) in chunks {
            if body.is_empty() {
                return Err(err("empty term"));
            }
            let mut coeff = int(1);
            let mut exps: Vec<u32> = Vec::new();
            for fac in body.split('*') {
                if let Some(v) = fac.strip_prefix('z') {
                    let (idx, e) = match v.split_once('^') {
                        Some((a, b)) => (a, b.parse::<u32>().map_err(|_| err("exponent"))?),
                        None => (v, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| err("variable index"))?;
                    if idx == 0 {
                        return Err(err("variables start at z1"));
                    }
                    if exps.len() < idx {
                        exps.resize(idx, 0);
                    }
                    exps[idx - 1] += e;
                } else {
                    let q = match fac.split_once('/') {
                        Some((a, b)) => {
                            let a: BigInt = a.parse().map_err(|_| err("numerator"))?;
                            let b: BigInt = b.parse().map_err(|_| err("denominator"))?;
                            if b == BigInt::from(0) {
                                return Err(err("zero denominator"));
                            }
                            Rational::new(a, b)
                        }
                        None => Rational::from_integer(fac.parse().map_err(|_| err("coefficient"))?),
                    };
                    coeff *= q;
                }
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(Monomial::new(exps), coeff);
        }
        Ok(out)
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::default()
    }
    fn one() -> Self {
        MultiPoly::constant(int(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }
    fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }
    fn mul(&self, o: &Self) -> Self {
        let mut r = MultiPoly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }
    fn neg(&self) -> Self {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
    fn from_rational(q: &Rational) -> Self {
        MultiPoly::constant(q.clone())
    }
}

impl Domain for MultiPoly {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        self.div_exact_poly(d)
    }
}

impl serde::Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.degree() == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl MultiPoly {
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }

    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(k)).max().unwrap_or(0)
    }

    /// Coefficients of `z_{k+1}^0, z_{k+1}^1, ...`, each free of `z_{k+1}`.
    pub fn coefficients_in(&self, k: usize) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::default(); self.degree_in(k) as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(k);
            let mut rest = m.0.clone();
            if k < rest.len() {
                rest[k] = 0;
            }
            out[e as usize].add_term(Monomial::new(rest), c.clone());
        }
        out
    }

    fn from_coefficients_in(k: usize, coeffs: &[MultiPoly]) -> Self {
        let x = MultiPoly::var(k);
        let mut acc = MultiPoly::default();
        for c in coeffs.iter().rev() {
            acc = acc.mul(&x).add(c);
        }
        acc
    }

    pub fn derivative(&self, k: usize) -> Self {
        let mut p = MultiPoly::default();
        for (m, c) in &self.terms {
            let e = m.exponent(k);
            if e == 0 {
                continue;
            }
            let mut ex = m.0.clone();
            ex[k] -= 1;
            p.add_term(Monomial::new(ex), c * int(e as i64));
        }
        p
    }

    /// Greatest common divisor, normalized. `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.normalized();
        }
        if o.is_zero() {
            return self.normalized();
        }
        let nv = self.num_vars().max(o.num_vars());
        let Some(k) = (0..nv).rev().find(|&k| self.uses_var(k) || o.uses_var(k)) else {
            return MultiPoly::one();
        };
        if !self.uses_var(k) {
            return self.gcd(&o.content_in(k));
        }
        if !o.uses_var(k) {
            return o.gcd(&self.content_in(k));
        }
        let (ca, cb) = (self.content_in(k), o.content_in(k));
        let c = ca.gcd(&cb);
        let mut a = self.div_exact_poly(&ca).expect("content divides");
        let mut b = o.div_exact_poly(&cb).expect("content divides");
        if a.degree_in(k) < b.degree_in(k) {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree_in(k) == 0 {
                return c;
            }
            let r = a.pseudo_remainder(&b, k);
            a = b;
            b = if r.is_zero() { r } else { r.primitive_in(k) };
        }
        c.mul(&a.primitive_in(k)).normalized()
    }

    /// gcd of the coefficients in `z_{k+1}`.
    fn content_in(&self, k: usize) -> Self {
        self.coefficients_in(k).iter().fold(MultiPoly::default(), |g, c| g.gcd(c))
    }

    fn primitive_in(&self, k: usize) -> Self {
        let c = self.content_in(k);
        self.div_exact_poly(&c).expect("content divides").normalized()
    }

    /// `lc(d)^{deg a - deg d + 1} a mod d` in `z_{k+1}`.
    fn pseudo_remainder(&self, d: &Self, k: usize) -> Self {
        let dc = d.coefficients_in(k);
        let dd = dc.len() - 1;
        let lc = dc[dd].clone();
        let mut r = self.coefficients_in(k);
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let lr = r[top].clone();
            let shift = top - dd;
            for c in r.iter_mut() {
                *c = c.mul(&lc);
            }
            for (i, c) in dc.iter().enumerate() {
                r[i + shift] = r[i + shift].sub(&lr.mul(c));
            }
            debug_assert!(r[top].is_zero());
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        MultiPoly::from_coefficients_in(k, &r)
    }

    /// Product of the distinct irreducible factors, normalized.
    pub fn squarefree_part(&self) -> Self {
        let p = self.normalized();
        let g = (0..p.num_vars()).fold(p.clone(), |g, k| g.gcd(&p.derivative(k)));
        if g.is_constant() {
            return p;
        }
        p.div_exact_poly(&g).expect("gcd divides").normalized()
    }
}
