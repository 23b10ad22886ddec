//! The affine Weyl group `W ⋉ X_*(T)` of `SL_n` as affine permutations,
//! affine roots, Bruhat order, and the atlas label map.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::weyl::{all_perms, bruhat_leq, qp_enumerate, qp_leq_with, Parabolic, Perm, QPLabel, Root};

/// An integral coweight of `SL_n`: entries sum to zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Coweight(Vec<i64>);

impl Coweight {
    pub fn new(v: Vec<i64>) -> Result<Self> {
        let s: i64 = v.iter().sum();
        if s != 0 {
            return Err(Error::CoweightSum(s));
        }
        Ok(Coweight(v))
    }

    pub fn zero(n: usize) -> Self {
        Coweight(alloc::vec![0; n])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// `⟨λ, e_i - e_j⟩ = λ_i - λ_j`.
    pub fn pairing(&self, r: Root) -> i64 {
        self.0[r.i - 1] - self.0[r.j - 1]
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Dominant with `⟨α_i, λ⟩ = 0` exactly for `i ∈ J`.
    pub fn check_compatible(&self, p: &Parabolic) -> Result<()> {
        if self.rank() != p.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: p.rank() });
        }
        for i in 1..self.rank() {
            let a = self.pairing(Root::simple(i));
            let ok = if p.contains(i) { a == 0 } else { a > 0 };
            if !ok {
                return Err(Error::IncompatibleCoweight { root: i, pairing: a });
            }
        }
        Ok(())
    }

    /// The compatible coweight with smallest `Σ_i ⟨α_i, λ⟩`; ties go to the
    /// lexicographically smallest gap sequence `(λ_1 - λ_2, ...)`.
    pub fn minimal(p: &Parabolic) -> Self {
        let n = p.rank();
        let free: Vec<usize> = (1..n).filter(|&i| !p.contains(i)).collect();
        if free.is_empty() {
            return Coweight::zero(n);
        }
        // Σ λ = Σ_k k·gap_k must vanish mod n, so gap total n·|free| always suffices.
        for total in free.len()..=n * free.len() {
            let mut gaps = alloc::vec![0i64; n];
            if let Some(v) = Self::search_gaps(&free, 0, total as i64, &mut gaps, n) {
                return v;
            }
        }
        unreachable!("a gap total of n·|free| is always realizable")
    }

    fn search_gaps(free: &[usize], k: usize, left: i64, gaps: &mut Vec<i64>, n: usize) -> Option<Self> {
        if k + 1 == free.len() {
            gaps[free[k]] = left;
            let mut v = alloc::vec![0i64; n];
            for i in (0..n - 1).rev() {
                v[i] = v[i + 1] + gaps[i + 1];
            }
            let s: i64 = v.iter().sum();
            return (s % n as i64 == 0).then(|| Coweight(v.into_iter().map(|x| x - s / n as i64).collect()));
        }
        let rest = (free.len() - k - 1) as i64;
        for g in 1..=left - rest {
            gaps[free[k]] = g;
            if let Some(v) = Self::search_gaps(free, k + 1, left - g, gaps, n) {
                return Some(v);
            }
        }
        None
    }

    /// `w·λ`, with `(w·λ)_{w(i)} = λ_i`.
    pub fn act(&self, w: &Perm) -> Coweight {
        let mut out = alloc::vec![0; self.rank()];
        for i in 1..=self.rank() {
            out[w.at(i) - 1] = self.0[i - 1];
        }
        Coweight(out)
    }

    pub fn neg(&self) -> Coweight {
        Coweight(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, o: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// Parses `"1,0,0,-1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let v = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("coweight '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        Coweight::new(v)
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A bijection `f: Z -> Z` with `f(i+n) = f(i)+n` and `Σ (f(i) - i) = 0`,
/// stored by its window `(f(1), ..., f(n))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct AffinePerm {
    window: Vec<i64>,
}

fn residue(v: i64, n: i64) -> i64 {
    (v - 1).rem_euclid(n) + 1
}

impl AffinePerm {
    pub fn identity(n: usize) -> Self {
        AffinePerm { window: (1..=n as i64).collect() }
    }

    pub fn from_window(window: Vec<i64>) -> Result<Self> {
        let n = window.len() as i64;
        if n == 0 {
            return Err(Error::NotAnAffinePermutation("empty window".into()));
        }
        let mut seen = BTreeSet::new();
        for &v in &window {
            if !seen.insert(residue(v, n)) {
                return Err(Error::NotAnAffinePermutation(format!("{window:?}: residues repeat")));
            }
        }
        let shift: i64 = window.iter().enumerate().map(|(k, &v)| v - (k as i64 + 1)).sum();
        if shift != 0 {
            return Err(Error::NotAnAffinePermutation(format!("{window:?}: window sum off by {shift}")));
        }
        Ok(AffinePerm { window })
    }

    /// `t^λ`: window `i + n λ_i`.
    pub fn from_translation(l: &Coweight) -> Self {
        let n = l.rank() as i64;
        AffinePerm { window: l.0.iter().enumerate().map(|(k, &x)| k as i64 + 1 + n * x).collect() }
    }

    pub fn from_finite(w: &Perm) -> Self {
        AffinePerm { window: w.one_line().iter().map(|&v| v as i64).collect() }
    }

    /// `s_0, ..., s_{n-1}`; `s_0` has window `(0, 2, ..., n-1, n+1)`.
    pub fn simple(i: usize, n: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, bound: n - 1 });
        }
        let mut x = AffinePerm::identity(n);
        if i == 0 {
            x.window[0] = 0;
            x.window[n - 1] = n as i64 + 1;
        } else {
            x.window.swap(i - 1, i);
        }
        Ok(x)
    }

    pub fn from_word(word: &[usize], n: usize) -> Result<Self> {
        let mut x = AffinePerm::identity(n);
        for &i in word {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, bound: n - 1 });
            }
            x = x.right_mul_simple(i);
        }
        Ok(x)
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn eval(&self, i: i64) -> i64 {
        let n = self.rank() as i64;
        let r = residue(i, n);
        self.window[(r - 1) as usize] + (i - r)
    }

    /// `self ∘ y`.
    pub fn compose(&self, y: &AffinePerm) -> Result<AffinePerm> {
        if self.rank() != y.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: y.rank() });
        }
        Ok(AffinePerm { window: y.window.iter().map(|&v| self.eval(v)).collect() })
    }

    pub fn mul(&self, y: &AffinePerm) -> AffinePerm {
        self.compose(y).expect("rank mismatch")
    }

    pub fn inverse(&self) -> AffinePerm {
        let n = self.rank() as i64;
        let mut w = alloc::vec![0; self.rank()];
        for (k, &v) in self.window.iter().enumerate() {
            let r = residue(v, n);
            w[(r - 1) as usize] = k as i64 + 1 - (v - r);
        }
        AffinePerm { window: w }
    }

    /// Length by the window formula `Σ_{i<j} |⌊(f(j) - f(i)) / n⌋|`.
    pub fn length(&self) -> usize {
        let n = self.rank() as i64;
        let mut l = 0;
        for i in 0..self.window.len() {
            for j in i + 1..self.window.len() {
                l += (self.window[j] - self.window[i]).div_euclid(n).unsigned_abs() as usize;
            }
        }
        l
    }

    /// `l(s_i x) < l(x)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.eval(i as i64) > inv.eval(i as i64 + 1)
    }

    /// `l(x s_i) < l(x)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.eval(i as i64) > self.eval(i as i64 + 1)
    }

    /// `s_i ∘ x`: exchange the value classes of `i` and `i+1`.
    pub fn left_mul_simple(&self, i: usize) -> AffinePerm {
        let n = self.rank() as i64;
        let (a, b) = (residue(i as i64, n), residue(i as i64 + 1, n));
        AffinePerm {
            window: self
                .window
                .iter()
                .map(|&v| {
                    let r = residue(v, n);
                    if r == a {
                        v + 1
                    } else if r == b {
                        v - 1
                    } else {
                        v
                    }
                })
                .collect(),
        }
    }

    /// `x ∘ s_i`: exchange positions `i` and `i+1` (periodically).
    pub fn right_mul_simple(&self, i: usize) -> AffinePerm {
        let n = self.rank();
        let mut w = self.window.clone();
        if i == 0 {
            let f0 = self.eval(0);
            let f1 = self.window[0];
            w[0] = f0;
            w[n - 1] = f1 + n as i64;
        } else {
            w.swap(i - 1, i);
        }
        AffinePerm { window: w }
    }

    /// Greedy reduced word, smallest left descent first; `0` denotes `s_0`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let n = self.rank();
        let mut word = Vec::with_capacity(self.length());
        let mut cur = self.clone();
        while let Some(i) = (0..n).find(|&i| cur.has_left_descent(i)) {
            word.push(i);
            cur = cur.left_mul_simple(i);
        }
        word
    }

    /// `(μ, w)` with `self = t^μ w`.
    pub fn decompose(&self) -> (Coweight, Perm) {
        let n = self.rank() as i64;
        let mut mu = alloc::vec![0; self.rank()];
        let mut w = Vec::with_capacity(self.rank());
        for &v in &self.window {
            let r = residue(v, n);
            mu[(r - 1) as usize] = (v - r) / n;
            w.push(r as usize);
        }
        (Coweight(mu), Perm::from_one_line(w).expect("window residues form a permutation"))
    }

    pub fn act_on_root(&self, r: AffineRoot) -> AffineRoot {
        let n = self.rank() as i64;
        match r.alpha {
            None => r,
            Some(a) => {
                let (xi, xj) = (self.eval(a.i as i64), self.eval(a.j as i64));
                let (ri, rj) = (residue(xi, n), residue(xj, n));
                let shift = (xi - ri) / n - (xj - rj) / n;
                AffineRoot { alpha: Some(Root { i: ri as usize, j: rj as usize }), m: r.m + shift }
            }
        }
    }

    /// Parses `"[5,2,3,0]"` (brackets optional).
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let v = t
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("window '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        AffinePerm::from_window(v)
    }
}

impl fmt::Display for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for AffinePerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `α + mδ` with `α ∈ Φ ∪ {0}`; `(0, 0)` is excluded.
///
/// Positive iff `m < 0`, or `m = 0` and `α > 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct AffineRoot {
    pub alpha: Option<Root>,
    pub m: i64,
}

impl AffineRoot {
    pub fn new(alpha: Option<Root>, m: i64) -> Result<Self> {
        if alpha.is_none() && m == 0 {
            return Err(Error::NotARoot("0 + 0δ".into()));
        }
        Ok(AffineRoot { alpha, m })
    }

    pub fn is_positive(&self) -> bool {
        self.m < 0 || (self.m == 0 && self.alpha.is_some_and(|a| a.is_positive()))
    }
}

impl fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.alpha {
            Some(a) => write!(f, "{a} + {}δ", self.m),
            None => write!(f, "{}δ", self.m),
        }
    }
}

/// Bruhat order on affine permutations by the lifting recursion on left
/// descents of `y`.
pub fn affine_bruhat_leq(x: &AffinePerm, y: &AffinePerm) -> bool {
    assert_eq!(x.rank(), y.rank(), "rank mismatch");
    let n = y.rank();
    let mut x = x.clone();
    let mut y = y.clone();
    loop {
        if x.length() > y.length() {
            return false;
        }
        match (0..n).find(|&i| y.has_left_descent(i)) {
            None => return x == y,
            Some(i) => {
                if x.has_left_descent(i) {
                    x = x.left_mul_simple(i);
                }
                y = y.left_mul_simple(i);
            }
        }
    }
}

/// `#{c <= b : x(c) >= a}`.
fn count_ge(x: &AffinePerm, a: i64, b: i64) -> i64 {
    let d = x.window.iter().enumerate().map(|(k, &v)| (v - k as i64 - 1).abs()).max().unwrap_or(0);
    let lo = a - d - 1;
    (lo..=b).filter(|&c| x.eval(c) >= a).count() as i64
}

/// Rank-function criterion: `x <= y` iff `#{c <= b : x(c) >= a}` is
/// pointwise at most the same count for `y`. By periodicity it suffices to
/// take `b ∈ 1..=n`; outside a band around `b` both counts agree.
pub fn affine_bruhat_leq_rank(x: &AffinePerm, y: &AffinePerm) -> bool {
    let n = x.rank() as i64;
    let disp = |z: &AffinePerm| {
        z.window.iter().enumerate().map(|(k, &v)| (v - k as i64 - 1).abs()).max().unwrap_or(0)
    };
    let d = disp(x).max(disp(y));
    for b in 1..=n {
        for a in b - 2 * d - 1..=b + d + 1 {
            if count_ge(x, a, b) > count_ge(y, a, b) {
                return false;
            }
        }
    }
    true
}

/// All elements below `x` in Bruhat order: the products of subwords of a
/// reduced word of `x`.
pub fn lower_interval(x: &AffinePerm) -> BTreeSet<AffinePerm> {
    let mut set = BTreeSet::new();
    set.insert(AffinePerm::identity(x.rank()));
    for i in x.reduced_word() {
        let extra: Vec<AffinePerm> = set.iter().map(|y| y.right_mul_simple(i)).collect();
        set.extend(extra);
    }
    set
}

/// The Bruhat interval `[a, b]`.
pub fn interval(a: &AffinePerm, b: &AffinePerm) -> BTreeSet<AffinePerm> {
    lower_interval(b).into_iter().filter(|y| affine_bruhat_leq(a, y)).collect()
}

/// `v t^λ w^{-1}`.
pub fn kl_label(q: &QPLabel, l: &Coweight) -> AffinePerm {
    AffinePerm::from_finite(&q.v)
        .mul(&AffinePerm::from_translation(l))
        .mul(&AffinePerm::from_finite(&q.w.inverse()))
}

/// `t^λ w_{0,P} w_0`.
pub fn bottom_label(l: &Coweight, p: &Parabolic) -> AffinePerm {
    AffinePerm::from_translation(l)
        .mul(&AffinePerm::from_finite(&p.longest().mul(&Perm::longest(p.rank()))))
}

/// `w_1 t^λ w_1^{-1}`.
pub fn top_label(w1: &Perm, l: &Coweight) -> AffinePerm {
    AffinePerm::from_finite(w1)
        .mul(&AffinePerm::from_translation(l))
        .mul(&AffinePerm::from_finite(&w1.inverse()))
}

/// Rank cap for the `|W|^2` double-coset enumeration.
pub const DOUBLE_COSET_MAX_RANK: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct DoubleCosetReport {
    pub size: usize,
    pub expected_minimum: AffinePerm,
    pub minima: Vec<AffinePerm>,
    pub check: CheckReport,
}

/// Enumerates `W t^λ W` and checks `t^λ w_{0,P} w_0` is its unique
/// Bruhat-minimum.
pub fn min_double_coset_check(l: &Coweight, p: &Parabolic) -> Result<DoubleCosetReport> {
    l.check_compatible(p)?;
    if p.rank() > DOUBLE_COSET_MAX_RANK {
        return Err(Error::RankCap { n: p.rank(), max: DOUBLE_COSET_MAX_RANK });
    }
    let t = AffinePerm::from_translation(l);
    let fin: Vec<AffinePerm> = all_perms(p.rank()).iter().map(AffinePerm::from_finite).collect();
    let mut set = BTreeSet::new();
    for u in &fin {
        let ut = u.mul(&t);
        for v in &fin {
            set.insert(ut.mul(v));
        }
    }
    let expected = bottom_label(l, p);
    let min_len = set.iter().map(|x| x.length()).min().unwrap();
    let minima: Vec<AffinePerm> = set.iter().filter(|x| x.length() == min_len).cloned().collect();
    let mut check = CheckReport::new("min_double_coset");
    check.assert(minima.len() == 1 && minima[0] == expected, || {
        format!("minimal-length elements {minima:?}, expected {expected}")
    });
    for x in &set {
        check.assert(affine_bruhat_leq(&expected, x), || format!("{expected} is not below {x}"));
    }
    Ok(DoubleCosetReport { size: set.len(), expected_minimum: expected, minima, check })
}

#[derive(Clone, Debug, Serialize)]
pub struct AtlasPosetReport {
    pub labels: usize,
    pub injective: CheckReport,
    pub order_reversing: CheckReport,
    pub rank_compatible: CheckReport,
    pub image: CheckReport,
}

impl AtlasPosetReport {
    pub fn passed(&self) -> bool {
        self.injective.passed()
            && self.order_reversing.passed()
            && self.rank_compatible.passed()
            && self.image.passed()
    }
}

/// Checks the label map `Q_P -> Ŵ` is an injective, order-reversing,
/// rank-compatible map whose image is `⋃_{w_1 ∈ W^P} [bottom, w_1 t^λ w_1^{-1}]`.
pub fn verify_atlas_poset(p: &Parabolic, l: &Coweight) -> Result<AtlasPosetReport> {
    l.check_compatible(p)?;
    let qp = qp_enumerate(p);
    let wp = p.wp_elements();
    let labels: Vec<AffinePerm> = qp.iter().map(|q| kl_label(q, l)).collect();
    let lens: Vec<usize> = labels.iter().map(|x| x.length()).collect();

    let mut injective = CheckReport::new("injective");
    let mut seen: BTreeMap<&AffinePerm, &QPLabel> = BTreeMap::new();
    for (q, x) in qp.iter().zip(&labels) {
        let prev = seen.insert(x, q);
        injective.assert(prev.is_none(), || format!("{q} and {} share label {x}", prev.unwrap()));
    }

    let mut order = CheckReport::new("order_reversing");
    for (a, xa) in qp.iter().zip(&labels) {
        for (b, xb) in qp.iter().zip(&labels) {
            let lhs = qp_leq_with(a, b, &wp);
            let rhs = affine_bruhat_leq(xb, xa);
            order.assert(lhs == rhs, || format!("{a} ⪯ {b} is {lhs} but {xb} <= {xa} is {rhs}"));
        }
    }

    let bottom = bottom_label(l, p);
    let dim = p.dimension();
    let mut rank = CheckReport::new("rank_compatible");
    for (q, len) in qp.iter().zip(&lens) {
        let lhs = *len as i64 - bottom.length() as i64;
        let rhs = dim as i64 - q.dim() as i64;
        rank.assert(lhs == rhs, || format!("{q}: label length offset {lhs}, codimension {rhs}"));
    }

    let mut image = CheckReport::new("image");
    let mut union = BTreeSet::new();
    for w1 in p.min_coset_reps() {
        union.extend(interval(&bottom, &top_label(&w1, l)));
    }
    let label_set: BTreeSet<AffinePerm> = labels.iter().cloned().collect();
    for x in &union {
        image.assert(label_set.contains(x), || format!("{x} lies in an interval but is not a label"));
    }
    for x in &label_set {
        image.assert(union.contains(x), || format!("label {x} lies in no interval"));
    }
    Ok(AtlasPosetReport {
        labels: labels.len(),
        injective,
        order_reversing: order,
        rank_compatible: rank,
        image,
    })
}

/// Check that `bruhat_leq` on `W` agrees with the affine order on the
/// embedded finite permutations.
pub fn finite_embedding_is_order_preserving(u: &Perm, w: &Perm) -> bool {
    bruhat_leq(u, w) == affine_bruhat_leq(&AffinePerm::from_finite(u), &AffinePerm::from_finite(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cw(v: &[i64]) -> Coweight {
        Coweight::new(v.to_vec()).unwrap()
    }

    fn ap(v: &[i64]) -> AffinePerm {
        AffinePerm::from_window(v.to_vec()).unwrap()
    }

    /// Inversions `(i, j)` with `1 <= i <= n`, `i < j`, `f(i) > f(j)`.
    fn inversion_oracle(x: &AffinePerm) -> usize {
        let n = x.rank() as i64;
        let d = x.window.iter().enumerate().map(|(k, &v)| (v - k as i64 - 1).abs()).max().unwrap();
        let mut c = 0;
        for i in 1..=n {
            for j in i + 1..=i + 2 * d + n {
                if x.eval(i) > x.eval(j) {
                    c += 1;
                }
            }
        }
        c
    }

    /// Positive affine roots sent to negative ones.
    fn root_inversion_oracle(x: &AffinePerm) -> usize {
        let n = x.rank();
        let (mu, _) = x.decompose();
        let spread = mu.entries().iter().max().unwrap() - mu.entries().iter().min().unwrap() + 2;
        let mut c = 0;
        for r in crate::weyl::all_roots(n) {
            for m in -spread..=0 {
                let a = AffineRoot { alpha: Some(r), m };
                if a.is_positive() && !x.act_on_root(a).is_positive() {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn translations() {
        let l = cw(&[1, 0, 0, -1]);
        let t = AffinePerm::from_translation(&l);
        assert_eq!(t, ap(&[5, 2, 3, 0]));
        assert_eq!(AffinePerm::from_translation(&Coweight::zero(4)), AffinePerm::identity(4));
        assert_eq!(t.mul(&AffinePerm::from_translation(&l.neg())), AffinePerm::identity(4));
        assert_eq!(t.length(), 6);
        let r = AffineRoot::new(Some(Root { i: 1, j: 4 }), 0).unwrap();
        assert_eq!(t.act_on_root(r), AffineRoot { alpha: Some(Root { i: 1, j: 4 }), m: 2 });
        let w1 = Perm::parse("4123").unwrap();
        assert_eq!(top_label(&w1, &l), AffinePerm::from_translation(&l.act(&w1)));
        assert_eq!(top_label(&w1, &l), ap(&[1, 2, -1, 8]));
    }

    #[test]
    fn translation_action_matches_pairing() {
        let l = cw(&[2, -1, 0, -1]);
        let t = AffinePerm::from_translation(&l);
        for r in crate::weyl::all_roots(4) {
            for m in -3..=3 {
                let img = t.act_on_root(AffineRoot { alpha: Some(r), m });
                assert_eq!(img, AffineRoot { alpha: Some(r), m: m + l.pairing(r) });
            }
        }
        let w = Perm::parse("3142").unwrap();
        let fw = AffinePerm::from_finite(&w);
        let r = Root { i: 2, j: 4 };
        assert_eq!(
            fw.act_on_root(AffineRoot { alpha: Some(r), m: -2 }),
            AffineRoot { alpha: Some(w.act_on_root(r).unwrap()), m: -2 }
        );
    }

    #[test]
    fn simple_reflections() {
        let s0 = AffinePerm::simple(0, 4).unwrap();
        assert_eq!(s0, ap(&[0, 2, 3, 5]));
        assert_eq!(s0.length(), 1);
        assert_eq!(s0.mul(&s0), AffinePerm::identity(4));
        for i in 0..4 {
            let s = AffinePerm::simple(i, 4).unwrap();
            assert_eq!(s.reduced_word(), vec![i]);
            assert_eq!(AffinePerm::identity(4).right_mul_simple(i), s);
            assert_eq!(AffinePerm::identity(4).left_mul_simple(i), s);
        }
        assert!(AffinePerm::identity(4).reduced_word().is_empty());
    }

    #[test]
    fn validation() {
        assert!(AffinePerm::from_window(vec![5, 2, 3, 1]).is_err());
        assert!(AffinePerm::from_window(vec![1, 5, 3, 4]).is_err());
        assert!(Coweight::new(vec![1, 0]).is_err());
        assert_eq!(AffinePerm::parse("[5,2,3,0]").unwrap(), ap(&[5, 2, 3, 0]));
        assert_eq!(ap(&[5, 2, 3, 0]).to_string(), "[5,2,3,0]");
    }

    #[test]
    fn lengths_agree_with_oracles() {
        let l = cw(&[1, 0, 0, -1]);
        let t = AffinePerm::from_translation(&l);
        for w in all_perms(4) {
            for v in [Perm::identity(4), Perm::parse("2413").unwrap()] {
                let x = AffinePerm::from_finite(&w).mul(&t).mul(&AffinePerm::from_finite(&v));
                assert_eq!(x.length(), inversion_oracle(&x), "{x}");
                assert_eq!(x.length(), root_inversion_oracle(&x), "{x}");
                assert_eq!(x.length(), x.inverse().length());
                let word = x.reduced_word();
                assert_eq!(word.len(), x.length());
                assert_eq!(AffinePerm::from_word(&word, 4).unwrap(), x);
            }
        }
    }

    #[test]
    fn bruhat_cross_check() {
        let l = cw(&[1, 0, 0, -1]);
        let top = top_label(&Perm::parse("4123").unwrap(), &l);
        let bottom = bottom_label(&l, &Parabolic::new(4, &[2]).unwrap());
        assert_eq!(bottom, ap(&[0, 2, 3, 5]));
        assert!(affine_bruhat_leq(&bottom, &top));
        let below = lower_interval(&top);
        let some: Vec<AffinePerm> = below.iter().step_by(7).cloned().collect();
        for x in &some {
            for y in &some {
                assert_eq!(affine_bruhat_leq(x, y), affine_bruhat_leq_rank(x, y), "{x} <= {y}");
            }
        }
        for x in &below {
            assert!(affine_bruhat_leq(x, &top));
        }
        for u in all_perms(3) {
            for w in all_perms(3) {
                assert!(finite_embedding_is_order_preserving(&u, &w));
            }
        }
    }

    #[test]
    fn kl_label_examples() {
        let par = Parabolic::new(4, &[2]).unwrap();
        let l = cw(&[1, 0, 0, -1]);
        let p = |s| Perm::parse(s).unwrap();
        let q = QPLabel::new(p("4231"), p("2134"), &par).unwrap();
        assert_eq!(kl_label(&q, &l), ap(&[0, 1, 3, 6]));
        let open = QPLabel::new(par.top(), Perm::identity(4), &par).unwrap();
        assert_eq!(kl_label(&open, &l), bottom_label(&l, &par));
        let w1 = p("4123");
        let center = QPLabel::new(w1.clone(), w1.clone(), &par).unwrap();
        assert_eq!(kl_label(&center, &l), top_label(&w1, &l));
    }

    #[test]
    fn minimal_coweights() {
        let m = |n, j: &[usize]| Coweight::minimal(&Parabolic::new(n, j).unwrap());
        assert_eq!(m(4, &[2]), cw(&[1, 0, 0, -1]));
        assert_eq!(m(4, &[1]), cw(&[1, 1, 0, -2]));
        assert_eq!(m(4, &[1, 3]), cw(&[1, 1, -1, -1]));
        assert_eq!(m(4, &[]), cw(&[2, 1, -1, -2]));
        assert_eq!(m(2, &[]), cw(&[1, -1]));
        assert_eq!(m(3, &[1, 2]), Coweight::zero(3));
        let par = Parabolic::new(4, &[2]).unwrap();
        assert_eq!(
            cw(&[1, 1, 0, -2]).check_compatible(&par),
            Err(Error::IncompatibleCoweight { root: 1, pairing: 0 })
        );
    }

    #[test]
    fn double_coset_minimum() {
        let r = min_double_coset_check(&cw(&[1, -1]), &Parabolic::borel(2).unwrap()).unwrap();
        assert!(r.check.passed());
        let par = Parabolic::new(4, &[2]).unwrap();
        let r = min_double_coset_check(&cw(&[1, 0, 0, -1]), &par).unwrap();
        assert!(r.check.passed(), "{:?}", r.check.failures);
        let full = Parabolic::new(3, &[1, 2]).unwrap();
        assert!(min_double_coset_check(&Coweight::zero(3), &full).unwrap().check.passed());
    }

    #[test]
    fn atlas_poset_small() {
        let r = verify_atlas_poset(&Parabolic::borel(2).unwrap(), &cw(&[1, -1])).unwrap();
        assert_eq!(r.labels, 3);
        assert!(r.passed(), "{r:?}");
        let r = verify_atlas_poset(&Parabolic::new(3, &[1, 2]).unwrap(), &Coweight::zero(3)).unwrap();
        assert_eq!(r.labels, 1);
        assert!(r.passed());
        let r = verify_atlas_poset(&Parabolic::new(3, &[1]).unwrap(), &cw(&[1, 1, -2])).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
