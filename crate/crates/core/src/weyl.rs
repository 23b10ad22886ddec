//! Type `A_{n-1}` Weyl group combinatorics: permutations, roots, Bruhat
//! order, parabolic quotients and the poset `Q_P`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::CheckReport;

/// Largest rank accepted by the exhaustive routines.
pub const MAX_RANK: usize = 6;

/// A permutation of `{1..n}` in one-line notation.
///
/// Products compose right-to-left: `(u*w)(i) = u(w(i))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { map: (1..=n).collect() }
    }

    pub fn from_one_line(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = alloc::vec![false; n + 1];
        for &v in &map {
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotAPermutation(format!("{map:?}")));
            }
            seen[v] = true;
        }
        Ok(Perm { map })
    }

    /// Simple reflection `s_i` swapping `i` and `i+1`.
    pub fn simple(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { index: i, bound: n.saturating_sub(1) });
        }
        let mut p = Perm::identity(n);
        p.map.swap(i - 1, i);
        Ok(p)
    }

    /// Longest element `w_0`: the reversal.
    pub fn longest(n: usize) -> Self {
        Perm { map: (1..=n).rev().collect() }
    }

    /// Product `s_{i_1} s_{i_2} ... s_{i_k}`.
    pub fn from_word(word: &[usize], n: usize) -> Result<Self> {
        let mut p = Perm::identity(n);
        for &i in word {
            p = p.compose(&Perm::simple(i, n)?)?;
        }
        Ok(p)
    }

    pub fn rank(&self) -> usize {
        self.map.len()
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> usize {
        self.map[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// `self ∘ w`.
    pub fn compose(&self, w: &Perm) -> Result<Perm> {
        if self.rank() != w.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: w.rank() });
        }
        Ok(Perm { map: w.map.iter().map(|&i| self.map[i - 1]).collect() })
    }

    /// Composition for callers that already know the ranks agree.
    pub fn mul(&self, w: &Perm) -> Perm {
        self.compose(w).expect("rank mismatch")
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = alloc::vec![0; self.rank()];
        for (k, &v) in self.map.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Perm { map: inv }
    }

    /// Inversion count.
    pub fn length(&self) -> usize {
        let n = self.rank();
        let mut l = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.map[i] > self.map[j] {
                    l += 1;
                }
            }
        }
        l
    }

    /// `l(s_i w) < l(w)`, i.e. `i+1` appears before `i` in one-line notation.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.at(i) > inv.at(i + 1)
    }

    /// `l(w s_i) < l(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.at(i) > self.at(i + 1)
    }

    /// Lexicographically smallest reduced word.
    pub fn reduced_word(&self) -> Vec<usize> {
        let n = self.rank();
        let mut word = Vec::with_capacity(self.length());
        let mut cur = self.clone();
        while let Some(i) = (1..n).find(|&i| cur.has_left_descent(i)) {
            word.push(i);
            cur.map.iter_mut().for_each(|v| {
                if *v == i {
                    *v = i + 1
                } else if *v == i + 1 {
                    *v = i
                }
            });
        }
        word
    }

    /// Left multiplication by `s_i` (swap values `i`, `i+1`).
    pub fn left_mul_simple(&self, i: usize) -> Perm {
        let mut p = self.clone();
        for v in p.map.iter_mut() {
            if *v == i {
                *v = i + 1;
            } else if *v == i + 1 {
                *v = i;
            }
        }
        p
    }

    /// Right multiplication by `s_i` (swap positions `i`, `i+1`).
    pub fn right_mul_simple(&self, i: usize) -> Perm {
        let mut p = self.clone();
        p.map.swap(i - 1, i);
        p
    }

    pub fn act_on_root(&self, r: Root) -> Result<Root> {
        if r.i > self.rank() || r.j > self.rank() {
            return Err(Error::NotARoot(format!("{r} in rank {}", self.rank())));
        }
        Root::new(self.at(r.i), self.at(r.j), self.rank())
    }

    /// Parses `"4231"` or `"4,2,3,1"`.
    pub fn parse(s: &str) -> Result<Perm> {
        let s = s.trim();
        let map: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("permutation '{s}'"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("permutation '{s}'"))))
                .collect::<Result<_>>()?
        };
        Perm::from_one_line(map)
    }
}

impl Serialize for Perm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() <= 9 {
            for v in &self.map {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.map.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

/// Comma-separated generator indices; empty word is `""`.
pub fn format_word(word: &[usize]) -> String {
    let parts: Vec<String> = word.iter().map(|v| v.to_string()).collect();
    parts.join(",")
}

/// Orders by length, then one-line lexicographically.
pub fn length_lex(a: &Perm, b: &Perm) -> Ordering {
    a.length().cmp(&b.length()).then_with(|| a.map.cmp(&b.map))
}

/// All of `S_n` in length-lex order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Perm { map: cur.clone() });
        // next lexicographic permutation
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| cur[k] < cur[k + 1]) else {
            break;
        };
        let l = (k + 1..n).rev().find(|&l| cur[l] > cur[k]).unwrap();
        cur.swap(k, l);
        cur[k + 1..].reverse();
    }
    out.sort_by(length_lex);
    out
}

/// Bruhat order by the lifting form of the subword property: with `s` a
/// left descent of `w`, `u <= w` iff `min(u, s u) <= s w`.
pub fn bruhat_leq(u: &Perm, w: &Perm) -> bool {
    assert_eq!(u.rank(), w.rank(), "rank mismatch");
    let n = w.rank();
    let mut u = u.clone();
    let mut w = w.clone();
    loop {
        if u.length() > w.length() {
            return false;
        }
        match (1..n).find(|&i| w.has_left_descent(i)) {
            None => return u.is_identity(),
            Some(i) => {
                if u.has_left_descent(i) {
                    u = u.left_mul_simple(i);
                }
                w = w.left_mul_simple(i);
            }
        }
    }
}

/// Bruhat order by the rank-matrix criterion
/// `#{c <= b : u(c) >= a} <= #{c <= b : w(c) >= a}` for all `a, b`.
pub fn bruhat_leq_rank(u: &Perm, w: &Perm) -> bool {
    let n = u.rank();
    for b in 1..=n {
        for a in 1..=n {
            let cu = (1..=b).filter(|&c| u.at(c) >= a).count();
            let cw = (1..=b).filter(|&c| w.at(c) >= a).count();
            if cu > cw {
                return false;
            }
        }
    }
    true
}

/// The root `e_i - e_j` (1-based, `i != j`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self> {
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(Error::NotARoot(format!("e{i}-e{j} in rank {n}")));
        }
        Ok(Root { i, j })
    }

    pub fn simple(k: usize) -> Self {
        Root { i: k, j: k + 1 }
    }

    pub fn is_positive(&self) -> bool {
        self.i < self.j
    }

    pub fn neg(&self) -> Self {
        Root { i: self.j, j: self.i }
    }

    /// Sum of heights of the simple roots involved (negative for negative roots).
    pub fn height(&self) -> i64 {
        self.j as i64 - self.i as i64
    }

    /// `Some(α+β)` if it is a root.
    pub fn add(&self, o: &Root) -> Option<Root> {
        if self.j == o.i && self.i != o.j {
            Some(Root { i: self.i, j: o.j })
        } else if o.j == self.i && o.i != self.j {
            Some(Root { i: o.i, j: self.j })
        } else {
            None
        }
    }

    /// Integer vector with a `+1` at `i` and `-1` at `j`.
    pub fn vector(&self, n: usize) -> Vec<i64> {
        let mut v = alloc::vec![0; n];
        v[self.i - 1] = 1;
        v[self.j - 1] = -1;
        v
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}-e{}", self.i, self.j)
    }
}

/// `Φ` in rank `n`, positive roots first, each group sorted.
pub fn all_roots(n: usize) -> Vec<Root> {
    let mut pos = positive_roots(n);
    let neg: Vec<Root> = pos.iter().map(|r| r.neg()).collect();
    pos.extend(neg);
    pos
}

pub fn positive_roots(n: usize) -> Vec<Root> {
    let mut v = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            v.push(Root { i, j });
        }
    }
    v
}

/// A parabolic subgroup, given by the set `J` of simple-root indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Parabolic {
    n: usize,
    j: BTreeSet<usize>,
}

impl Parabolic {
    pub fn new(n: usize, j: &[usize]) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition(format!("rank n={n} must be at least 2")));
        }
        if n > MAX_RANK {
            return Err(Error::RankCap { n, max: MAX_RANK });
        }
        for &i in j {
            if i == 0 || i >= n {
                return Err(Error::IndexOutOfRange { index: i, bound: n - 1 });
            }
        }
        Ok(Parabolic { n, j: j.iter().copied().collect() })
    }

    /// The Borel (`J` empty).
    pub fn borel(n: usize) -> Result<Self> {
        Parabolic::new(n, &[])
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn j(&self) -> Vec<usize> {
        self.j.iter().copied().collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.j.contains(&i)
    }

    /// Maximal runs of positions `[lo, hi]` joined by simple roots in `J`.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut lo = 1;
        for i in 1..=self.n {
            if i == self.n || !self.contains(i) {
                out.push((lo, i));
                lo = i + 1;
            }
        }
        out
    }

    pub fn block_of(&self, k: usize) -> usize {
        self.blocks().iter().position(|&(lo, hi)| lo <= k && k <= hi).unwrap()
    }

    /// `Φ_J`: positive roots in the span of `{α_i : i ∈ J}`.
    pub fn phi_j(&self) -> Vec<Root> {
        positive_roots(self.n).into_iter().filter(|r| self.block_of(r.i) == self.block_of(r.j)).collect()
    }

    /// Roots of the unipotent radical `U^P`: `Φ_+ \ Φ_J`.
    pub fn roots_u_p(&self) -> Vec<Root> {
        positive_roots(self.n).into_iter().filter(|r| self.block_of(r.i) != self.block_of(r.j)).collect()
    }

    /// Roots of `U^P_-`: `Φ_- \ Φ_{-J}`.
    pub fn roots_u_minus_p(&self) -> Vec<Root> {
        self.roots_u_p().into_iter().map(|r| r.neg()).collect()
    }

    /// Elements of `W_P` in length-lex order.
    pub fn wp_elements(&self) -> Vec<Perm> {
        all_perms(self.n).into_iter().filter(|w| self.in_wp(w)).collect()
    }

    pub fn in_wp(&self, w: &Perm) -> bool {
        (1..=self.n).all(|k| self.block_of(k) == self.block_of(w.at(k)))
    }

    /// `w_{0,P}`: reverses each block.
    pub fn longest(&self) -> Perm {
        let mut map = Vec::with_capacity(self.n);
        for (lo, hi) in self.blocks() {
            map.extend((lo..=hi).rev());
        }
        Perm { map }
    }

    /// `w ∈ W^P` iff `l(w s_i) > l(w)` for all `i ∈ J`.
    pub fn is_min_rep(&self, w: &Perm) -> bool {
        self.j.iter().all(|&i| !w.has_right_descent(i))
    }

    /// `W^P` in length-lex order.
    pub fn min_coset_reps(&self) -> Vec<Perm> {
        all_perms(self.n).into_iter().filter(|w| self.is_min_rep(w)).collect()
    }

    /// `(w^P, w_P)` with `w = w^P w_P`, `w^P ∈ W^P`, `w_P ∈ W_P`.
    pub fn coset_factor(&self, w: &Perm) -> (Perm, Perm) {
        let mut map = w.map.clone();
        for (lo, hi) in self.blocks() {
            map[lo - 1..hi].sort_unstable();
        }
        let rep = Perm { map };
        let u = rep.inverse().mul(w);
        (rep, u)
    }

    /// `w_0 w_{0,P}`, the longest element of `W^P`.
    pub fn top(&self) -> Perm {
        Perm::longest(self.n).mul(&self.longest())
    }

    /// `dim G/P = l(w_0 w_{0,P})`.
    pub fn dimension(&self) -> usize {
        self.roots_u_p().len()
    }
}

/// A pair `(w, v)` with `w ∈ W^P` and `v <= w`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct QPLabel {
    pub w: Perm,
    pub v: Perm,
}

impl QPLabel {
    pub fn new(w: Perm, v: Perm, p: &Parabolic) -> Result<Self> {
        if w.rank() != p.rank() || v.rank() != p.rank() {
            return Err(Error::RankMismatch { left: w.rank(), right: v.rank() });
        }
        if !p.is_min_rep(&w) {
            return Err(Error::NotMinimalCosetRep(w.to_string()));
        }
        if !bruhat_leq(&v, &w) {
            return Err(Error::NotInQP(format!("({w}, {v}): v is not below w")));
        }
        Ok(QPLabel { w, v })
    }

    /// Dimension of the open projected Richardson `l(w) - l(v)`.
    pub fn dim(&self) -> usize {
        self.w.length() - self.v.length()
    }
}

impl fmt::Display for QPLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.w, self.v)
    }
}

impl PartialOrd for QPLabel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Deterministic total order used for listings (not `⪯`).
impl Ord for QPLabel {
    fn cmp(&self, o: &Self) -> Ordering {
        length_lex(&self.w, &o.w).then_with(|| length_lex(&self.v, &o.v))
    }
}

/// All of `Q_P`, ordered by `w` then `v` (both length-lex).
pub fn qp_enumerate(p: &Parabolic) -> Vec<QPLabel> {
    let all = all_perms(p.rank());
    let mut out = Vec::new();
    for w in p.min_coset_reps() {
        for v in &all {
            if bruhat_leq(v, &w) {
                out.push(QPLabel { w: w.clone(), v: v.clone() });
            }
        }
    }
    out
}

/// `a ⪯ b` iff some `u ∈ W_P` has `a.w u <= b.w` and `a.v u >= b.v`.
pub fn qp_leq(a: &QPLabel, b: &QPLabel, p: &Parabolic) -> bool {
    p.wp_elements()
        .iter()
        .any(|u| bruhat_leq(&a.w.mul(u), &b.w) && bruhat_leq(&b.v, &a.v.mul(u)))
}

/// Same as [`qp_leq`] with `W_P` supplied by the caller.
pub fn qp_leq_with(a: &QPLabel, b: &QPLabel, wp: &[Perm]) -> bool {
    wp.iter().any(|u| bruhat_leq(&a.w.mul(u), &b.w) && bruhat_leq(&b.v, &a.v.mul(u)))
}

/// `w·Φ_J ⊂ Φ_+` for all `w ∈ W^P`.
pub fn check_lemma1(p: &Parabolic) -> CheckReport {
    let mut rep = CheckReport::new("lemma1");
    let phi_j = p.phi_j();
    for w in p.min_coset_reps() {
        for &b in &phi_j {
            let img = w.act_on_root(b).expect("root in range");
            rep.assert(img.is_positive(), || format!("w={w}: {b} -> {img} is negative"));
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(s: &str) -> Perm {
        Perm::parse(s).unwrap()
    }

    /// Exhaustive subword search: does some subword of `word` multiply to `u`?
    fn subword_oracle(u: &Perm, word: &[usize]) -> bool {
        let n = u.rank();
        (0u32..1 << word.len()).any(|mask| {
            let sub: Vec<usize> =
                word.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i).collect();
            Perm::from_word(&sub, n).unwrap() == *u
        })
    }

    #[test]
    fn composition_convention() {
        let s = |i| Perm::simple(i, 4).unwrap();
        assert!(s(1).mul(&s(1)).is_identity());
        assert_eq!(s(3).mul(&s(2)).mul(&s(1)), p("4123"));
        assert_eq!(s(1).mul(&s(2)), p("2314"));
        assert_eq!(p("2314").mul(&p("4123")), p("4231"));
        assert!(p("123").compose(&p("1234")).is_err());
    }

    #[test]
    fn lengths_and_words() {
        assert_eq!(Perm::identity(4).length(), 0);
        assert_eq!(p("4231").length(), 5);
        assert_eq!(p("4321").length(), 6);
        assert_eq!(p("4231").reduced_word(), vec![1, 2, 3, 2, 1]);
        for w in all_perms(4) {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            assert_eq!(Perm::from_word(&word, 4).unwrap(), w);
        }
    }

    #[test]
    fn bruhat_matches_subword_and_rank_oracles() {
        let all = all_perms(4);
        for w in &all {
            let word = w.reduced_word();
            for u in &all {
                let a = bruhat_leq(u, w);
                assert_eq!(a, subword_oracle(u, &word), "{u} <= {w}");
                assert_eq!(a, bruhat_leq_rank(u, w), "{u} <= {w}");
            }
        }
        assert!(bruhat_leq(&p("2134"), &p("4231")));
    }

    #[test]
    fn root_action() {
        let s1 = Perm::simple(1, 4).unwrap();
        assert_eq!(s1.act_on_root(Root::simple(1)).unwrap(), Root::simple(1).neg());
        let img = p("4123").act_on_root(Root::simple(2)).unwrap();
        assert_eq!(img, Root { i: 1, j: 2 });
        assert!(img.is_positive());
        assert_eq!(all_roots(5).len(), 20);
        assert!(Root::new(2, 2, 4).is_err());
    }

    #[test]
    fn parabolic_data() {
        let par = Parabolic::new(3, &[1]).unwrap();
        let reps: Vec<String> = par.min_coset_reps().iter().map(|w| w.to_string()).collect();
        assert_eq!(reps, vec!["123", "132", "231"]);
        let par = Parabolic::new(4, &[2]).unwrap();
        assert_eq!(par.longest(), p("1324"));
        assert_eq!(par.min_coset_reps().len(), 12);
        assert_eq!(par.top(), p("4231"));
        assert_eq!(Parabolic::new(4, &[1, 2, 3]).unwrap().min_coset_reps(), vec![Perm::identity(4)]);
        assert_eq!(Parabolic::borel(3).unwrap().min_coset_reps().len(), 6);
        assert!(Parabolic::new(4, &[4]).is_err());
        assert!(Parabolic::new(7, &[]).is_err());
    }

    #[test]
    fn coset_factorization_adds_lengths() {
        for j in [vec![], vec![1], vec![2], vec![1, 3], vec![1, 2]] {
            let par = Parabolic::new(4, &j).unwrap();
            for w in all_perms(4) {
                let (rep, u) = par.coset_factor(&w);
                assert!(par.is_min_rep(&rep));
                assert!(par.in_wp(&u));
                assert_eq!(rep.mul(&u), w);
                assert_eq!(rep.length() + u.length(), w.length());
            }
        }
    }

    #[test]
    fn qp_sizes() {
        let size = |n, j: &[usize]| qp_enumerate(&Parabolic::new(n, j).unwrap()).len();
        assert_eq!(size(2, &[]), 3);
        assert_eq!(size(3, &[1]), 7);
        assert_eq!(size(3, &[]), 19);
        assert_eq!(size(4, &[2]), 85);
        assert_eq!(size(4, &[1]), 83);
        assert_eq!(size(4, &[1, 3]), 33);
        assert_eq!(size(4, &[]), 213);
        assert_eq!(size(4, &[1, 2, 3]), 1);
    }

    #[test]
    fn qp_order() {
        let par = Parabolic::new(4, &[2]).unwrap();
        let a = QPLabel::new(p("4231"), p("2134"), &par).unwrap();
        let b = QPLabel::new(p("4231"), p("1234"), &par).unwrap();
        assert!(qp_leq(&a, &b, &par));
        assert!(!qp_leq(&b, &a, &par));
        assert!(QPLabel::new(p("4321"), p("1234"), &par).is_err());
        assert!(QPLabel::new(p("2134"), p("4231"), &par).is_err());
    }

    #[test]
    fn lemma1_examples() {
        let r = check_lemma1(&Parabolic::new(4, &[2]).unwrap());
        assert!(r.passed());
        assert_eq!(r.checks, 12);
        assert_eq!(check_lemma1(&Parabolic::borel(4).unwrap()).checks, 0);
        assert_eq!(check_lemma1(&Parabolic::new(3, &[1]).unwrap()).checks, 3);
    }

    #[test]
    fn serialization() {
        assert_eq!(p("4231").to_string(), "4231");
        assert_eq!(p("4,2,3,1"), p("4231"));
        let big = Perm::longest(10);
        assert_eq!(big.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert_eq!(Perm::parse(&big.to_string()).unwrap(), big);
        assert_eq!(format_word(&[1, 2, 3]), "1,2,3");
        assert!(Perm::parse("4221").is_err());
    }
}
