//! Matrix realizations in `SL_n` and its loop group.

use alloc::collections::BTreeSet;
use alloc::format;

use crate::affine::{AffinePerm, AffineRoot, Coweight};
use crate::algebra::{LaurentPoly, Matrix, Rational, Ring};
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::sampling::Sampler;
use crate::weyl::{Parabolic, Perm, Root};

/// `exp(z R_{α_i}) s̃_i`: the identity with rows/cols `i, i+1` replaced by
/// the block `[[z, 1], [-1, 0]]`. At `z = 0` this is `s̃_i`.
pub fn chevalley_factor<R: Ring>(n: usize, i: usize, z: R) -> Result<Matrix<R>> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, bound: n - 1 });
    }
    let mut m = Matrix::identity(n);
    m.set(i - 1, i - 1, z);
    m.set(i - 1, i, R::one());
    m.set(i, i - 1, R::one().neg());
    m.set(i, i, R::zero());
    Ok(m)
}

/// Inverse factor: block `[[0, -1], [1, z]]`.
pub fn chevalley_factor_inverse<R: Ring>(n: usize, i: usize, z: R) -> Result<Matrix<R>> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, bound: n - 1 });
    }
    let mut m = Matrix::identity(n);
    m.set(i - 1, i - 1, R::zero());
    m.set(i - 1, i, R::one().neg());
    m.set(i, i - 1, R::one());
    m.set(i, i, z);
    Ok(m)
}

fn check_reduced(n: usize, word: &[usize]) -> Result<Perm> {
    let w = Perm::from_word(word, n)?;
    if w.length() != word.len() {
        return Err(Error::NotReduced(crate::weyl::format_word(word)));
    }
    Ok(w)
}

/// Bott–Samelson map: `∏_k chevalley_factor(q_k, z_k)` for a reduced word.
pub fn bott_samelson<R: Ring>(n: usize, word: &[usize], vars: &[R]) -> Result<Matrix<R>> {
    check_reduced(n, word)?;
    if vars.len() != word.len() {
        return Err(Error::Precondition(format!(
            "{} variables for a word of length {}",
            vars.len(),
            word.len()
        )));
    }
    let mut m = Matrix::identity(n);
    for (&i, z) in word.iter().zip(vars) {
        m = m.mul(&chevalley_factor(n, i, z.clone())?)?;
    }
    Ok(m)
}

/// Inverse of [`bott_samelson`], as the reversed product of inverse factors.
pub fn bott_samelson_inverse<R: Ring>(n: usize, word: &[usize], vars: &[R]) -> Result<Matrix<R>> {
    check_reduced(n, word)?;
    let mut m = Matrix::identity(n);
    for (&i, z) in word.iter().zip(vars).rev() {
        m = m.mul(&chevalley_factor_inverse(n, i, z.clone())?)?;
    }
    Ok(m)
}

/// Signed permutation matrix `w̃`, the product of `s̃_i` over the
/// lexicographically smallest reduced word of `w`.
pub fn perm_rep<R: Ring>(w: &Perm) -> Matrix<R> {
    let word = w.reduced_word();
    let zeros = alloc::vec![R::zero(); word.len()];
    bott_samelson(w.rank(), &word, &zeros).expect("reduced word by construction")
}

/// `w̃^{-1}`, which for a signed permutation matrix is its transpose.
pub fn perm_rep_inverse<R: Ring>(w: &Perm) -> Matrix<R> {
    perm_rep::<R>(w).transpose()
}

pub fn to_laurent<R: Ring>(m: &Matrix<R>) -> Matrix<LaurentPoly<R>> {
    m.map(|x| LaurentPoly::constant(x.clone()))
}

/// `diag(t^{λ_1}, ..., t^{λ_n})`.
pub fn t_lambda<R: Ring>(l: &Coweight) -> Matrix<LaurentPoly<R>> {
    let n = l.rank();
    Matrix::from_fn(n, n, |i, j| if i == j { LaurentPoly::t_pow(l.entries()[i]) } else { LaurentPoly::zero() })
}

/// Monomial Laurent matrix realizing `x ∈ Ŵ`: column `j` carries `±t^k` at
/// row `r` where `x(j) = r + n k`. The sign is that of `w̃` for the finite
/// part, so `t_lambda(μ)·perm_rep(w)` realizes `t^μ w`.
pub fn affine_rep<R: Ring>(x: &AffinePerm) -> Matrix<LaurentPoly<R>> {
    let (mu, w) = x.decompose();
    t_lambda::<R>(&mu).mul(&to_laurent(&perm_rep::<R>(&w))).expect("square")
}

/// A set `Ψ` of roots closed under addition, standing for the unipotent
/// group `U_Ψ`. Matrix entry `(i, j)` corresponds to the root `e_i - e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSubgroupSet {
    n: usize,
    roots: BTreeSet<Root>,
}

impl RootSubgroupSet {
    pub fn new<I: IntoIterator<Item = Root>>(n: usize, roots: I) -> Result<Self> {
        let roots: BTreeSet<Root> = roots.into_iter().collect();
        for a in &roots {
            if a.i > n || a.j > n {
                return Err(Error::NotARoot(format!("{a} in rank {n}")));
            }
            if roots.contains(&a.neg()) {
                return Err(Error::Precondition(format!("{a} and its negative both present")));
            }
            for b in &roots {
                if let Some(c) = a.add(b) {
                    if !roots.contains(&c) {
                        return Err(Error::Precondition(format!("not closed: {a} + {b} = {c} missing")));
                    }
                }
            }
        }
        Ok(RootSubgroupSet { n, roots })
    }

    pub fn roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.roots.contains(r)
    }

    /// `w·Ψ`.
    pub fn conjugate(&self, w: &Perm) -> Result<Self> {
        RootSubgroupSet::new(self.n, self.roots.iter().map(|&r| w.act_on_root(r).expect("in range")))
    }

    pub fn positive_part(&self) -> Self {
        RootSubgroupSet { n: self.n, roots: self.roots.iter().copied().filter(Root::is_positive).collect() }
    }

    pub fn negative_part(&self) -> Self {
        RootSubgroupSet { n: self.n, roots: self.roots.iter().copied().filter(|r| !r.is_positive()).collect() }
    }

    /// `U^P_-` as a root set.
    pub fn u_minus_p(p: &Parabolic) -> Self {
        RootSubgroupSet::new(p.rank(), p.roots_u_minus_p()).expect("unipotent radical roots are closed")
    }
}

/// Is `g ∈ U_Ψ`? With `Ψ` closed and containing no opposite pair,
/// `U_Ψ = U_{Ψ∩Φ_-} · U_{Ψ∩Φ_+}`, so `g` must have a unit LU factorization
/// whose factors are supported on `Ψ`.
pub fn membership_root_unipotent<R: Ring>(g: &Matrix<R>, psi: &RootSubgroupSet) -> Result<bool> {
    if g.rows() != psi.n || g.cols() != psi.n {
        return Err(Error::SizeMismatch { expected: (psi.n, psi.n), found: (g.rows(), g.cols()) });
    }
    let Some((l, u)) = g.unit_lu()? else {
        return Ok(false);
    };
    Ok(supported_on(&l, psi) && supported_on(&u, psi))
}

fn supported_on<R: Ring>(m: &Matrix<R>, psi: &RootSubgroupSet) -> bool {
    m.entries().all(|(i, j, v)| i == j || v.is_zero() || psi.contains(&Root { i: i + 1, j: j + 1 }))
}

/// `u_- · p = u_+` with `u_- ∈ U_- ∩ Ψ`, `u_+ ∈ U ∩ Ψ`, `Ψ = w_1·U^P_-`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationResult<R> {
    pub u_minus: Matrix<R>,
    pub u_plus: Matrix<R>,
}

/// Unique factorization of `p ∈ w_1 U^P_- w_1^{-1}`. Polynomial entries stay
/// polynomial: the unit LU factorization and unitriangular inversion never
/// divide.
pub fn u_minus_factorization<R: Ring>(p: &Matrix<R>, w1: &Perm, par: &Parabolic) -> Result<FactorizationResult<R>> {
    let psi = RootSubgroupSet::u_minus_p(par).conjugate(w1)?;
    let Some((l, u)) = p.unit_lu()? else {
        return Err(Error::Precondition("p has no unit LU factorization".into()));
    };
    if !supported_on(&l, &psi) || !supported_on(&u, &psi) {
        return Err(Error::Precondition("p is not in w1·U^P_-·w1^{-1}".into()));
    }
    let u_minus = l.unitriangular_inverse()?;
    debug_assert!(u_minus.mul(p)? == u);
    Ok(FactorizationResult { u_minus, u_plus: u })
}

/// For `w ∈ W^P`: `m_Q(z) w̃^{-1} ∈ U_{w·U^P_- ∩ U}` at sampled `z`,
/// and `l(w) = |w(roots(U^P_-)) ∩ Φ_+|`.
pub fn check_lemma2(w: &Perm, par: &Parabolic, sampler: &mut Sampler, samples: usize) -> Result<CheckReport> {
    if !par.is_min_rep(w) {
        return Err(Error::NotMinimalCosetRep(format!("{w}")));
    }
    let mut rep = CheckReport::new(format!("lemma2 w={w}"));
    let psi = RootSubgroupSet::u_minus_p(par).conjugate(w)?.positive_part();
    rep.assert(psi.len() == w.length(), || format!("dimension: l(w)={} but |Ψ|={}", w.length(), psi.len()));
    let word = w.reduced_word();
    let winv = perm_rep_inverse::<Rational>(w);
    for _ in 0..samples {
        let z = sampler.point(word.len());
        let g = bott_samelson(par.rank(), &word, &z)?.mul(&winv)?;
        let ok = membership_root_unipotent(&g, &psi)?;
        rep.assert(ok, || format!("z={z:?}: m_Q(z) w^-1 not in U_Ψ"));
    }
    Ok(rep)
}

/// `w̃_2^{-1} m_{Q_2}(z) ∈ U_{w_1·U^P_- ∩ U_-}` at sampled `z`,
/// and `l(w_2) = |w_1(roots(U^P_-)) ∩ Φ_-|`.
pub fn check_lemma3(
    w1: &Perm,
    w2: &Perm,
    par: &Parabolic,
    sampler: &mut Sampler,
    samples: usize,
) -> Result<CheckReport> {
    let top = par.top();
    if w2.mul(w1) != top || w1.length() + w2.length() != top.length() {
        return Err(Error::Precondition(format!("w2·w1 = {} is not a length-additive {top}", w2.mul(w1))));
    }
    let mut rep = CheckReport::new(format!("lemma3 w1={w1} w2={w2}"));
    let psi = RootSubgroupSet::u_minus_p(par).conjugate(w1)?.negative_part();
    rep.assert(psi.len() == w2.length(), || format!("dimension: l(w2)={} but |Ψ|={}", w2.length(), psi.len()));
    let word = w2.reduced_word();
    let w2inv = perm_rep_inverse::<Rational>(w2);
    for _ in 0..samples {
        let z = sampler.point(word.len());
        let g = w2inv.mul(&bott_samelson(par.rank(), &word, &z)?)?;
        let ok = membership_root_unipotent(&g, &psi)?;
        rep.assert(ok, || format!("z={z:?}: w2^-1 m_Q2(z) not in U_Ψ"));
    }
    Ok(rep)
}

/// At the root level: `t^λ` sends each root of `U^P` to level
/// `⟨λ,β⟩ > 0` and each root of `U^P_-` to level `< 0`.
pub fn check_lemma4(l: &Coweight, par: &Parabolic) -> Result<CheckReport> {
    l.check_compatible(par)?;
    let t = AffinePerm::from_translation(l);
    let mut rep = CheckReport::new("lemma4");
    for b in par.roots_u_p() {
        let img = t.act_on_root(AffineRoot { alpha: Some(b), m: 0 });
        rep.assert(img.m > 0 && img.m == l.pairing(b), || format!("U^P root {b} -> {img}"));
    }
    for b in par.roots_u_minus_p() {
        let img = t.act_on_root(AffineRoot { alpha: Some(b), m: 0 });
        rep.assert(img.m < 0 && img.m == l.pairing(b), || format!("U^P_- root {b} -> {img}"));
    }
    Ok(rep)
}
