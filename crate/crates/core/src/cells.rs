//! Cell detection by rank invariants.
//!
//! Finite: `g ∈ BwB` iff `rank g[rows > a, cols <= b] = #{c <= b : w(c) > a}`
//! and `g ∈ B_-vB` iff `rank g[rows <= a, cols <= b] = #{c <= b : v(c) <= a}`.
//!
//! Affine: a Laurent matrix `M` acts on `⊕ F[t, t^{-1}] e_r`; with the basis
//! `ε_{r+nk} = t^k e_r` it becomes a `Z × Z` matrix `A`. Then
//! `M ∈ 𝓘 x 𝓘` iff `rank A[rows > a, cols <= b] = #{c <= b : x(c) > a}`, and
//! `M ∈ 𝓘_- x 𝓘` iff `dim(A F_{<=b} ∩ E_{>=a}) = #{c <= b : x(c) >= a}`,
//! the latter computed from `A^{-1}`.

use alloc::format;
use alloc::vec::Vec;

use crate::affine::AffinePerm;
use crate::algebra::matrix::PivotLog;
use crate::algebra::{Field, LaurentPoly, Matrix, Ring};
use crate::error::{Error, Result};
use crate::weyl::Perm;

fn submatrix_rank<F: Field, L: PivotLog<F>>(g: &Matrix<F>, rows: &[usize], cols: &[usize], log: &mut L) -> usize {
    if rows.is_empty() || cols.is_empty() {
        return 0;
    }
    g.submatrix(rows, cols).rank_logged(log)
}

/// `w` with `g ∈ B w B`.
pub fn finite_cell<F: Field, L: PivotLog<F>>(g: &Matrix<F>, log: &mut L) -> Result<Perm> {
    let n = g.rows();
    if !g.is_square() || g.rank() != n {
        return Err(Error::Singular);
    }
    // r[a][b] = rank of rows a+1..n (1-based), cols 1..b
    let mut r = alloc::vec![alloc::vec![0usize; n + 1]; n + 1];
    for a in 0..n {
        let rows: Vec<usize> = (a..n).collect();
        for b in 1..=n {
            let cols: Vec<usize> = (0..b).collect();
            r[a][b] = submatrix_rank(g, &rows, &cols, log);
        }
    }
    let map: Vec<usize> = (1..=n).map(|c| (0..n).map(|a| r[a][c] - r[a][c - 1]).sum()).collect();
    let w = Perm::from_one_line(map.clone())
        .map_err(|_| Error::PivotFailure(format!("finite rank profile {map:?} is not a permutation")))?;
    for a in 0..n {
        for b in 1..=n {
            if r[a][b] != (1..=b).filter(|&c| w.at(c) > a).count() {
                return Err(Error::PivotFailure("finite rank profile inconsistent".into()));
            }
        }
    }
    Ok(w)
}

/// `v` with `g ∈ B_- v B`.
pub fn opposite_finite_cell<F: Field, L: PivotLog<F>>(g: &Matrix<F>, log: &mut L) -> Result<Perm> {
    let n = g.rows();
    if !g.is_square() || g.rank() != n {
        return Err(Error::Singular);
    }
    // r[a][b] = rank of rows 1..a, cols 1..b
    let mut r = alloc::vec![alloc::vec![0usize; n + 1]; n + 1];
    for a in 1..=n {
        let rows: Vec<usize> = (0..a).collect();
        for b in 1..=n {
            let cols: Vec<usize> = (0..b).collect();
            r[a][b] = submatrix_rank(g, &rows, &cols, log);
        }
    }
    let map: Vec<usize> = (1..=n).map(|c| n + 1 - (1..=n).map(|a| r[a][c] - r[a][c - 1]).sum::<usize>()).collect();
    let v = Perm::from_one_line(map.clone())
        .map_err(|_| Error::PivotFailure(format!("opposite rank profile {map:?} is not a permutation")))?;
    for a in 1..=n {
        for b in 1..=n {
            if r[a][b] != (1..=b).filter(|&c| v.at(c) <= a).count() {
                return Err(Error::PivotFailure("opposite rank profile inconsistent".into()));
            }
        }
    }
    Ok(v)
}

/// The `Z × Z` matrix of a Laurent matrix in the basis `ε_{r+nk} = t^k e_r`.
pub struct Periodic<F> {
    n: i64,
    lo: i64,
    hi: i64,
    /// coefficient of `t^m` in `M[r][c]` at `((r*n + c) * span + (m - lo))`
    coeffs: Vec<F>,
}

impl<F: Ring> Periodic<F> {
    pub fn new(m: &Matrix<LaurentPoly<F>>) -> Self {
        let n = m.rows();
        let lo = m.entries().filter_map(|(_, _, e)| e.min_deg()).min().unwrap_or(0);
        let hi = m.entries().filter_map(|(_, _, e)| e.max_deg()).max().unwrap_or(0);
        let span = (hi - lo + 1) as usize;
        let mut coeffs = alloc::vec![F::zero(); n * n * span];
        for (r, c, e) in m.entries() {
            for (k, v) in e.terms() {
                coeffs[(r * n + c) * span + (k - lo) as usize] = v.clone();
            }
        }
        Periodic { n: n as i64, lo, hi, coeffs }
    }

    pub fn degree_range(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    /// `A[a, b]`.
    pub fn entry(&self, a: i64, b: i64) -> F {
        let (ra, ka) = split_index(a, self.n);
        let (rb, kb) = split_index(b, self.n);
        let m = ka - kb;
        if m < self.lo || m > self.hi {
            return F::zero();
        }
        let span = (self.hi - self.lo + 1) as usize;
        let idx = ((ra * self.n + rb) as usize) * span + (m - self.lo) as usize;
        self.coeffs[idx].clone()
    }

    pub fn block(&self, rows: core::ops::Range<i64>, cols: core::ops::Range<i64>) -> Matrix<F> {
        let r0 = rows.start;
        let c0 = cols.start;
        Matrix::from_fn((rows.end - r0).max(0) as usize, (cols.end - c0).max(0) as usize, |i, j| {
            self.entry(r0 + i as i64, c0 + j as i64)
        })
    }
}

/// `a = (r + 1) + n k` with `0 <= r < n`, returned as `(r, k)`.
fn split_index(a: i64, n: i64) -> (i64, i64) {
    ((a - 1).rem_euclid(n), (a - 1).div_euclid(n))
}

fn block_rank<F: Field, L: PivotLog<F>>(
    p: &Periodic<F>,
    rows: core::ops::Range<i64>,
    cols: core::ops::Range<i64>,
    log: &mut L,
) -> usize {
    if rows.is_empty() || cols.is_empty() {
        return 0;
    }
    p.block(rows, cols).rank_logged(log)
}

/// Window bounds `[c + n·lo, c + n·hi]` that contain every possible value of `x(c)`.
pub fn search_range(fw: &Periodic<impl Ring>, inv: &Periodic<impl Ring>) -> (i64, i64) {
    let lo = fw.lo.min(-inv.hi) - 2;
    let hi = fw.hi.max(-inv.lo) + 2;
    (lo, hi)
}

fn finish_window(window: Vec<i64>, what: &str) -> Result<AffinePerm> {
    AffinePerm::from_window(window.clone())
        .map_err(|_| Error::PivotFailure(format!("{what}: rank profile {window:?} is not an affine permutation")))
}

/// Inverse of a Laurent matrix whose determinant is a monomial `c t^k`.
pub fn laurent_inverse<F: Field>(m: &Matrix<LaurentPoly<F>>) -> Result<Matrix<LaurentPoly<F>>> {
    let det = m.det_cofactor()?;
    let (k, c) = det.as_monomial().ok_or(Error::Precondition("determinant is not a monomial in t".into()))?;
    let scale = LaurentPoly::monomial(-k, c.inv());
    Ok(m.adjugate()?.map(|e| e.mul(&scale)))
}

/// `x` with `M ∈ 𝓘 x 𝓘` (the upper cell).
pub fn iwahori_cell_opposite<F: Field, L: PivotLog<F>>(
    m: &Matrix<LaurentPoly<F>>,
    m_inv: &Matrix<LaurentPoly<F>>,
    log: &mut L,
) -> Result<AffinePerm> {
    let n = m.rows() as i64;
    let a_mat = Periodic::new(m);
    let inv = Periodic::new(m_inv);
    let (lo, hi) = search_range(&a_mat, &inv);
    let reach = n * (a_mat.hi.max(0) + 2);
    // r(a, b) = rank A[(a, b + reach], (a - reach, b]]
    let r = |a: i64, b: i64, log: &mut L| -> usize {
        block_rank(&a_mat, a + 1..b + reach + 1, a - reach - n * (hi - lo + 2)..b + 1, log)
    };
    let mut window = Vec::with_capacity(n as usize);
    for c in 1..=n {
        // largest a with x(c) > a is x(c) - 1; indicator is monotone in a
        let (mut good, mut bad) = (c + n * lo - 1, c + n * hi);
        while bad - good > 1 {
            let mid = good + (bad - good) / 2;
            if r(mid, c, log) > r(mid, c - 1, log) {
                good = mid;
            } else {
                bad = mid;
            }
        }
        window.push(bad);
    }
    finish_window(window, "upper Iwahori cell")
}

/// Rows and columns of `A^{-1}` with
/// `#cols - rank A^{-1}[rows, cols] = #{c <= b : x(c) >= a}`.
///
/// A vector in `A F_{<=b} ∩ E_{>=a}` is supported in `[a, b + up]`, and its
/// preimage can only be nonzero below `b + up + down`.
pub fn lower_block<F>(a_mat: &Periodic<F>, inv: &Periodic<F>, a: i64, b: i64) -> (core::ops::Range<i64>, core::ops::Range<i64>) {
    let n = a_mat.n;
    let up = n * (a_mat.hi.max(0) + 2);
    let down = n * (inv.hi.max(0) + 2);
    (b + 1..b + up + down + 1, a..b + up + 1)
}

/// `x` with `M ∈ 𝓘_- x 𝓘` (the lower cell, indexing `𝒳_x`).
pub fn iwahori_cell<F: Field, L: PivotLog<F>>(
    m: &Matrix<LaurentPoly<F>>,
    m_inv: &Matrix<LaurentPoly<F>>,
    log: &mut L,
) -> Result<AffinePerm> {
    let n = m.rows() as i64;
    let a_mat = Periodic::new(m);
    let inv = Periodic::new(m_inv);
    let (lo, hi) = search_range(&a_mat, &inv);
    let d = |a: i64, b: i64, log: &mut L| -> i64 {
        let (rows, cols) = lower_block(&a_mat, &inv, a, b);
        let width = (cols.end - cols.start).max(0);
        width - block_rank(&inv, rows, cols, log) as i64
    };
    let mut window = Vec::with_capacity(n as usize);
    for c in 1..=n {
        // indicator [x(c) >= a] is 1 at `good`, 0 at `bad`
        let (mut good, mut bad) = (c + n * lo, c + n * hi + 1);
        while bad - good > 1 {
            let mid = good + (bad - good) / 2;
            if d(mid, c, log) > d(mid, c - 1, log) {
                good = mid;
            } else {
                bad = mid;
            }
        }
        window.push(good);
    }
    finish_window(window, "lower Iwahori cell")
}

/// Exhaustive variants that scan every threshold instead of bisecting and
/// verify the full rank profile. Used as oracles.
pub mod exhaustive {
    use super::*;

    pub fn iwahori_cell_opposite<F: Field>(m: &Matrix<LaurentPoly<F>>, m_inv: &Matrix<LaurentPoly<F>>) -> Result<AffinePerm> {
        let n = m.rows() as i64;
        let a_mat = Periodic::new(m);
        let inv = Periodic::new(m_inv);
        let (lo, hi) = search_range(&a_mat, &inv);
        let reach = n * (a_mat.hi.max(0) + 2);
        let r = |a: i64, b: i64| block_rank(&a_mat, a + 1..b + reach + 1, a - reach - n * (hi - lo + 2)..b + 1, &mut ());
        let mut window = Vec::new();
        for c in 1..=n {
            let base = c + n * lo - 1;
            let mut x = base;
            for a in base..c + n * hi {
                let ind = r(a, c) - r(a, c - 1);
                if ind > 1 {
                    return Err(Error::PivotFailure("rank jump above one".into()));
                }
                x += ind as i64;
            }
            window.push(x);
        }
        let x = finish_window(window, "upper Iwahori cell")?;
        for c in 1..=n {
            for a in c + n * lo - 1..c + n * hi {
                let expect = (c - n * (hi - lo + 4)..=c).filter(|&cc| x.eval(cc) > a).count();
                if r(a, c) != expect {
                    return Err(Error::PivotFailure(format!("upper rank profile mismatch at ({a}, {c})")));
                }
            }
        }
        Ok(x)
    }

    pub fn iwahori_cell<F: Field>(m: &Matrix<LaurentPoly<F>>, m_inv: &Matrix<LaurentPoly<F>>) -> Result<AffinePerm> {
        let n = m.rows() as i64;
        let a_mat = Periodic::new(m);
        let inv = Periodic::new(m_inv);
        let (lo, hi) = search_range(&a_mat, &inv);
        let d = |a: i64, b: i64| -> i64 {
            let (rows, cols) = lower_block(&a_mat, &inv, a, b);
            let width = (cols.end - cols.start).max(0);
            width - block_rank(&inv, rows, cols, &mut ()) as i64
        };
        let mut window = Vec::new();
        for c in 1..=n {
            let base = c + n * lo;
            let mut x = base - 1;
            for a in base..=c + n * hi {
                let ind = d(a, c) - d(a, c - 1);
                if !(0..=1).contains(&ind) {
                    return Err(Error::PivotFailure("lower rank jump outside {0, 1}".into()));
                }
                x += ind;
            }
            window.push(x);
        }
        let x = finish_window(window, "lower Iwahori cell")?;
        for c in 1..=n {
            for a in c + n * lo..=c + n * hi {
                let expect = (c - n * (hi - lo + 4)..=c).filter(|&cc| x.eval(cc) >= a).count() as i64;
                if d(a, c) != expect {
                    return Err(Error::PivotFailure(format!("lower rank profile mismatch at ({a}, {c})")));
                }
            }
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::Coweight;
    use crate::algebra::{int, Rational};
    use crate::loop_group::{affine_rep, perm_rep};
    use crate::weyl::all_perms;
    use alloc::vec;

    #[test]
    fn finite_cells_calibrate_on_permutations() {
        for n in 2..=4 {
            for w in all_perms(n) {
                let g = perm_rep::<Rational>(&w);
                assert_eq!(finite_cell(&g, &mut ()).unwrap(), w);
                assert_eq!(opposite_finite_cell(&g, &mut ()).unwrap(), w);
            }
        }
    }

    #[test]
    fn finite_cell_of_triangular() {
        let u = Matrix::from_rows(vec![
            vec![int(1), int(2), int(3)],
            vec![int(0), int(1), int(-1)],
            vec![int(0), int(0), int(1)],
        ])
        .unwrap();
        assert!(finite_cell(&u, &mut ()).unwrap().is_identity());
        assert_eq!(opposite_finite_cell(&u, &mut ()).unwrap(), Perm::longest(3).mul(&Perm::longest(3)));
        let l = u.transpose();
        assert!(opposite_finite_cell(&l, &mut ()).unwrap().is_identity());
        assert_eq!(finite_cell(&Matrix::<Rational>::zeros(3, 3), &mut ()), Err(Error::Singular));
    }

    #[test]
    fn iwahori_round_trip_on_monomials() {
        for w in all_perms(3) {
            for a in -2..=2i64 {
                for b in -2..=2i64 {
                    let mu = Coweight::new(vec![a, b, -a - b]).unwrap();
                    let x = AffinePerm::from_translation(&mu).mul(&AffinePerm::from_finite(&w));
                    let m = affine_rep::<Rational>(&x);
                    let inv = laurent_inverse(&m).unwrap();
                    assert_eq!(iwahori_cell_opposite(&m, &inv, &mut ()).unwrap(), x);
                    assert_eq!(iwahori_cell(&m, &inv, &mut ()).unwrap(), x);
                    assert_eq!(exhaustive::iwahori_cell_opposite(&m, &inv).unwrap(), x);
                    assert_eq!(exhaustive::iwahori_cell(&m, &inv).unwrap(), x);
                }
            }
        }
        let id = Matrix::<LaurentPoly<Rational>>::identity(4);
        assert_eq!(iwahori_cell(&id, &id, &mut ()).unwrap(), AffinePerm::identity(4));
    }

    #[test]
    fn iwahori_cells_ignore_iwahori_factors() {
        // M = b_- · x · b with b_- ∈ 𝓘_- (lower-triangular constant, polynomial in t)
        // and b ∈ 𝓘 (upper-triangular constant, polynomial in t^{-1}).
        let x = AffinePerm::parse("[4,-1,3]").unwrap();
        let m = affine_rep::<Rational>(&x);
        // I + c t^k E_{ij}
        let elem = |i: usize, j: usize, k: i64, c: i64| {
            let mut e = Matrix::<LaurentPoly<Rational>>::identity(3);
            e.set(i - 1, j - 1, LaurentPoly::monomial(k, int(c)));
            e
        };
        let prod = |fs: &[Matrix<LaurentPoly<Rational>>]| Matrix::product(3, fs.iter()).unwrap();
        let upper = prod(&[elem(1, 2, 0, 2), elem(2, 1, -1, 3), elem(3, 1, -2, 1), elem(1, 3, -1, 1), elem(2, 3, 0, 4), elem(3, 2, -1, -1)]);
        let lower = prod(&[elem(2, 1, 0, 3), elem(1, 2, 1, 2), elem(3, 1, 1, 1), elem(2, 3, 2, -1), elem(3, 1, 0, 5)]);
        let upper_left = prod(&[elem(1, 3, 0, -2), elem(3, 2, -1, 1), elem(2, 1, -3, 2)]);
        let b = m.mul(&upper).unwrap();
        let mm = lower.mul(&b).unwrap();
        let inv = laurent_inverse(&mm).unwrap();
        assert_eq!(iwahori_cell(&mm, &inv, &mut ()).unwrap(), x);
        let mu = upper_left.mul(&m).unwrap().mul(&upper).unwrap();
        let inv = laurent_inverse(&mu).unwrap();
        assert_eq!(iwahori_cell_opposite(&mu, &inv, &mut ()).unwrap(), x);
    }
}
