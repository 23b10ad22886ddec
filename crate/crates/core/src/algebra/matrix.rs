use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::ring::{Domain, Field, Ring};
use crate::error::{Error, Result};

/// Receives every pivot chosen during an elimination.
pub trait PivotLog<F> {
    fn record(&mut self, pivot: &F);
}

impl<F> PivotLog<F> for () {
    fn record(&mut self, _: &F) {}
}

impl<F: Clone> PivotLog<F> for Vec<F> {
    fn record(&mut self, p: &F) {
        self.push(p.clone());
    }
}

/// Dense row-major matrix. Indices are 0-based.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> R>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        if let Some(bad) = rows.iter().find(|v| v.len() != c) {
            return Err(Error::SizeMismatch { expected: (r, c), found: (r, bad.len()) });
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::SizeMismatch { expected: (self.cols, o.cols), found: (o.rows, o.cols) });
        }
        let mut out = Matrix::<R>::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Product of a nonempty chain of square matrices of equal size.
    pub fn product<'a, I: IntoIterator<Item = &'a Self>>(n: usize, it: I) -> Result<Self>
    where
        R: 'a,
    {
        let mut acc = Matrix::identity(n);
        for m in it {
            acc = acc.mul(m)?;
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, f: F) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    /// Multiplies column `j` by `c[j]`.
    pub fn scale_columns(&self, c: &[R]) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).mul(&c[j]))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &R)> {
        self.data.iter().enumerate().map(move |(k, v)| (k / self.cols, k % self.cols, v))
    }

    fn check_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::SizeMismatch { expected: (self.rows, self.rows), found: (self.rows, self.cols) })
        }
    }

    /// Laplace expansion along the first row. Exponential; intended for
    /// small sizes and as an oracle.
    pub fn det_cofactor(&self) -> Result<R> {
        self.check_square()?;
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.det_rec(&idx, &idx))
    }

    fn det_rec(&self, rows: &[usize], cols: &[usize]) -> R {
        match rows.len() {
            0 => R::one(),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let mut acc = R::zero();
                let sub_rows = &rows[1..];
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(rows[0], c);
                    if a.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> =
                        cols.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect();
                    let t = a.mul(&self.det_rec(sub_rows, &sub_cols));
                    acc = if k % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
                }
                acc
            }
        }
    }

    /// Adjugate by cofactors: `adj(A) * A = det(A) * I`.
    pub fn adjugate(&self) -> Result<Self> {
        self.check_square()?;
        let n = self.rows;
        let idx: Vec<usize> = (0..n).collect();
        Ok(Matrix::from_fn(n, n, |i, j| {
            let rows: Vec<usize> = idx.iter().copied().filter(|&r| r != j).collect();
            let cols: Vec<usize> = idx.iter().copied().filter(|&c| c != i).collect();
            let m = self.det_rec(&rows, &cols);
            if (i + j) % 2 == 0 {
                m
            } else {
                m.neg()
            }
        }))
    }

    /// Doolittle factorization `self = L * U` with unit diagonals on both
    /// factors. Needs no division; `None` if some diagonal entry of `U` is
    /// not `1`.
    pub fn unit_lu(&self) -> Result<Option<(Self, Self)>> {
        self.check_square()?;
        let n = self.rows;
        let mut l = Matrix::<R>::identity(n);
        let mut u = Matrix::zeros(n, n);
        for i in 0..n {
            for k in i..n {
                let mut s = self.get(i, k).clone();
                for j in 0..i {
                    s = s.sub(&l.get(i, j).mul(u.get(j, k)));
                }
                u.set(i, k, s);
            }
            if !u.get(i, i).is_one() {
                return Ok(None);
            }
            for k in i + 1..n {
                let mut s = self.get(k, i).clone();
                for j in 0..i {
                    s = s.sub(&l.get(k, j).mul(u.get(j, i)));
                }
                l.set(k, i, s);
            }
        }
        Ok(Some((l, u)))
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_square()
            && self.entries().all(|(i, j, v)| {
                if i == j {
                    v.is_one()
                } else if i > j {
                    v.is_zero()
                } else {
                    true
                }
            })
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        self.transpose().is_upper_unitriangular()
    }

    /// Inverse of a unitriangular matrix by back substitution.
    pub fn unitriangular_inverse(&self) -> Result<Self> {
        let upper = self.is_upper_unitriangular();
        if !upper && !self.is_lower_unitriangular() {
            return Err(Error::Precondition("matrix is not unitriangular".into()));
        }
        if !upper {
            return Ok(self.transpose().unitriangular_inverse()?.transpose());
        }
        let n = self.rows;
        let mut inv = Matrix::identity(n);
        for j in 0..n {
            for i in (0..j).rev() {
                let mut s = R::zero();
                for k in i + 1..=j {
                    s = s.add(&self.get(i, k).mul(inv.get(k, j)));
                }
                inv.set(i, j, s.neg());
            }
        }
        Ok(inv)
    }
}

impl<R: Domain> Matrix<R> {
    /// Fraction-free (Bareiss) determinant with row pivoting.
    pub fn det_bareiss(&self) -> Result<R> {
        self.check_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(R::one());
        }
        let mut a = self.clone();
        let mut sign = false;
        let mut prev = R::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                    None => return Ok(R::zero()),
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = !sign;
                    }
                }
            }
            let p = a.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = p.mul(a.get(i, j)).sub(&a.get(i, k).mul(a.get(k, j)));
                    let v = v.div_exact(&prev).ok_or_else(|| {
                        Error::PivotFailure("inexact division in fraction-free elimination".into())
                    })?;
                    a.set(i, j, v);
                }
                a.set(i, k, R::zero());
            }
            prev = p;
        }
        let d = a.get(n - 1, n - 1).clone();
        Ok(if sign { d.neg() } else { d })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<R> {
        self.submatrix(rows, cols).det_bareiss()
    }
}

impl<F: Field> Matrix<F> {
    /// Rank by Gaussian elimination. Pivot columns are scanned left to right
    /// and the first nonzero entry is taken, so the log is deterministic.
    pub fn rank_logged<L: PivotLog<F>>(&self, log: &mut L) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for c in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let Some(p) = (rank..a.rows).find(|&r| !a.get(r, c).is_zero()) else {
                continue;
            };
            a.swap_rows(rank, p);
            let piv = a.get(rank, c).clone();
            log.record(&piv);
            let inv = piv.inv();
            for r in rank + 1..a.rows {
                let f = a.get(r, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..a.cols {
                    let v = a.get(r, j).sub(&f.mul(a.get(rank, j)));
                    a.set(r, j, v);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn rank(&self) -> usize {
        self.rank_logged(&mut ())
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        self.check_square()?;
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::<F>::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let pi = a.get(c, c).inv();
            for j in 0..n {
                a.set(c, j, a.get(c, j).mul(&pi));
                inv.set(c, j, inv.get(c, j).mul(&pi));
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let f = a.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, a.get(r, j).sub(&f.mul(a.get(c, j))));
                    inv.set(r, j, inv.get(r, j).sub(&f.mul(inv.get(c, j))));
                }
            }
        }
        Ok(inv)
    }

    /// Basis of the right nullspace, one vector per free column, in reduced
    /// echelon form (free variable set to 1).
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let pi = a.get(r, c).inv();
            for j in 0..a.cols {
                a.set(r, j, a.get(r, j).mul(&pi));
            }
            for i in 0..a.rows {
                if i == r {
                    continue;
                }
                let f = a.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..a.cols {
                    a.set(i, j, a.get(i, j).sub(&f.mul(a.get(r, j))));
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut out = Vec::new();
        for free in (0..a.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![F::zero(); a.cols];
            v[free] = F::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = a.get(i, free).neg();
            }
            out.push(v);
        }
        out
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::multipoly::MultiPoly;
    use crate::algebra::rational::{int, Rational};

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn determinants_agree() {
        let m = qm(&[&[2, -1, 0, 3], &[1, 0, 4, 1], &[0, 5, -2, 2], &[7, 1, 1, 0]]);
        assert_eq!(m.det_bareiss().unwrap(), m.det_cofactor().unwrap());
        let z = MultiPoly::var;
        let p = Matrix::from_rows(vec![
            vec![MultiPoly::zero(), z(0), MultiPoly::one()],
            vec![z(1), MultiPoly::one(), z(2)],
            vec![MultiPoly::one(), MultiPoly::zero(), z(0)],
        ])
        .unwrap();
        assert_eq!(p.det_bareiss().unwrap(), p.det_cofactor().unwrap());
    }

    #[test]
    fn inverse_and_adjugate() {
        let m = qm(&[&[2, -1, 0], &[1, 0, 4], &[0, 5, -2]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3));
        let adj = m.adjugate().unwrap();
        let d = m.det_cofactor().unwrap();
        assert_eq!(adj.mul(&m).unwrap(), Matrix::identity(3).map(|x| x * &d));
        assert_eq!(qm(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn rank_and_nullspace() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let mut log: Vec<Rational> = Vec::new();
        assert_eq!(m.rank_logged(&mut log), 2);
        assert_eq!(log.len(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        let v = Matrix::from_fn(3, 1, |i, _| ns[0][i].clone());
        assert!(m.mul(&v).unwrap().entries().all(|(_, _, x)| x == &int(0)));
    }

    #[test]
    fn unit_lu_and_triangular_inverse() {
        let l = qm(&[&[1, 0, 0], &[3, 1, 0], &[-2, 5, 1]]);
        let u = qm(&[&[1, 4, -1], &[0, 1, 2], &[0, 0, 1]]);
        let (l2, u2) = l.mul(&u).unwrap().unit_lu().unwrap().unwrap();
        assert_eq!((l2.clone(), u2.clone()), (l.clone(), u.clone()));
        assert_eq!(u.mul(&u.unitriangular_inverse().unwrap()).unwrap(), Matrix::identity(3));
        assert_eq!(l.mul(&l.unitriangular_inverse().unwrap()).unwrap(), Matrix::identity(3));
        assert!(qm(&[&[2, 0], &[0, 1]]).unit_lu().unwrap().is_none());
    }
}
