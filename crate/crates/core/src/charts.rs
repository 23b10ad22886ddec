//! Atlas charts: for `w_1 ∈ W^P`, the maps `φ_{w_1}` into `G/P` and
//! `ψ_{w_1}` into the affine flag variety.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::Serialize;

use crate::affine::{top_label, AffinePerm, Coweight};
use crate::algebra::{LaurentPoly, Matrix, MultiPoly, Ring};
use crate::error::{Error, Result};
use crate::loop_group::{
    bott_samelson, bott_samelson_inverse, perm_rep, perm_rep_inverse, t_lambda, to_laurent, u_minus_factorization,
};
use crate::weyl::{format_word, Parabolic, Perm};

#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    pub parabolic: Parabolic,
    pub lambda: Coweight,
    pub w1: Perm,
    /// `w_0 w_{0,P} w_1^{-1}`.
    pub w2: Perm,
    pub q1: Vec<usize>,
    pub q2: Vec<usize>,
    /// `w_{0,P} w_0`.
    middle: Perm,
}

/// `{n, J, lambda, w1, w2, Q1, Q2}` as printed in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartDescriptor {
    pub n: usize,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub lambda: Vec<i64>,
    pub w1: String,
    pub w2: String,
    #[serde(rename = "Q1")]
    pub q1: String,
    #[serde(rename = "Q2")]
    pub q2: String,
}

pub fn make_chart(w1: &Perm, par: &Parabolic, lambda: &Coweight) -> Result<Chart> {
    if w1.rank() != par.rank() {
        return Err(Error::RankMismatch { left: w1.rank(), right: par.rank() });
    }
    if !par.is_min_rep(w1) {
        return Err(Error::NotMinimalCosetRep(w1.to_string()));
    }
    lambda.check_compatible(par)?;
    let top = par.top();
    let w2 = top.mul(&w1.inverse());
    debug_assert_eq!(w1.length() + w2.length(), top.length());
    Ok(Chart {
        parabolic: par.clone(),
        lambda: lambda.clone(),
        w1: w1.clone(),
        q1: w1.reduced_word(),
        q2: w2.reduced_word(),
        w2,
        middle: top.inverse(),
    })
}

/// One chart per element of `W^P`, in length-lex order of `w_1`.
pub fn all_charts(par: &Parabolic, lambda: &Coweight) -> Result<Vec<Chart>> {
    par.min_coset_reps().iter().map(|w1| make_chart(w1, par, lambda)).collect()
}

impl Chart {
    pub fn n(&self) -> usize {
        self.parabolic.rank()
    }

    /// `|Q_1| + |Q_2| = dim G/P`.
    pub fn num_vars(&self) -> usize {
        self.q1.len() + self.q2.len()
    }

    pub fn descriptor(&self) -> ChartDescriptor {
        ChartDescriptor {
            n: self.n(),
            j: self.parabolic.j(),
            lambda: self.lambda.entries().to_vec(),
            w1: self.w1.to_string(),
            w2: self.w2.to_string(),
            q1: format_word(&self.q1),
            q2: format_word(&self.q2),
        }
    }

    /// `w_{0,P} w_0`.
    pub fn middle(&self) -> &Perm {
        &self.middle
    }

    /// `w_1 t^λ w_1^{-1}`, the label of the chart's closed top stratum.
    pub fn top_label(&self) -> AffinePerm {
        top_label(&self.w1, &self.lambda)
    }

    /// `w_1 t^λ w_{0,P} w_0 w_2`, computed from the factors.
    pub fn center_label(&self) -> AffinePerm {
        AffinePerm::from_finite(&self.w1)
            .mul(&AffinePerm::from_translation(&self.lambda))
            .mul(&AffinePerm::from_finite(&self.middle))
            .mul(&AffinePerm::from_finite(&self.w2))
    }

    fn split<'a, R>(&self, z: &'a [R]) -> Result<(&'a [R], &'a [R])> {
        if z.len() != self.num_vars() {
            return Err(Error::Precondition(alloc::format!(
                "chart has {} coordinates, got {}",
                self.num_vars(),
                z.len()
            )));
        }
        Ok(z.split_at(self.q1.len()))
    }

    pub fn m1<R: Ring>(&self, z: &[R]) -> Result<Matrix<R>> {
        let (a, _) = self.split(z)?;
        bott_samelson(self.n(), &self.q1, a)
    }

    pub fn m2<R: Ring>(&self, z: &[R]) -> Result<Matrix<R>> {
        let (_, b) = self.split(z)?;
        bott_samelson(self.n(), &self.q2, b)
    }

    /// `p(z) = m_1(z_1) w̃ m_2(z_2)` with `w = w_{0,P} w_0`.
    pub fn p_map<R: Ring>(&self, z: &[R]) -> Result<Matrix<R>> {
        self.m1(z)?.mul(&perm_rep(&self.middle))?.mul(&self.m2(z)?)
    }

    /// `p(0)`: a diagonal sign matrix, returned as its diagonal.
    pub fn center_signs<R: Ring>(&self) -> Vec<R> {
        let d = perm_rep::<R>(&self.w1)
            .mul(&perm_rep(&self.middle))
            .and_then(|m| m.mul(&perm_rep(&self.w2)))
            .expect("square");
        (0..self.n()).map(|i| d.get(i, i).clone()).collect()
    }

    /// `φ(z) = u_-(z) m_1(z_1)`, where `u_-` factors `p(z) p(0)^{-1}`.
    pub fn phi<R: Ring>(&self, z: &[R]) -> Result<Matrix<R>> {
        let pn = self.p_map(z)?.scale_columns(&self.center_signs());
        let f = u_minus_factorization(&pn, &self.w1, &self.parabolic)?;
        f.u_minus.mul(&self.m1(z)?)
    }

    /// `ψ(z) = m_1(z_1) t^λ w̃ m_2(z_2)`.
    pub fn psi<R: Ring>(&self, z: &[R]) -> Result<Matrix<LaurentPoly<R>>> {
        to_laurent(&self.m1(z)?)
            .mul(&t_lambda(&self.lambda))?
            .mul(&to_laurent(&perm_rep(&self.middle)))?
            .mul(&to_laurent(&self.m2(z)?))
    }

    /// `ψ(z)^{-1}` as the reversed product of factor inverses.
    pub fn psi_inverse<R: Ring>(&self, z: &[R]) -> Result<Matrix<LaurentPoly<R>>> {
        let (a, b) = self.split(z)?;
        to_laurent(&bott_samelson_inverse(self.n(), &self.q2, b)?)
            .mul(&to_laurent(&perm_rep_inverse(&self.middle)))?
            .mul(&t_lambda(&self.lambda.neg()))?
            .mul(&to_laurent(&bott_samelson_inverse(self.n(), &self.q1, a)?))
    }

    /// Chart variables `z_1, ..., z_N` as polynomials.
    pub fn symbolic_vars(&self) -> Vec<MultiPoly> {
        (0..self.num_vars()).map(MultiPoly::var).collect()
    }

    pub fn phi_symbolic(&self) -> Result<Matrix<MultiPoly>> {
        self.phi(&self.symbolic_vars())
    }

    pub fn psi_symbolic(&self) -> Result<Matrix<LaurentPoly<MultiPoly>>> {
        self.psi(&self.symbolic_vars())
    }

    pub fn psi_inverse_symbolic(&self) -> Result<Matrix<LaurentPoly<MultiPoly>>> {
        self.psi_inverse(&self.symbolic_vars())
    }
}

/// Evaluates a polynomial matrix at a point in any ring.
pub fn eval_matrix<R: Ring>(m: &Matrix<MultiPoly>, z: &[R]) -> Matrix<R> {
    m.map(|p| p.eval(z))
}

/// Evaluates a Laurent polynomial matrix coefficientwise.
pub fn eval_laurent_matrix<R: Ring>(m: &Matrix<LaurentPoly<MultiPoly>>, z: &[R]) -> Matrix<LaurentPoly<R>> {
    m.map(|e| e.map(|p| p.eval(z)))
}
