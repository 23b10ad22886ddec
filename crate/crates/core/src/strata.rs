//! Stratum detection on both sides of a chart and the pointwise comparison.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use serde::Serialize;

use crate::affine::{affine_bruhat_leq, kl_label, AffinePerm};
use crate::algebra::matrix::PivotLog;
use crate::algebra::{Field, Matrix, Rational, Ring};
use crate::cells::{iwahori_cell, iwahori_cell_opposite, opposite_finite_cell};
use crate::charts::Chart;
use crate::error::{Error, Result};
use crate::report::rationals_as_strings;
use crate::sampling::Sampler;
use crate::weyl::{Parabolic, Perm, QPLabel};

/// `g' = g b` with `b` unipotent upper triangular and `g' = b_1 w'` for a
/// permutation `w'`. Returns `(g', w')`.
pub fn column_echelon<F: Field, L: PivotLog<F>>(g: &Matrix<F>, log: &mut L) -> Result<(Matrix<F>, Perm)> {
    let n = g.rows();
    if !g.is_square() {
        return Err(Error::SizeMismatch { expected: (n, n), found: (n, g.cols()) });
    }
    let mut a = g.clone();
    let mut pivots = Vec::with_capacity(n);
    for j in 0..n {
        let r = (0..n).rev().find(|&r| !a.get(r, j).is_zero()).ok_or(Error::Singular)?;
        let piv = a.get(r, j).clone();
        log.record(&piv);
        let inv = piv.inv();
        for k in j + 1..n {
            let f = a.get(r, k).mul(&inv);
            if f.is_zero() {
                continue;
            }
            for i in 0..n {
                let v = a.get(i, k).sub(&f.mul(a.get(i, j)));
                a.set(i, k, v);
            }
        }
        pivots.push(r + 1);
    }
    let w = Perm::from_one_line(pivots).map_err(|_| Error::Singular)?;
    Ok((a, w))
}

/// The lift of `gP` into `BwB/B` with `w ∈ W^P`, together with `w`.
pub fn schubert_lift<F: Field, L: PivotLog<F>>(g: &Matrix<F>, par: &Parabolic, log: &mut L) -> Result<(Matrix<F>, Perm)> {
    if g.rows() != par.rank() {
        return Err(Error::RankMismatch { left: g.rows(), right: par.rank() });
    }
    let (ge, wp) = column_echelon(g, log)?;
    let (w, u) = par.coset_factor(&wp);
    // h e_j = g' e_{u^{-1}(j)}, so h = b_1 w and h ∈ gP
    let ui = u.inverse();
    let n = g.rows();
    let h = Matrix::from_fn(n, n, |i, j| ge.get(i, ui.at(j + 1) - 1).clone());
    Ok((h, w))
}

/// The `(w, v) ∈ Q_P` with `gP` in the open projected Richardson `Π̊^w_v`.
pub fn projected_stratum<F: Field, L: PivotLog<F>>(g: &Matrix<F>, par: &Parabolic, log: &mut L) -> Result<QPLabel> {
    let (h, w) = schubert_lift(g, par, log)?;
    let v = opposite_finite_cell(&h, log)?;
    QPLabel::new(w, v, par)
}

/// Both stratum readings of one chart point.
#[derive(Clone, Debug, Serialize)]
pub struct StratumAssignment {
    #[serde(serialize_with = "rationals_as_strings")]
    pub z: Vec<Rational>,
    pub gp_stratum: QPLabel,
    pub affine_cell_upper: AffinePerm,
    pub affine_cell_lower: AffinePerm,
    /// `v t^λ w^{-1}` for the G/P stratum.
    pub expected_lower: AffinePerm,
    /// `w_1 t^λ w_1^{-1}`.
    pub expected_upper: AffinePerm,
    /// Cell equality on both sides.
    #[serde(rename = "match")]
    pub matched: bool,
    /// Closure reading: upper cell equal and lower cell `>= v t^λ w^{-1}`.
    pub closed_match: bool,
}

pub fn verify_theorem_at(chart: &Chart, z: &[Rational]) -> Result<StratumAssignment> {
    let phi = chart.phi(z)?;
    let gp_stratum = projected_stratum(&phi, &chart.parabolic, &mut ())?;
    let psi = chart.psi(z)?;
    let psi_inv = chart.psi_inverse(z)?;
    let upper = iwahori_cell_opposite(&psi, &psi_inv, &mut ())?;
    let lower = iwahori_cell(&psi, &psi_inv, &mut ())?;
    let expected_lower = kl_label(&gp_stratum, &chart.lambda);
    let expected_upper = chart.top_label();
    let matched = lower == expected_lower && upper == expected_upper;
    let closed_match = upper == expected_upper && affine_bruhat_leq(&expected_lower, &lower);
    Ok(StratumAssignment {
        z: z.to_vec(),
        gp_stratum,
        affine_cell_upper: upper,
        affine_cell_lower: lower,
        expected_lower,
        expected_upper,
        matched,
        closed_match,
    })
}

/// Sample points for one chart: the center first, then alternately a point
/// with nonzero coordinates and one with roughly half of them zeroed.
pub fn theorem_samples(chart: &Chart, sampler: &mut Sampler, count: usize) -> Vec<Vec<Rational>> {
    let k = chart.num_vars();
    let mut out = Vec::with_capacity(count);
    if count > 0 {
        out.push(alloc::vec![Rational::zero(); k]);
    }
    for i in 1..count {
        if i % 2 == 1 {
            out.push(sampler.point(k));
        } else {
            out.push(sampler.point_with_zeros(k, 1, 2));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub samples: Vec<StratumAssignment>,
    pub pass: usize,
    pub fail: usize,
    pub closed_pass: usize,
    /// How often each G/P stratum was hit, keyed by its display form.
    pub strata_hit: BTreeMap<alloc::string::String, usize>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.fail == 0 && !self.samples.is_empty()
    }
}

pub fn verify_theorem(chart: &Chart, sampler: &mut Sampler, count: usize) -> Result<TheoremReport> {
    let mut rep = TheoremReport { samples: Vec::new(), pass: 0, fail: 0, closed_pass: 0, strata_hit: BTreeMap::new() };
    for z in theorem_samples(chart, sampler, count) {
        let a = verify_theorem_at(chart, &z)?;
        if a.matched {
            rep.pass += 1;
        } else {
            rep.fail += 1;
        }
        if a.closed_match {
            rep.closed_pass += 1;
        }
        *rep.strata_hit.entry(format!("{}", a.gp_stratum)).or_insert(0) += 1;
        rep.samples.push(a);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::Coweight;
    use crate::algebra::{int, rat};
    use crate::cells::finite_cell;
    use crate::charts::{all_charts, make_chart};
    use crate::loop_group::perm_rep;
    use crate::weyl::qp_leq;
    use alloc::string::ToString;
    use alloc::vec;

    fn p(s: &str) -> Perm {
        Perm::parse(s).unwrap()
    }

    fn worked_chart() -> Chart {
        let par = Parabolic::new(4, &[2]).unwrap();
        make_chart(&p("4123"), &par, &Coweight::new(vec![1, 0, 0, -1]).unwrap()).unwrap()
    }

    #[test]
    fn centers_are_minimal_strata() {
        for j in [vec![], vec![1], vec![2], vec![1, 3]] {
            let par = Parabolic::new(4, &j).unwrap();
            for w1 in par.min_coset_reps() {
                let g = perm_rep::<Rational>(&w1);
                let q = projected_stratum(&g, &par, &mut ()).unwrap();
                assert_eq!((q.w.clone(), q.v.clone()), (w1.clone(), w1.clone()));
            }
        }
    }

    #[test]
    fn lift_stays_in_coset_and_cell() {
        let par = Parabolic::new(4, &[1, 3]).unwrap();
        let mut s = Sampler::new(3);
        for _ in 0..40 {
            let g = Matrix::from_fn(4, 4, |_, _| if s.coin(1, 3) { int(0) } else { s.value() });
            if g.rank() < 4 {
                continue;
            }
            let (h, w) = schubert_lift(&g, &par, &mut ()).unwrap();
            assert!(par.is_min_rep(&w));
            assert_eq!(finite_cell(&h, &mut ()).unwrap(), w);
            // g^{-1} h ∈ P: zero below the diagonal blocks
            let q = g.inverse().unwrap().mul(&h).unwrap();
            for (r, c, e) in q.entries() {
                if par.block_of(r + 1) > par.block_of(c + 1) {
                    assert!(e.is_zero());
                }
            }
        }
    }

    #[test]
    fn generic_point_is_open_stratum() {
        let chart = worked_chart();
        let z = vec![rat(2, 1), rat(-1, 3), rat(3, 2), rat(1, 2), rat(-2, 1)];
        let a = verify_theorem_at(&chart, &z).unwrap();
        assert_eq!(a.gp_stratum.w, chart.parabolic.top());
        assert!(a.gp_stratum.v.is_identity());
        assert!(a.matched);
        assert_eq!(a.affine_cell_lower.to_string(), "[0,2,3,5]");
    }

    #[test]
    fn z1_zero_lands_on_a_divisor() {
        let chart = worked_chart();
        let z = vec![rat(0, 1), int(1), int(2), int(1), int(1)];
        let a = verify_theorem_at(&chart, &z).unwrap();
        assert_eq!(a.gp_stratum.dim(), 4);
        assert!(a.matched);
        // z2 z5 - z3 z4 also vanishes here: codimension two
        let z = vec![rat(0, 1), int(1), int(1), int(1), int(1)];
        let a = verify_theorem_at(&chart, &z).unwrap();
        assert_eq!(a.gp_stratum.dim(), 3);
        assert!(a.matched);
    }

    #[test]
    fn specializing_a_coordinate_never_moves_up() {
        let par = Parabolic::new(4, &[2]).unwrap();
        let l = Coweight::new(vec![1, 0, 0, -1]).unwrap();
        let mut s = Sampler::new(11);
        for chart in all_charts(&par, &l).unwrap() {
            for _ in 0..4 {
                let z = s.point(chart.num_vars());
                let before = projected_stratum(&chart.phi(&z).unwrap(), &par, &mut ()).unwrap();
                for k in 0..z.len() {
                    let mut y = z.clone();
                    y[k] = rat(0, 1);
                    let after = projected_stratum(&chart.phi(&y).unwrap(), &par, &mut ()).unwrap();
                    assert!(qp_leq(&after, &before, &par), "{after} not below {before}");
                }
            }
        }
    }

    #[test]
    fn worked_configuration_all_charts_match() {
        let par = Parabolic::new(4, &[2]).unwrap();
        let l = Coweight::new(vec![1, 0, 0, -1]).unwrap();
        let mut s = Sampler::new(7);
        for chart in all_charts(&par, &l).unwrap() {
            let rep = verify_theorem(&chart, &mut s, 6).unwrap();
            assert!(rep.passed(), "{:?}", rep.samples.iter().find(|a| !a.matched));
            assert_eq!(rep.closed_pass, rep.pass);
        }
    }
}
