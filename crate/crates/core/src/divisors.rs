//! Divisor equations on a chart, from both sides.
//!
//! G/P side: codimension-one elements of `Q_P`, equations found by sampling
//! and interpolation against the stratum oracle. Affine side: covers of the
//! open-stratum label, equations from the corner-minor rule on `ψ(z)^{-1}`,
//! then cross-checked by the same interpolation against the Iwahori oracle.
//!
//! Points on a divisor are found along seeded lines `z(s) = a + s·b`: the
//! oracle runs once over `Q(s)` with every pivot logged, and the rational
//! zeros and poles of those pivots are the only places where the stratum
//! can change along the line.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::Serialize;

use crate::affine::{affine_bruhat_leq, bottom_label, kl_label, lower_interval, AffinePerm};
use crate::algebra::{Matrix, Monomial, MultiPoly, RatFunc, Rational, Ring, UniPoly};
use crate::cells::{iwahori_cell, lower_block, search_range, Periodic};
use crate::charts::Chart;
use crate::error::{Error, Result};
use crate::sampling::Sampler;
use crate::strata::projected_stratum;
use crate::weyl::{qp_enumerate, qp_leq, QPLabel};

/// Bounds for the interpolation search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorConfig {
    /// Largest total degree tried when fitting.
    pub degree_cap: u32,
    /// Lines harvested per chart and side before giving up.
    pub max_lines: usize,
    pub seed: u64,
}

impl Default for DivisorConfig {
    fn default() -> Self {
        DivisorConfig { degree_cap: 4, max_lines: 400, seed: 7 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    #[serde(rename = "G/P")]
    GP,
    #[serde(rename = "affine")]
    Affine,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DivisorRecord {
    pub side: Side,
    pub label: String,
    /// Whether the divisor's closure contains the chart center.
    pub meets: bool,
    pub equation: Option<MultiPoly>,
    pub validated: bool,
    /// Corner-minor equation (affine side only).
    pub corner_minor: Option<MultiPoly>,
    pub evidence: Evidence,
}

/// What the interpolation saw.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub lines: usize,
    pub points_on: usize,
    pub points_off: usize,
    pub degree: Option<u32>,
    /// The degree cap was reached without a fit.
    pub capped: bool,
    pub note: Option<String>,
}

/// Codimension-one elements of `Q_P`, in listing order.
pub fn gp_divisors(chart: &Chart) -> Vec<QPLabel> {
    let dim = chart.parabolic.dimension();
    qp_enumerate(&chart.parabolic).into_iter().filter(|q| q.dim() + 1 == dim).collect()
}

/// `Π_d` meets the chart iff `(w_1, w_1) ⪯ d`.
pub fn gp_meets(chart: &Chart, d: &QPLabel) -> bool {
    let center = QPLabel { w: chart.w1.clone(), v: chart.w1.clone() };
    qp_leq(&center, d, &chart.parabolic)
}

/// Covers of the open-stratum label inside `[bottom, w_1 t^λ w_1^{-1}]`.
pub fn affine_divisor_labels(chart: &Chart) -> Vec<AffinePerm> {
    let bottom = bottom_label(&chart.lambda, &chart.parabolic);
    let len = bottom.length() + 1;
    lower_interval(&chart.top_label())
        .into_iter()
        .filter(|y| y.length() == len && affine_bruhat_leq(&bottom, y))
        .collect()
}

/// A harvested point with the line it came from and its oracle class.
#[derive(Clone, Debug)]
struct Tagged<C> {
    z: Vec<Rational>,
    line: usize,
    class: C,
}

/// Points found along seeded lines, classified by one side's oracle.
struct Pool<C> {
    k: usize,
    sampler: Sampler,
    lines: usize,
    on_lines: Vec<Tagged<C>>,
    anchors: Vec<Tagged<C>>,
    seen: BTreeSet<Vec<Rational>>,
}

const TRIAL_LIMIT: u64 = 10_000;
const MAX_CANDIDATES: usize = 4096;

impl<C: Clone> Pool<C> {
    fn new(k: usize, seed: u64) -> Self {
        Pool { k, sampler: Sampler::new(seed), lines: 0, on_lines: Vec::new(), anchors: Vec::new(), seen: BTreeSet::new() }
    }

    /// Harvests one more line. `symbolic` runs the oracle over `Q(s)` and
    /// returns the logged pivots; `classify` runs it at a rational point.
    fn grow<S, K>(&mut self, symbolic: &S, classify: &K) -> Result<()>
    where
        S: Fn(&[RatFunc]) -> Result<Vec<RatFunc>>,
        K: Fn(&[Rational]) -> Result<C>,
    {
        let i = self.lines;
        self.lines += 1;
        let a = self.sampler.point(self.k);
        // three axis directions for every random one
        let b: Vec<Rational> = if i % 4 == 3 {
            self.sampler.point(self.k)
        } else {
            let j = (i - i / 4) % self.k;
            (0..self.k).map(|m| if m == j { Rational::one() } else { Rational::zero() }).collect()
        };
        let line: Vec<RatFunc> =
            a.iter().zip(&b).map(|(x, y)| RatFunc::from_poly(UniPoly::linear(x.clone(), y.clone()))).collect();
        let pivots = symbolic(&line)?;
        let mut cands = BTreeSet::new();
        for p in &pivots {
            for u in [p.numer(), p.denom()] {
                if let Some(rs) = u.rational_roots(TRIAL_LIMIT, MAX_CANDIDATES) {
                    cands.extend(rs);
                }
            }
        }
        if self.seen.insert(a.clone()) {
            let class = classify(&a)?;
            self.anchors.push(Tagged { z: a.clone(), line: i, class });
        }
        for s in cands {
            let z: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| x + &s * y).collect();
            if !self.seen.insert(z.clone()) {
                continue;
            }
            let class = classify(&z)?;
            self.on_lines.push(Tagged { z, line: i, class });
        }
        Ok(())
    }
}

/// Result of fitting one divisor.
#[derive(Clone, Debug)]
struct Fit {
    equation: Option<MultiPoly>,
    validated: bool,
    evidence: Evidence,
}

fn is_train(line: usize) -> bool {
    line % 3 != 2
}

/// Fits the minimal-degree polynomial vanishing on the points `in_closure`
/// accepts, then checks `f(p) = 0 ⟺ in_closure(p)` on held-out lines and on
/// every other harvested point.
fn interpolate<C: Clone, S, K, I>(pool: &mut Pool<C>, cfg: &DivisorConfig, symbolic: &S, classify: &K, in_closure: I) -> Result<Fit>
where
    S: Fn(&[RatFunc]) -> Result<Vec<RatFunc>>,
    K: Fn(&[Rational]) -> Result<C>,
    I: Fn(&C) -> bool,
{
    let k = pool.k;
    let count_on = |pool: &Pool<C>, train: bool| {
        pool.on_lines.iter().filter(|t| is_train(t.line) == train && in_closure(&t.class)).count()
    };
    let mut ev = Evidence::default();
    for d in 1..=cfg.degree_cap {
        let monos = Monomial::up_to_degree(k, d);
        let need = monos.len() + 3;
        while (count_on(pool, true) < need || count_on(pool, false) < 3) && pool.lines < cfg.max_lines {
            pool.grow(symbolic, classify)?;
            // nothing at all after a fair number of lines: assume empty
            if pool.lines >= 40 && count_on(pool, true) + count_on(pool, false) == 0 {
                break;
            }
        }
        ev.lines = pool.lines;
        let train: Vec<&Tagged<C>> =
            pool.on_lines.iter().filter(|t| is_train(t.line) && in_closure(&t.class)).collect();
        ev.points_on = train.len() + count_on(pool, false);
        ev.points_off = pool.on_lines.len() + pool.anchors.len() - ev.points_on;
        if ev.points_on == 0 {
            ev.note = Some("no harvested point lies on the divisor".into());
            return Ok(Fit { equation: None, validated: false, evidence: ev });
        }
        if train.len() + 1 < monos.len() {
            ev.note = Some(format!("too few points for degree {d}"));
            return Ok(Fit { equation: None, validated: false, evidence: ev });
        }
        let rows: Vec<Vec<Rational>> = train
            .iter()
            .map(|t| monos.iter().map(|m| MultiPoly::monomial(m.clone(), Rational::one()).eval(&t.z)).collect())
            .collect();
        let null = Matrix::from_rows(rows)?.nullspace();
        match null.len() {
            0 => continue,
            1 => {
                let f = MultiPoly::from_terms(monos.iter().cloned().zip(null[0].iter().cloned())).normalized();
                ev.degree = f.total_degree();
                let all = pool.on_lines.iter().chain(pool.anchors.iter());
                let mut bad = 0usize;
                for t in all {
                    let vanishes = f.eval(&t.z).is_zero();
                    if vanishes != in_closure(&t.class) {
                        bad += 1;
                    }
                }
                if bad > 0 {
                    ev.note = Some(format!("{bad} points disagree with the fitted equation"));
                }
                return Ok(Fit { equation: Some(f), validated: bad == 0, evidence: ev });
            }
            m => {
                if train.len() < need {
                    ev.note = Some(format!("too few points for degree {d}"));
                } else {
                    ev.note = Some(format!("{m}-dimensional family at degree {d}: locus is not a hypersurface"));
                }
                return Ok(Fit { equation: None, validated: false, evidence: ev });
            }
        }
    }
    ev.capped = true;
    ev.note = Some(format!("degree cap {} reached", cfg.degree_cap));
    Ok(Fit { equation: None, validated: false, evidence: ev })
}

fn gp_symbolic(chart: &Chart) -> impl Fn(&[RatFunc]) -> Result<Vec<RatFunc>> + '_ {
    move |z: &[RatFunc]| {
        let mut log = Vec::new();
        let phi = chart.phi(z)?;
        projected_stratum(&phi, &chart.parabolic, &mut log)?;
        Ok(log)
    }
}

fn gp_classify(chart: &Chart) -> impl Fn(&[Rational]) -> Result<QPLabel> + '_ {
    move |z: &[Rational]| projected_stratum(&chart.phi(z)?, &chart.parabolic, &mut ())
}

fn affine_symbolic(chart: &Chart) -> impl Fn(&[RatFunc]) -> Result<Vec<RatFunc>> + '_ {
    move |z: &[RatFunc]| {
        let mut log = Vec::new();
        let psi = chart.psi(z)?;
        let inv = chart.psi_inverse(z)?;
        iwahori_cell(&psi, &inv, &mut log)?;
        Ok(log)
    }
}

fn affine_classify(chart: &Chart) -> impl Fn(&[Rational]) -> Result<AffinePerm> + '_ {
    move |z: &[Rational]| iwahori_cell(&chart.psi(z)?, &chart.psi_inverse(z)?, &mut ())
}

/// Interpolated equations of every G/P divisor on the chart.
pub fn gp_divisor_records(chart: &Chart, cfg: &DivisorConfig) -> Result<Vec<DivisorRecord>> {
    let mut pool = Pool::new(chart.num_vars(), cfg.seed);
    let (sym, cls) = (gp_symbolic(chart), gp_classify(chart));
    let par = &chart.parabolic;
    let mut out = Vec::new();
    for d in gp_divisors(chart) {
        let meets = gp_meets(chart, &d);
        let fit = interpolate(&mut pool, cfg, &sym, &cls, |q: &QPLabel| qp_leq(q, &d, par))?;
        out.push(record(Side::GP, d.to_string(), meets, fit, None));
    }
    Ok(out)
}

fn record(side: Side, label: String, meets: bool, fit: Fit, corner: Option<MultiPoly>) -> DivisorRecord {
    // a divisor that misses the chart is confirmed by finding no points on it
    let validated = if meets {
        fit.validated && fit.equation.as_ref().is_some_and(|f| !f.is_constant() && f.constant_term().is_zero())
    } else {
        fit.equation.is_none() && fit.evidence.points_on == 0
    };
    let agrees = match (&corner, &fit.equation) {
        (Some(c), Some(f)) => c.associate(f),
        (None, None) => true,
        (Some(c), None) => !meets && c.is_constant(),
        _ => false,
    };
    let validated = validated && (side == Side::GP || agrees);
    DivisorRecord {
        side,
        label,
        meets,
        equation: fit.equation,
        validated,
        corner_minor: corner,
        evidence: fit.evidence,
    }
}

/// Equation of one G/P divisor.
pub fn divisor_equation_gp(chart: &Chart, d: &QPLabel, cfg: &DivisorConfig) -> Result<DivisorRecord> {
    if d.dim() + 1 != chart.parabolic.dimension() {
        return Err(Error::NotADivisor(d.to_string()));
    }
    let mut pool = Pool::new(chart.num_vars(), cfg.seed);
    let par = &chart.parabolic;
    let fit = interpolate(&mut pool, cfg, &gp_symbolic(chart), &gp_classify(chart), |q: &QPLabel| qp_leq(q, d, par))?;
    Ok(record(Side::GP, d.to_string(), gp_meets(chart, d), fit, None))
}

/// `#{c ∈ (-∞, b] : x(c) >= a}`.
fn lower_count(x: &AffinePerm, a: i64, b: i64) -> i64 {
    let n = x.rank() as i64;
    // x(c) >= a needs c > a - n·(span of the window)
    let w = x.window();
    let spread = w.iter().map(|v| (v - 1).div_euclid(n)).max().unwrap() - w.iter().map(|v| (v - 1).div_euclid(n)).min().unwrap();
    let start = a.min(b) - n * (spread + 2) - n;
    (start..=b).filter(|&c| x.eval(c) >= a).count() as i64
}

/// Row- and column-reduces with constant pivots, returning the remaining
/// block and how many pivots were used. Minors of size `p + m` of the input
/// generate the same ideal as minors of size `m` of the remainder.
fn reduce_constant_pivots(mut b: Matrix<MultiPoly>) -> (Matrix<MultiPoly>, usize) {
    let mut used = 0;
    loop {
        let pos = b.entries().find(|(_, _, e)| !e.is_zero() && e.is_constant()).map(|(r, c, _)| (r, c));
        let Some((pr, pc)) = pos else {
            return (b, used);
        };
        let inv = b.get(pr, pc).constant_term().recip();
        let rows: Vec<usize> = (0..b.rows()).filter(|&r| r != pr).collect();
        let cols: Vec<usize> = (0..b.cols()).filter(|&c| c != pc).collect();
        let next = Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            let (r, c) = (rows[i], cols[j]);
            let f = b.get(r, pc).scale(&inv);
            b.get(r, c).sub(&f.mul(b.get(pr, c)))
        });
        b = next;
        used += 1;
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Most minors the corner rule will expand for one corner.
const MINOR_BUDGET: usize = 20_000;

/// gcd of the `m × m` minors of `s`; zero when there are none.
fn minors_gcd(s: &Matrix<MultiPoly>, m: usize) -> Result<MultiPoly> {
    if m > s.rows() || m > s.cols() {
        return Ok(MultiPoly::zero());
    }
    let rs = combinations(s.rows(), m);
    let cs = combinations(s.cols(), m);
    if rs.len().saturating_mul(cs.len()) > MINOR_BUDGET {
        return Err(Error::Precondition(format!(
            "corner block {}x{} needs {} minors of size {m}",
            s.rows(),
            s.cols(),
            rs.len() * cs.len()
        )));
    }
    let mut g = MultiPoly::zero();
    for r in &rs {
        for c in &cs {
            let minor = s.minor(r, c)?;
            g = g.gcd(&minor);
            if g.is_constant() && !g.is_zero() {
                return Ok(g);
            }
        }
    }
    Ok(g)
}

/// Corner-minor rule for `𝒳_y ∩ chart`. `ψ(z) ∈ closure(𝓘_- y 𝓘)` iff for
/// every corner `(a, c)` the block of `ψ(z)^{-1}` used by the lower-cell
/// detector has rank at most `width - #{c' <= c : y(c') >= a}`. Each corner
/// where `y` asks for more than the open label contributes the gcd of the
/// relevant minors; the equation is the squarefree part of the gcd over all
/// corners. Returns the constant `1` when the closure misses the chart.
pub fn corner_minor_equation(chart: &Chart, y: &AffinePerm) -> Result<MultiPoly> {
    let psi = Periodic::new(&chart.psi_symbolic()?);
    let inv = Periodic::new(&chart.psi_inverse_symbolic()?);
    let bottom = bottom_label(&chart.lambda, &chart.parabolic);
    let n = chart.n() as i64;
    let (lo, hi) = search_range(&psi, &inv);
    let mut eq = MultiPoly::zero();
    for c in 1..=n {
        for a in c + n * lo..=c + n * hi {
            let need = lower_count(y, a, c);
            let generic = lower_count(&bottom, a, c);
            if need <= generic {
                continue;
            }
            let (rows, cols) = lower_block(&psi, &inv, a, c);
            let width = (cols.end - cols.start).max(0);
            let generic_rank = width - generic;
            let allowed = width - need;
            let block = inv.block(rows, cols);
            let (s, used) = reduce_constant_pivots(block);
            let m = allowed + 1 - used as i64;
            if m <= 0 {
                return Ok(MultiPoly::one());
            }
            let g = minors_gcd(&s, m as usize)?;
            eq = eq.gcd(&g);
            if eq.is_constant() && !eq.is_zero() {
                return Ok(MultiPoly::one());
            }
            debug_assert!(generic_rank >= allowed);
        }
    }
    if eq.is_zero() {
        return Err(Error::NotADivisor(format!("{y}: no corner distinguishes it from the open label")));
    }
    Ok(eq.squarefree_part())
}

/// Equation of one affine divisor, corner-minor rule cross-checked by
/// interpolation against the Iwahori oracle.
pub fn divisor_equation_affine(chart: &Chart, y: &AffinePerm, cfg: &DivisorConfig) -> Result<DivisorRecord> {
    if !affine_divisor_labels(chart).contains(y) {
        return Err(Error::NotADivisor(y.to_string()));
    }
    let mut pool = Pool::new(chart.num_vars(), cfg.seed);
    affine_record(chart, y, cfg, &mut pool)
}

fn affine_record(chart: &Chart, y: &AffinePerm, cfg: &DivisorConfig, pool: &mut Pool<AffinePerm>) -> Result<DivisorRecord> {
    let corner = corner_minor_equation(chart, y)?;
    let fit = interpolate(pool, cfg, &affine_symbolic(chart), &affine_classify(chart), |x: &AffinePerm| {
        affine_bruhat_leq(y, x)
    })?;
    Ok(record(Side::Affine, y.to_string(), true, fit, Some(corner)))
}

/// Every affine divisor label of the chart with its record.
pub fn affine_divisor_records(chart: &Chart, cfg: &DivisorConfig) -> Result<Vec<DivisorRecord>> {
    let mut pool = Pool::new(chart.num_vars(), cfg.seed.wrapping_add(1));
    affine_divisor_labels(chart).iter().map(|y| affine_record(chart, y, cfg, &mut pool)).collect()
}

/// One row of the matching table.
#[derive(Clone, Debug, Serialize)]
pub struct DivisorPair {
    pub gp: DivisorRecord,
    pub affine_label: String,
    pub affine: Option<DivisorRecord>,
    pub equal_up_to_unit: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatchingReport {
    pub pairs: Vec<DivisorPair>,
    /// G/P divisors whose closure misses the chart.
    pub not_meeting: Vec<DivisorRecord>,
    /// Affine divisor labels with no G/P partner.
    pub unpaired_affine: Vec<String>,
    pub matched: usize,
    pub mismatched: usize,
}

impl MatchingReport {
    pub fn passed(&self) -> bool {
        self.mismatched == 0
            && self.unpaired_affine.is_empty()
            && self.not_meeting.iter().all(|r| r.validated)
            && self.pairs.iter().all(|p| p.gp.validated && p.affine.as_ref().is_some_and(|a| a.validated))
    }
}

/// Pairs every G/P divisor meeting the chart with `kl_label` of it and
/// compares equations up to a unit.
pub fn verify_divisor_matching(chart: &Chart, cfg: &DivisorConfig) -> Result<MatchingReport> {
    let gp = gp_divisor_records(chart, cfg)?;
    let labels = affine_divisor_labels(chart);
    let mut pool = Pool::new(chart.num_vars(), cfg.seed.wrapping_add(1));
    let mut rep = MatchingReport { pairs: Vec::new(), not_meeting: Vec::new(), unpaired_affine: Vec::new(), matched: 0, mismatched: 0 };
    let mut used = BTreeSet::new();
    for (d, g) in gp_divisors(chart).into_iter().zip(gp) {
        if !g.meets {
            rep.not_meeting.push(g);
            continue;
        }
        let y = kl_label(&d, &chart.lambda);
        let affine = if labels.contains(&y) {
            used.insert(y.clone());
            Some(affine_record(chart, &y, cfg, &mut pool)?)
        } else {
            None
        };
        let equal = match (&g.equation, affine.as_ref().and_then(|a| a.equation.as_ref())) {
            (Some(a), Some(b)) => a.associate(b),
            _ => false,
        };
        if equal {
            rep.matched += 1;
        } else {
            rep.mismatched += 1;
        }
        rep.pairs.push(DivisorPair { gp: g, affine_label: y.to_string(), affine, equal_up_to_unit: equal });
    }
    rep.unpaired_affine = labels.iter().filter(|y| !used.contains(*y)).map(|y| y.to_string()).collect();
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::Coweight;
    use crate::charts::make_chart;
    use crate::weyl::{Parabolic, Perm};
    use alloc::vec;

    fn worked_chart() -> Chart {
        let par = Parabolic::new(4, &[2]).unwrap();
        make_chart(&Perm::parse("4123").unwrap(), &par, &Coweight::new(vec![1, 0, 0, -1]).unwrap()).unwrap()
    }

    fn poly(s: &str) -> MultiPoly {
        MultiPoly::parse(s).unwrap()
    }

    #[test]
    fn worked_chart_has_five_gp_divisors_four_meeting() {
        let chart = worked_chart();
        let ds = gp_divisors(&chart);
        assert_eq!(ds.len(), 5);
        let missing: Vec<String> = ds.iter().filter(|d| !gp_meets(&chart, d)).map(|d| d.to_string()).collect();
        assert_eq!(missing, vec!["(3241, 1234)".to_string()]);
        assert_eq!(affine_divisor_labels(&chart).len(), 4);
    }

    #[test]
    fn corner_minors_on_worked_chart() {
        let chart = worked_chart();
        let mut eqs: Vec<String> = affine_divisor_labels(&chart)
            .iter()
            .map(|y| corner_minor_equation(&chart, y).unwrap().to_string())
            .collect();
        eqs.sort();
        let mut want: Vec<String> = ["z1", "z3", "z4", "-z3*z4 + z2*z5"].iter().map(|s| poly(s).normalized().to_string()).collect();
        want.sort();
        assert_eq!(eqs, want);
    }

    #[test]
    fn top_label_is_not_a_divisor() {
        let chart = worked_chart();
        let cfg = DivisorConfig::default();
        assert!(matches!(divisor_equation_affine(&chart, &chart.top_label(), &cfg), Err(Error::NotADivisor(_))));
    }
}
