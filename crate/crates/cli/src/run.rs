//! The four subcommands.

use std::fmt;
use std::thread;

use klatlas_core::affine::{bottom_label, kl_label, min_double_coset_check, verify_atlas_poset, DOUBLE_COSET_MAX_RANK};
use klatlas_core::charts::Chart;
use klatlas_core::divisors::{verify_divisor_matching, DivisorConfig, DivisorRecord};
use klatlas_core::loop_group::{check_lemma2, check_lemma3, check_lemma4};
use klatlas_core::report::CheckReport;
use klatlas_core::sampling::{derive_seed, Sampler};
use klatlas_core::strata::verify_theorem;
use klatlas_core::weyl::{check_lemma1, qp_enumerate};
use serde::Serialize;

use crate::config::RunConfig;
use crate::report::{input_hash, ChartSection, Enumeration, MatchRow, QpRow, RunReport, Summary, SCHEMA_VERSION, TOOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Enumerate,
    VerifyLemmas,
    VerifyTheorem,
    Divisors,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Enumerate => "enumerate",
            Command::VerifyLemmas => "verify-lemmas",
            Command::VerifyTheorem => "verify-theorem",
            Command::Divisors => "divisors",
        }
    }
}

/// A library error during a run; never a configuration problem.
#[derive(Debug)]
pub struct RunError(pub String);

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "internal error: {}", self.0)
    }
}

impl std::error::Error for RunError {}

impl From<klatlas_core::Error> for RunError {
    fn from(e: klatlas_core::Error) -> Self {
        RunError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, RunError>;

/// Maps `f` over `items` on scoped threads; output order matches input.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(usize, &T) -> R + Sync) -> Vec<R> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    let mut slots: Vec<Option<R>> = (0..items.len()).map(|_| None).collect();
    let chunk = items.len().div_ceil(workers).max(1);
    thread::scope(|s| {
        for (ci, (its, outs)) in items.chunks(chunk).zip(slots.chunks_mut(chunk)).enumerate() {
            let f = &f;
            s.spawn(move || {
                for (k, (it, out)) in its.iter().zip(outs.iter_mut()).enumerate() {
                    *out = Some(f(ci * chunk + k, it));
                }
            });
        }
    });
    slots.into_iter().map(|r| r.expect("worker finished")).collect()
}

fn section(chart: &Chart, seed: u64) -> ChartSection {
    ChartSection {
        chart: chart.descriptor(),
        seed,
        checks: Vec::new(),
        samples: Vec::new(),
        divisors: Vec::new(),
        matching: Vec::new(),
    }
}

pub fn run(command: Command, config: &RunConfig) -> Result<RunReport> {
    let charts = config.charts();
    let seeds: Vec<u64> = (0..charts.len()).map(|i| derive_seed(config.seed, i as u64)).collect();
    let mut report = RunReport {
        schema_version: SCHEMA_VERSION,
        tool: TOOL,
        command: command.name().to_string(),
        input_hash: input_hash(command.name(), config),
        config: config.clone(),
        checks: Vec::new(),
        enumeration: None,
        charts: Vec::new(),
        summary: Summary { seeds: seeds.clone(), ..Summary::default() },
    };
    match command {
        Command::Enumerate => enumerate(config, &charts, &seeds, &mut report),
        Command::VerifyLemmas => lemmas(config, &charts, &seeds, &mut report)?,
        Command::VerifyTheorem => theorem(config, &charts, &seeds, &mut report)?,
        Command::Divisors => divisors(config, &charts, &seeds, &mut report)?,
    }
    report.tally();
    Ok(report)
}

fn enumerate(config: &RunConfig, charts: &[Chart], seeds: &[u64], report: &mut RunReport) {
    let par = config.parabolic();
    let l = config.coweight();
    report.enumeration = Some(Enumeration {
        dimension: par.dimension(),
        min_coset_reps: par.min_coset_reps().iter().map(|w| w.to_string()).collect(),
        qp: qp_enumerate(&par)
            .iter()
            .map(|q| QpRow { label: q.to_string(), dim: q.dim(), kl_label: kl_label(q, &l).to_string() })
            .collect(),
        bottom_label: bottom_label(&l, &par).to_string(),
    });
    report.charts = charts.iter().zip(seeds).map(|(c, &s)| section(c, s)).collect();
}

fn lemmas(config: &RunConfig, charts: &[Chart], seeds: &[u64], report: &mut RunReport) -> Result<()> {
    let par = config.parabolic();
    report.checks.push(check_lemma1(&par));
    report.checks.push(check_lemma4(&config.coweight(), &par)?);
    let sections = par_map(charts, |i, chart| -> Result<ChartSection> {
        let mut sec = section(chart, seeds[i]);
        let mut sampler = Sampler::new(seeds[i]);
        sec.checks.push(check_lemma2(&chart.w1, &par, &mut sampler, config.samples)?);
        sec.checks.push(check_lemma3(&chart.w1, &chart.w2, &par, &mut sampler, config.samples)?);
        Ok(sec)
    });
    report.charts = sections.into_iter().collect::<Result<_>>()?;
    Ok(())
}

fn theorem(config: &RunConfig, charts: &[Chart], seeds: &[u64], report: &mut RunReport) -> Result<()> {
    let par = config.parabolic();
    let l = config.coweight();
    let poset = verify_atlas_poset(&par, &l)?;
    for mut c in [poset.injective, poset.order_reversing, poset.rank_compatible, poset.image] {
        c.name = format!("atlas_poset.{}", c.name);
        report.checks.push(c);
    }
    if config.n <= DOUBLE_COSET_MAX_RANK {
        report.checks.push(min_double_coset_check(&l, &par)?.check);
    }
    let sections = par_map(charts, |i, chart| -> Result<ChartSection> {
        let mut sec = section(chart, seeds[i]);
        let mut sampler = Sampler::new(seeds[i]);
        let rep = verify_theorem(chart, &mut sampler, config.samples)?;
        let mut closed = CheckReport::new("theorem.closed_reading");
        for a in &rep.samples {
            closed.assert(a.closed_match, || format!("z={:?}: lower cell {} not above {}", a.z, a.affine_cell_lower, a.expected_lower));
        }
        sec.checks.push(closed);
        sec.samples = rep.samples;
        Ok(sec)
    });
    report.charts = sections.into_iter().collect::<Result<_>>()?;
    Ok(())
}

fn equation_string(r: &DivisorRecord) -> Option<String> {
    r.equation.as_ref().map(|e| e.to_string())
}

fn divisors(config: &RunConfig, charts: &[Chart], seeds: &[u64], report: &mut RunReport) -> Result<()> {
    let sections = par_map(charts, |i, chart| -> Result<ChartSection> {
        let mut sec = section(chart, seeds[i]);
        let cfg = DivisorConfig { degree_cap: config.degree_cap, seed: seeds[i], ..DivisorConfig::default() };
        let m = verify_divisor_matching(chart, &cfg)?;
        for p in &m.pairs {
            sec.divisors.push(p.gp.clone());
            if let Some(a) = &p.affine {
                sec.divisors.push(a.clone());
            }
            sec.matching.push(MatchRow {
                gp_label: p.gp.label.clone(),
                gp_equation: equation_string(&p.gp),
                affine_label: Some(p.affine_label.clone()),
                affine_equation: p.affine.as_ref().and_then(equation_string),
                equal_up_to_unit: p.equal_up_to_unit,
                meets_chart: true,
                capped: p.gp.evidence.capped || p.affine.as_ref().is_some_and(|a| a.evidence.capped),
            });
        }
        for r in &m.not_meeting {
            sec.divisors.push(r.clone());
            sec.matching.push(MatchRow {
                gp_label: r.label.clone(),
                gp_equation: None,
                affine_label: None,
                affine_equation: None,
                equal_up_to_unit: false,
                meets_chart: false,
                capped: r.evidence.capped,
            });
        }
        let mut unpaired = CheckReport::new("affine_divisors_paired");
        for y in &m.unpaired_affine {
            unpaired.assert(false, || format!("affine divisor {y} has no G/P partner"));
        }
        if m.unpaired_affine.is_empty() {
            unpaired.assert(true, String::new);
        }
        sec.checks.push(unpaired);
        Ok(sec)
    });
    report.charts = sections.into_iter().collect::<Result<_>>()?;
    Ok(())
}

/// Process exit status for a finished run.
pub fn exit_code(report: &RunReport) -> i32 {
    let s = &report.summary;
    if s.fail == 0 {
        0
    } else if s.fail == s.extraction_capped {
        EXIT_EXTRACTION_CAP
    } else {
        EXIT_CHECK_FAILURE
    }
}

pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_CHECK_FAILURE: i32 = 3;
pub const EXIT_EXTRACTION_CAP: i32 = 4;
