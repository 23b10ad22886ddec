//! Report structure and JSON encoding.

use klatlas_core::charts::ChartDescriptor;
use klatlas_core::divisors::DivisorRecord;
use klatlas_core::report::CheckReport;
use klatlas_core::strata::StratumAssignment;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::RunConfig;

/// Bumped whenever a field is renamed or removed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

pub const TOOL: Tool = Tool { name: "klatlas", version: env!("CARGO_PKG_VERSION") };

#[derive(Clone, Debug, Serialize)]
pub struct QpRow {
    pub label: String,
    pub dim: usize,
    pub kl_label: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Enumeration {
    pub dimension: usize,
    pub min_coset_reps: Vec<String>,
    pub qp: Vec<QpRow>,
    pub bottom_label: String,
}

/// One row of the divisor matching table.
#[derive(Clone, Debug, Serialize)]
pub struct MatchRow {
    pub gp_label: String,
    pub gp_equation: Option<String>,
    pub affine_label: Option<String>,
    pub affine_equation: Option<String>,
    pub equal_up_to_unit: bool,
    pub meets_chart: bool,
    /// One side hit the interpolation degree cap.
    pub capped: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartSection {
    pub chart: ChartDescriptor,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
    pub samples: Vec<StratumAssignment>,
    pub divisors: Vec<DivisorRecord>,
    pub matching: Vec<MatchRow>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    /// Failures caused by the interpolation degree cap (included in `fail`).
    pub extraction_capped: usize,
    pub seeds: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: String,
    pub input_hash: String,
    pub config: RunConfig,
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<Enumeration>,
    pub charts: Vec<ChartSection>,
    pub summary: Summary,
}

/// SHA-256 of the command name and the canonical config encoding.
pub fn input_hash(command: &str, config: &RunConfig) -> String {
    let canonical = serde_json::to_string(&(command, config)).expect("config serializes");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Recomputes the summary counts from the sections.
    pub fn tally(&mut self) {
        let mut s = Summary { seeds: self.summary.seeds.clone(), ..Summary::default() };
        let mut count = |ok: bool, capped: bool| {
            if ok {
                s.pass += 1;
            } else {
                s.fail += 1;
                if capped {
                    s.extraction_capped += 1;
                }
            }
        };
        for c in &self.checks {
            count(c.passed(), false);
        }
        for ch in &self.charts {
            for c in &ch.checks {
                count(c.passed(), false);
            }
            for a in &ch.samples {
                count(a.matched, false);
            }
            for d in &ch.divisors {
                count(d.validated, d.evidence.capped);
            }
            for m in &ch.matching {
                count(m.equal_up_to_unit || !m.meets_chart, m.capped);
            }
        }
        self.summary = s;
    }
}
