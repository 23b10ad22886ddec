//! Run configuration: parsing and validation of user input.

use std::fmt;

use klatlas_core::affine::Coweight;
use klatlas_core::charts::{all_charts, make_chart, Chart};
use klatlas_core::weyl::{Parabolic, Perm, MAX_RANK};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LambdaSpec {
    Minimal,
    Explicit(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChartSpec {
    All,
    List(Vec<String>),
}

/// Raw user input, before validation.
#[derive(Clone, Debug)]
pub struct RawConfig {
    pub n: usize,
    pub j: String,
    pub lambda: String,
    pub charts: String,
    pub samples: usize,
    pub seed: u64,
    pub degree_cap: u32,
    pub format: Format,
}

/// Validated configuration, echoed into reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub n: usize,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    /// As given: `"minimal"` or explicit.
    pub lambda_spec: LambdaSpec,
    /// The coweight actually used.
    pub lambda: Vec<i64>,
    pub charts: ChartSpec,
    pub samples: usize,
    pub seed: u64,
    pub degree_cap: u32,
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// `"2"`, `"1,3"`, `""` or `"none"`.
pub fn parse_j(s: &str, n: usize) -> Result<Vec<usize>, ConfigError> {
    let s = s.trim();
    if s.is_empty() || s.eq_ignore_ascii_case("none") {
        return Ok(Vec::new());
    }
    let mut j = Vec::new();
    for part in s.split(',') {
        let i: usize = part.trim().parse().map_err(|_| ConfigError(format!("J entry {part:?} is not an integer")))?;
        if i == 0 || i >= n {
            return err(format!("J entry {i} outside 1..{}", n - 1));
        }
        j.push(i);
    }
    j.sort_unstable();
    let len = j.len();
    j.dedup();
    if j.len() != len {
        return err("J has repeated entries");
    }
    Ok(j)
}

impl RawConfig {
    pub fn validate(&self) -> Result<RunConfig, ConfigError> {
        if !(2..=MAX_RANK).contains(&self.n) {
            return err(format!("n = {} outside 2..={MAX_RANK}", self.n));
        }
        if self.samples == 0 {
            return err("samples must be at least 1");
        }
        if self.degree_cap == 0 {
            return err("degree cap must be at least 1");
        }
        let j = parse_j(&self.j, self.n)?;
        let par = Parabolic::new(self.n, &j).map_err(|e| ConfigError(e.to_string()))?;
        let (lambda_spec, lambda) = if self.lambda.trim().eq_ignore_ascii_case("minimal") {
            (LambdaSpec::Minimal, Coweight::minimal(&par))
        } else {
            let l = Coweight::parse(&self.lambda).map_err(|e| ConfigError(format!("lambda: {e}")))?;
            if l.rank() != self.n {
                return err(format!("lambda has {} entries, expected {}", l.rank(), self.n));
            }
            l.check_compatible(&par).map_err(|e| ConfigError(format!("lambda: {e}")))?;
            (LambdaSpec::Explicit(l.entries().to_vec()), l)
        };
        let charts = if self.charts.trim().eq_ignore_ascii_case("all") {
            ChartSpec::All
        } else {
            let mut list = Vec::new();
            for part in self.charts.split(',') {
                let w = Perm::parse(part.trim()).map_err(|e| ConfigError(format!("chart {part:?}: {e}")))?;
                if w.rank() != self.n {
                    return err(format!("chart {w} has rank {}, expected {}", w.rank(), self.n));
                }
                if !par.is_min_rep(&w) {
                    return err(format!("chart {w} is not a minimal coset representative for J = {j:?}"));
                }
                list.push(w.to_string());
            }
            if list.is_empty() {
                return err("empty chart list");
            }
            ChartSpec::List(list)
        };
        Ok(RunConfig {
            n: self.n,
            j,
            lambda_spec,
            lambda: lambda.entries().to_vec(),
            charts,
            samples: self.samples,
            seed: self.seed,
            degree_cap: self.degree_cap,
            format: self.format,
        })
    }
}

impl RunConfig {
    pub fn parabolic(&self) -> Parabolic {
        Parabolic::new(self.n, &self.j).expect("validated")
    }

    pub fn coweight(&self) -> Coweight {
        Coweight::new(self.lambda.clone()).expect("validated")
    }

    /// Selected charts, in the order requested (length-lex for `all`).
    pub fn charts(&self) -> Vec<Chart> {
        let par = self.parabolic();
        let l = self.coweight();
        match &self.charts {
            ChartSpec::All => all_charts(&par, &l).expect("validated"),
            ChartSpec::List(ws) => ws
                .iter()
                .map(|w| make_chart(&Perm::parse(w).expect("validated"), &par, &l).expect("validated"))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw() -> RawConfig {
        RawConfig {
            n: 4,
            j: "2".into(),
            lambda: "1,0,0,-1".into(),
            charts: "all".into(),
            samples: 5,
            seed: 7,
            degree_cap: 4,
            format: Format::Json,
        }
    }

    #[test]
    fn accepts_the_worked_configuration() {
        let c = raw().validate().unwrap();
        assert_eq!(c.j, vec![2]);
        assert_eq!(c.charts().len(), 12);
    }

    #[test]
    fn minimal_lambda_is_resolved() {
        let c = RawConfig { lambda: "minimal".into(), ..raw() }.validate().unwrap();
        assert_eq!(c.lambda, vec![1, 0, 0, -1]);
        assert_eq!(c.lambda_spec, LambdaSpec::Minimal);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RawConfig { n: 1, ..raw() }.validate().is_err());
        assert!(RawConfig { n: 7, ..raw() }.validate().is_err());
        assert!(RawConfig { j: "4".into(), ..raw() }.validate().is_err());
        assert!(RawConfig { j: "2,2".into(), ..raw() }.validate().is_err());
        assert!(RawConfig { lambda: "1,0,0".into(), ..raw() }.validate().is_err());
        // not dominant / wrong zero pattern for J = {2}
        assert!(RawConfig { lambda: "1,1,0,-2".into(), ..raw() }.validate().is_err());
        assert!(RawConfig { samples: 0, ..raw() }.validate().is_err());
        assert!(RawConfig { charts: "1234,1324".into(), ..raw() }.validate().is_err());
        assert!(RawConfig { charts: "4123".into(), ..raw() }.validate().is_ok());
    }

    #[test]
    fn j_parsing() {
        assert_eq!(parse_j("", 4).unwrap(), Vec::<usize>::new());
        assert_eq!(parse_j("none", 4).unwrap(), Vec::<usize>::new());
        assert_eq!(parse_j("3,1", 4).unwrap(), vec![1, 3]);
        assert!(parse_j("x", 4).is_err());
    }
}
