use alloc::string::String;
use alloc::vec::Vec;
use serde::Serialize;

/// Outcome of one exhaustive or sampled check: how many individual
/// assertions ran and a description of each one that failed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), checks: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Counts one assertion; records `msg()` when it fails.
    pub fn assert<F: FnOnce() -> String>(&mut self, ok: bool, msg: F) {
        self.checks += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

/// Serializes exact rationals as `"p/q"` strings.
pub fn rationals_as_strings<S: serde::Serializer>(v: &[crate::algebra::Rational], s: S) -> Result<S::Ok, S::Error> {
    use alloc::string::ToString;
    s.collect_seq(v.iter().map(|q| q.to_string()))
}
