//! Plain-text rendering of a report.

use std::fmt::Write;

use crate::report::RunReport;

fn yes(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn render(r: &RunReport) -> String {
    let mut out = String::new();
    let c = &r.config;
    let _ = writeln!(out, "klatlas {} {}  n={} J={:?} lambda={:?} seed={}", r.tool.version, r.command, c.n, c.j, c.lambda, c.seed);
    let _ = writeln!(out, "input {}", r.input_hash);
    if let Some(e) = &r.enumeration {
        let _ = writeln!(out, "\ndim G/P = {}, |W^P| = {}, |Q_P| = {}, open label {}", e.dimension, e.min_coset_reps.len(), e.qp.len(), e.bottom_label);
        let _ = writeln!(out, "{:<28} {:>4}  kl_label", "stratum", "dim");
        for q in &e.qp {
            let _ = writeln!(out, "{:<28} {:>4}  {}", q.label, q.dim, q.kl_label);
        }
    }
    if !r.checks.is_empty() {
        let _ = writeln!(out);
        for k in &r.checks {
            let _ = writeln!(out, "{:<32} {:>6} checks  {}", k.name, k.checks, yes(k.passed()));
            for f in k.failures.iter().take(5) {
                let _ = writeln!(out, "    {f}");
            }
        }
    }
    for ch in &r.charts {
        let d = &ch.chart;
        let _ = writeln!(out, "\nchart w1={} w2={} Q1={} Q2={}", d.w1, d.w2, d.q1, d.q2);
        for k in &ch.checks {
            let _ = writeln!(out, "  {:<30} {:>6} checks  {}", k.name, k.checks, yes(k.passed()));
            for f in k.failures.iter().take(5) {
                let _ = writeln!(out, "      {f}");
            }
        }
        if !ch.samples.is_empty() {
            let ok = ch.samples.iter().filter(|a| a.matched).count();
            let _ = writeln!(out, "  theorem: {ok}/{} samples match", ch.samples.len());
            for a in ch.samples.iter().filter(|a| !a.matched).take(5) {
                let _ = writeln!(
                    out,
                    "      {} -> lower {} (expected {}), upper {} (expected {})",
                    a.gp_stratum, a.affine_cell_lower, a.expected_lower, a.affine_cell_upper, a.expected_upper
                );
            }
        }
        if !ch.matching.is_empty() {
            let _ = writeln!(out, "  {:<22} {:<28} {:<16} {:<28} equal", "G/P divisor", "equation", "affine label", "equation");
            for m in &ch.matching {
                if !m.meets_chart {
                    let _ = writeln!(out, "  {:<22} does not meet chart", m.gp_label);
                    continue;
                }
                let _ = writeln!(
                    out,
                    "  {:<22} {:<28} {:<16} {:<28} {}",
                    m.gp_label,
                    m.gp_equation.as_deref().unwrap_or("-"),
                    m.affine_label.as_deref().unwrap_or("-"),
                    m.affine_equation.as_deref().unwrap_or("-"),
                    if m.equal_up_to_unit { "yes" } else { "no" }
                );
            }
        }
    }
    let s = &r.summary;
    let _ = writeln!(out, "\npass {}  fail {}  capped {}", s.pass, s.fail, s.extraction_capped);
    out
}
