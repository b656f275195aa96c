//! Batch verification over a grid of `(m, n)` cells.

use std::fmt::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::checks::CheckRecord;
use crate::config::RunConfig;
use crate::report::build_report;

#[derive(Clone, Debug, Serialize)]
pub struct CellResult {
    pub m: u64,
    pub n: usize,
    pub vertices: u128,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
    /// Work left out because of a cap. Not a failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl CellResult {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

pub fn run_cell(m: u64, n: usize, cfg: &RunConfig) -> CellResult {
    let report = build_report(m, n, &cfg.tolerances, &cfg.limits);
    let [full, sub] = report.graphs;
    let skipped = full.refused.clone();
    let checks: Vec<CheckRecord> = full.checks.into_iter().chain(sub.checks).collect();
    CellResult {
        m,
        n,
        vertices: full.vertices,
        passed: checks.iter().all(|c| c.pass),
        checks,
        skipped,
    }
}

/// Every cell of the configured grid, in parallel, sorted by `(m, n)`.
pub fn run_sweep(cfg: &RunConfig) -> Vec<CellResult> {
    let mut results: Vec<CellResult> = cfg
        .cells()
        .into_par_iter()
        .map(|(m, n)| run_cell(m, n, cfg))
        .collect();
    results.sort_by_key(|r| (r.m, r.n));
    results
}

pub fn table(results: &[CellResult]) -> String {
    let mut out = String::new();
    writeln!(out, "{:>3} {:>3} {:>9} {:>7} {:>7}  status", "m", "n", "vertices", "checks", "failed").unwrap();
    for r in results {
        let failed = r.failures().count();
        let status = if r.passed { "pass" } else { "FAIL" };
        write!(out, "{:>3} {:>3} {:>9} {:>7} {:>7}  {status}", r.m, r.n, r.vertices, r.checks.len(), failed).unwrap();
        if let Some(reason) = &r.skipped {
            write!(out, " (partial: {reason})").unwrap();
        }
        out.push('\n');
    }
    let failures: Vec<(&CellResult, &CheckRecord)> =
        results.iter().flat_map(|r| r.failures().map(move |c| (r, c))).collect();
    if failures.is_empty() {
        writeln!(out, "all {} cells passed", results.len()).unwrap();
    } else {
        writeln!(out, "\nfailures:").unwrap();
        for (r, c) in failures {
            writeln!(out, "  m = {}, n = {}: {}: {}", r.m, r.n, c.name, c.detail).unwrap();
        }
    }
    out
}
