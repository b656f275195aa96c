//! Per-`(m, n)` spectral report for Γ(Rₙ) and Γ′(Rₙ).

use std::fmt::Write;

use serde::Serialize;
use serde_json::{json, Value};
use zdspec_core::graph::{full_vertex_count, BipartiteSubgraph, ZeroDivisorGraph};
use zdspec_core::quotient::{build_q, QuotientKind};
use zdspec_core::spectra::{predicted_spectrum, quotient_eigenvalues, Limits, SpectralAnalysis, SpectralReport, Tolerances};
use zdspec_core::{Error, GraphKind, PredictedSpectrum};

use crate::checks::{self, CheckRecord};
use crate::Status;

#[derive(Clone, Debug, Serialize)]
pub struct EigenvalueEntry {
    pub value: f64,
    pub multiplicity: usize,
    pub main: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphReport {
    pub m: u64,
    pub n: usize,
    pub graph: &'static str,
    pub vertices: u128,
    pub eigenvalues: Vec<EigenvalueEntry>,
    pub predicted: Value,
    pub checks: Vec<CheckRecord>,
    /// Set when a resource cap stopped part of the work.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refused: Option<String>,
}

impl GraphReport {
    fn new(m: u64, n: usize, kind: GraphKind, vertices: u128, predicted: Value) -> Self {
        GraphReport {
            m,
            n,
            graph: kind.as_str(),
            vertices,
            eigenvalues: Vec::new(),
            predicted,
            checks: Vec::new(),
            refused: None,
        }
    }

    fn fill_spectrum(&mut self, s: &SpectralReport) {
        self.eigenvalues = s
            .eigenpairs
            .iter()
            .map(|p| EigenvalueEntry {
                value: p.value,
                multiplicity: p.multiplicity,
                main: p.is_main,
            })
            .collect();
    }

    pub fn main_values(&self) -> Vec<f64> {
        self.eigenvalues.iter().filter(|e| e.main).map(|e| e.value).collect()
    }
}

/// Reports for the full graph and the bipartite subgraph, in that order.
#[derive(Clone, Debug)]
pub struct Report {
    pub graphs: [GraphReport; 2],
}

impl Report {
    pub fn status(&self) -> Status {
        let checks = self.graphs.iter().flat_map(|g| &g.checks);
        if checks.clone().any(|c| !c.pass) {
            Status::CheckFailure
        } else if self.graphs.iter().any(|g| g.refused.is_some()) {
            Status::ResourceCap
        } else {
            Status::Success
        }
    }

    pub fn failures(&self) -> Vec<&CheckRecord> {
        self.graphs.iter().flat_map(|g| &g.checks).filter(|c| !c.pass).collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.graphs).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.graphs {
            writeln!(out, "{} graph, m = {}, n = {}, {} vertices", g.graph, g.m, g.n, g.vertices).unwrap();
            if let Some(reason) = &g.refused {
                writeln!(out, "  refused: {reason}").unwrap();
            }
            if !g.eigenvalues.is_empty() {
                writeln!(out, "  {:>22}  {:>12}  main", "eigenvalue", "multiplicity").unwrap();
                for e in &g.eigenvalues {
                    writeln!(
                        out,
                        "  {:>22.12}  {:>12}  {}",
                        e.value,
                        e.multiplicity,
                        if e.main { "yes" } else { "no" }
                    )
                    .unwrap();
                }
            }
            for c in &g.checks {
                let mark = if c.pass { "pass" } else { "FAIL" };
                write!(out, "  [{mark}] {}", c.name).unwrap();
                if c.residual != 0.0 {
                    write!(out, " (residual {:e})", c.residual).unwrap();
                }
                if !c.detail.is_empty() {
                    write!(out, ": {}", c.detail).unwrap();
                }
                out.push('\n');
            }
            out.push('\n');
        }
        out
    }
}

fn predicted_full(p: &PredictedSpectrum) -> Value {
    let derived: Vec<Value> = p
        .q_derived
        .iter()
        .map(|d| {
            json!({
                "index": d.index,
                "exact": d.exact.to_string(),
                "value": d.value,
                "multiplicity": d.multiplicity,
            })
        })
        .collect();
    json!({
        "main": p.p_eigenvalues,
        "p_eigenvalues": p.p_eigenvalues,
        "neg_q_eigenvalues": derived,
        "zero_multiplicity": p.zero_multiplicity.to_string(),
    })
}

fn route(check: CheckRecord, full: &mut GraphReport, sub: &mut GraphReport) {
    if check.name.contains("bipartite") {
        sub.checks.push(check);
    } else {
        full.checks.push(check);
    }
}

/// Runs every check available within the caps. Beyond the size cap only the
/// quotient-level checks run; beyond the dense cap the graphs are still built
/// and checked structurally, but no eigenvalues are computed.
pub fn build_report(m: u64, n: usize, tol: &Tolerances, limits: &Limits) -> Report {
    let full_count = full_vertex_count(m, n);
    let sub_count = zdspec_core::graph::bipartite_vertex_count(m, n);

    let predicted = predicted_spectrum(m, n, tol);
    let q_values = build_q(m, n).and_then(|q| quotient_eigenvalues(&q, tol));
    let mut full = GraphReport::new(
        m,
        n,
        GraphKind::Full,
        full_count,
        predicted.as_ref().map(predicted_full).unwrap_or(Value::Null),
    );
    let mut sub = GraphReport::new(
        m,
        n,
        GraphKind::Bipartite,
        sub_count,
        q_values.as_ref().map(|q| json!({ "main": q })).unwrap_or(Value::Null),
    );
    if let Err(e) = &predicted {
        full.checks.push(CheckRecord::exact("predicted_spectrum", false, e.to_string()));
    }
    if let Err(e) = &q_values {
        sub.checks.push(CheckRecord::exact("bipartite_q_eigenvalues", false, e.to_string()));
    }

    full.checks.extend(checks::quotient_checks(QuotientKind::P, m, n));
    sub.checks.extend(checks::quotient_checks(QuotientKind::Q, m, n));
    sub.checks.extend(checks::q_exact_checks(m, n));

    match (
        ZeroDivisorGraph::build(m, n, limits.size_cap),
        BipartiteSubgraph::build(m, n, limits.size_cap),
    ) {
        (Ok(g), Ok(h)) => {
            full.checks.extend(checks::full_graph_checks(&g));
            sub.checks.extend(checks::subgraph_checks(&h));
        }
        (Err(e), _) | (_, Err(e)) => {
            let reason = e.to_string();
            full.refused = Some(reason.clone());
            sub.refused = Some(reason);
            return Report { graphs: [full, sub] };
        }
    }

    match SpectralAnalysis::compute(m, n, tol, limits) {
        Ok(analysis) => {
            full.fill_spectrum(&analysis.full);
            sub.fill_spectrum(&analysis.bipartite);
            for c in checks::spectral_checks(&analysis) {
                route(c, &mut full, &mut sub);
            }
        }
        Err(Error::SizeCap { vertices, cap }) => {
            let reason = format!("dense spectrum needs {vertices} vertices, above the dense cap of {cap}");
            full.refused = Some(reason.clone());
            sub.refused = Some(reason);
        }
        Err(e) => full.checks.push(CheckRecord::exact("dense_spectrum", false, e.to_string())),
    }
    Report { graphs: [full, sub] }
}
