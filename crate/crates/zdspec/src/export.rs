//! Matrix and graph serializations.
//!
//! Integers are written in decimal; JSON carries them as strings because
//! quotient and walk entries leave the 64-bit range quickly.

use std::fmt::Write;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;
use zdspec_core::graph::SupportGraph;
use zdspec_core::Matrix;

/// One row per line, comma separated.
pub fn matrix_csv<T: ToString>(m: &Matrix<T>) -> String {
    let mut out = String::new();
    for row in m.iter_rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Array of rows, each an array of decimal strings.
pub fn matrix_json(m: &Matrix<BigInt>) -> Value {
    Value::Array(
        m.iter_rows()
            .map(|row| Value::Array(row.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

fn graph_name<G: SupportGraph + ?Sized>(g: &G) -> String {
    format!("{}_m{}_n{}", g.kind().as_str(), g.m(), g.n())
}

/// Undirected DOT graph. Vertices are named by their coordinate labels and
/// each zero-count cell is a `rank = same` group.
pub fn graph_dot<G: SupportGraph + ?Sized>(g: &G) -> String {
    let labels: Vec<String> = g.vertices().iter().map(|v| v.label()).collect();
    let mut out = String::new();
    writeln!(out, "graph \"{}\" {{", graph_name(g)).unwrap();
    for (c, cell) in g.cells().iter().enumerate() {
        if cell.is_empty() {
            continue;
        }
        writeln!(out, "  subgraph \"cell_{}\" {{", c + 1).unwrap();
        writeln!(out, "    rank = same;").unwrap();
        for &v in cell {
            writeln!(out, "    \"{}\";", labels[v]).unwrap();
        }
        writeln!(out, "  }}").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  \"{}\" -- \"{}\";", labels[u], labels[v]).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn adjacency_csv<G: SupportGraph + ?Sized>(g: &G) -> String {
    matrix_csv(&g.adjacency_matrix())
}

#[derive(Serialize)]
pub struct GraphDescriptor {
    pub m: u64,
    pub n: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

pub fn graph_descriptor<G: SupportGraph + ?Sized>(g: &G) -> GraphDescriptor {
    GraphDescriptor {
        m: g.m(),
        n: g.n(),
        vertices: g.vertices().iter().map(|v| v.label()).collect(),
        edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
    }
}
