//! Explicit zero-divisor graphs of Rₙ = 𝔽ₘ × ⋯ × 𝔽ₘ.
//!
//! Vertices are the nonzero zero-divisors: tuples with at least one zero and
//! at least one nonzero coordinate. Because every factor is a field, two tuples
//! multiply to zero exactly when their supports are disjoint, so adjacency is a
//! bitmask test and edges are never stored. Only the zero pattern matters, so
//! any `m ≥ 2` is accepted; the ring reading needs `m` to be a prime power.
//!
//! Vertices are enumerated in lexicographic order of their coordinates, and
//! cells are ordered by ascending zero count: cell `i − 1` holds the vertices
//! with exactly `i` zero coordinates.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{check_min, Error, Result};
use crate::matrix::Matrix;

/// Default vertex cap for explicit construction.
pub const DEFAULT_SIZE_CAP: usize = 20_000;

/// Largest `n` for which the adjacency operator uses the subset-sum transform
/// over all `2ⁿ` supports; beyond it neighbours are scanned directly.
const SUBSET_TRANSFORM_MAX_N: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexTuple {
    coords: Vec<u32>,
    support: u64,
}

impl VertexTuple {
    pub fn new(coords: Vec<u32>) -> Self {
        let support = coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .fold(0u64, |acc, (pos, _)| acc | (1 << pos));
        VertexTuple { coords, support }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// Bit `p` is set iff coordinate `p` (0-based) is nonzero.
    pub fn support(&self) -> u64 {
        self.support
    }

    pub fn zero_count(&self) -> usize {
        self.coords.len() - self.support.count_ones() as usize
    }

    /// `self · other = 0` in Rₙ.
    pub fn annihilates(&self, other: &VertexTuple) -> bool {
        self.support & other.support == 0
    }

    /// Coordinates concatenated, e.g. `"0101"`. Coordinates above 9 are
    /// separated by dots so that labels stay unambiguous.
    pub fn label(&self) -> String {
        use core::fmt::Write;
        let wide = self.coords.iter().any(|&c| c > 9);
        let mut s = String::new();
        for (idx, c) in self.coords.iter().enumerate() {
            if wide && idx > 0 {
                s.push('.');
            }
            let _ = write!(s, "{c}");
        }
        s
    }
}

impl fmt::Display for VertexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphKind {
    /// Γ(Rₙ)
    Full,
    /// Γ′(Rₙ)
    Bipartite,
}

impl GraphKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::Full => "full",
            GraphKind::Bipartite => "bipartite",
        }
    }
}

/// `mⁿ − (m−1)ⁿ − 1`, saturating at `u128::MAX`.
pub fn full_vertex_count(m: u64, n: usize) -> u128 {
    let total = checked_pow(m, n);
    let units = checked_pow(m - 1, n);
    match (total, units) {
        (Some(t), Some(u)) => t - u - 1,
        _ => u128::MAX,
    }
}

/// `2(m−1)·m^(n−2)`, saturating at `u128::MAX`.
pub fn bipartite_vertex_count(m: u64, n: usize) -> u128 {
    checked_pow(m, n - 2)
        .and_then(|p| p.checked_mul(2 * (m as u128 - 1)))
        .unwrap_or(u128::MAX)
}

fn checked_pow(base: u64, exp: usize) -> Option<u128> {
    let exp = u32::try_from(exp).ok()?;
    (base as u128).checked_pow(exp)
}

fn check_shape(m: u64, n: usize) -> Result<()> {
    check_min("m", m, 2)?;
    check_min("n", n as u64, 2)?;
    if n > 63 {
        return Err(Error::TupleTooLong { n });
    }
    if m > u32::MAX as u64 {
        return Err(Error::SizeCap {
            vertices: full_vertex_count(m, n),
            cap: usize::MAX,
        });
    }
    Ok(())
}

fn check_cap(vertices: u128, cap: usize) -> Result<()> {
    if vertices > cap as u128 {
        Err(Error::SizeCap { vertices, cap })
    } else {
        Ok(())
    }
}

/// Calls `visit` with every tuple in `0..m` ^ `n`, in lexicographic order.
fn for_each_tuple(m: u64, n: usize, mut visit: impl FnMut(&[u32])) {
    let m = m as u32;
    let mut coords = vec![0u32; n];
    loop {
        visit(&coords);
        // odometer increment, last coordinate fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            coords[pos] += 1;
            if coords[pos] < m {
                break;
            }
            coords[pos] = 0;
        }
    }
}

fn zero_count_cells(vertices: &[VertexTuple], n: usize) -> Vec<Vec<usize>> {
    let mut cells = vec![Vec::new(); n - 1];
    for (idx, v) in vertices.iter().enumerate() {
        cells[v.zero_count() - 1].push(idx);
    }
    cells
}

/// Shared behaviour of Γ(Rₙ) and Γ′(Rₙ): both are induced subgraphs of the
/// disjoint-support relation on a list of tuples.
pub trait SupportGraph {
    fn m(&self) -> u64;
    fn n(&self) -> usize;
    fn kind(&self) -> GraphKind;
    fn vertices(&self) -> &[VertexTuple];
    /// Zero-count partition; cell `i − 1` holds vertices with `i` zeros.
    fn cells(&self) -> &[Vec<usize>];

    fn vertex_count(&self) -> usize {
        self.vertices().len()
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        let vs = self.vertices();
        u != v && vs[u].annihilates(&vs[v])
    }

    fn neighbors(&self, u: usize) -> Neighbors<'_> {
        Neighbors {
            vertices: self.vertices(),
            of: u,
            next: 0,
        }
    }

    fn degree(&self, u: usize) -> usize {
        self.neighbors(u).count()
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    fn edges(&self) -> Vec<(usize, usize)> {
        let count = self.vertex_count();
        let mut out = Vec::new();
        for u in 0..count {
            for v in (u + 1)..count {
                if self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Dense 0/1 adjacency matrix in vertex order.
    fn adjacency_matrix(&self) -> Matrix<u8> {
        let count = self.vertex_count();
        Matrix::from_fn(count, count, |u, v| u8::from(self.adjacent(u, v)))
    }

    /// `A·x`, exact.
    ///
    /// For `n ≤ 20` this sums `x` by support and runs a subset-sum transform,
    /// so `(A·x)_u` is the transform evaluated at the complement of `supp(u)`.
    /// The cost is `O(2ⁿ·n + |V|)` instead of `O(|V|²)`.
    fn apply_adjacency(&self, x: &[BigInt]) -> Vec<BigInt> {
        let vs = self.vertices();
        assert_eq!(x.len(), vs.len(), "vector length must match vertex count");
        let n = self.n();
        if n > SUBSET_TRANSFORM_MAX_N {
            return (0..vs.len())
                .map(|u| self.neighbors(u).fold(BigInt::zero(), |acc, v| acc + &x[v]))
                .collect();
        }
        let full = (1usize << n) - 1;
        let mut sums = vec![BigInt::zero(); full + 1];
        for (v, xv) in vs.iter().zip(x) {
            sums[v.support as usize] += xv;
        }
        for bit in 0..n {
            let step = 1usize << bit;
            for mask in 0..=full {
                if mask & step != 0 {
                    let (lo, hi) = sums.split_at_mut(mask);
                    hi[0] += &lo[mask ^ step];
                }
            }
        }
        vs.iter()
            .map(|u| sums[full & !(u.support as usize)].clone())
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Neighbors<'a> {
    vertices: &'a [VertexTuple],
    of: usize,
    next: usize,
}

impl Iterator for Neighbors<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        let me = &self.vertices[self.of];
        while self.next < self.vertices.len() {
            let v = self.next;
            self.next += 1;
            if v != self.of && me.annihilates(&self.vertices[v]) {
                return Some(v);
            }
        }
        None
    }
}

/// Γ(Rₙ).
#[derive(Clone, Debug)]
pub struct ZeroDivisorGraph {
    m: u64,
    n: usize,
    vertices: Vec<VertexTuple>,
    cells: Vec<Vec<usize>>,
}

impl ZeroDivisorGraph {
    /// Builds Γ(Rₙ), refusing graphs with more than `cap` vertices.
    pub fn build(m: u64, n: usize, cap: usize) -> Result<Self> {
        check_shape(m, n)?;
        check_cap(full_vertex_count(m, n), cap)?;
        let mut vertices = Vec::new();
        for_each_tuple(m, n, |coords| {
            let zeros = coords.iter().filter(|&&c| c == 0).count();
            if zeros > 0 && zeros < n {
                vertices.push(VertexTuple::new(coords.to_vec()));
            }
        });
        let cells = zero_count_cells(&vertices, n);
        Ok(ZeroDivisorGraph { m, n, vertices, cells })
    }
}

impl SupportGraph for ZeroDivisorGraph {
    fn m(&self) -> u64 {
        self.m
    }
    fn n(&self) -> usize {
        self.n
    }
    fn kind(&self) -> GraphKind {
        GraphKind::Full
    }
    fn vertices(&self) -> &[VertexTuple] {
        &self.vertices
    }
    fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }
}

/// Which side of Γ′(Rₙ) a vertex lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `a_(n−1) ≠ 0`, `a_n = 0`
    StarZero,
    /// `a_(n−1) = 0`, `a_n ≠ 0`
    ZeroStar,
}

/// Γ′(Rₙ), the subgraph of Γ(Rₙ) induced by `X_{*0} ∪ X_{0*}`.
#[derive(Clone, Debug)]
pub struct BipartiteSubgraph {
    m: u64,
    n: usize,
    vertices: Vec<VertexTuple>,
    sides: Vec<Side>,
    cells: Vec<Vec<usize>>,
}

impl BipartiteSubgraph {
    pub fn build(m: u64, n: usize, cap: usize) -> Result<Self> {
        check_shape(m, n)?;
        check_cap(bipartite_vertex_count(m, n), cap)?;
        let mut vertices = Vec::new();
        let mut sides = Vec::new();
        for_each_tuple(m, n, |coords| {
            let side = match (coords[n - 2] != 0, coords[n - 1] != 0) {
                (true, false) => Side::StarZero,
                (false, true) => Side::ZeroStar,
                _ => return,
            };
            vertices.push(VertexTuple::new(coords.to_vec()));
            sides.push(side);
        });
        let cells = zero_count_cells(&vertices, n);
        Ok(BipartiteSubgraph {
            m,
            n,
            vertices,
            sides,
            cells,
        })
    }

    pub fn side(&self, v: usize) -> Side {
        self.sides[v]
    }

    pub fn side_members(&self, side: Side) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.sides[v] == side).collect()
    }
}

impl SupportGraph for BipartiteSubgraph {
    fn m(&self) -> u64 {
        self.m
    }
    fn n(&self) -> usize {
        self.n
    }
    fn kind(&self) -> GraphKind {
        GraphKind::Bipartite
    }
    fn vertices(&self) -> &[VertexTuple] {
        &self.vertices
    }
    fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }
}

pub fn build_graph(m: u64, n: usize) -> Result<ZeroDivisorGraph> {
    ZeroDivisorGraph::build(m, n, DEFAULT_SIZE_CAP)
}

pub fn build_bipartite(m: u64, n: usize) -> Result<BipartiteSubgraph> {
    BipartiteSubgraph::build(m, n, DEFAULT_SIZE_CAP)
}

/// Counts, for every pair of cells `(i, j)`, the neighbours in cell `j` of each
/// vertex of cell `i`, and returns the common count matrix. Fails with
/// `NotEquitable` on the first pair of vertices that disagree.
pub fn empirical_quotient<G: SupportGraph + ?Sized>(
    graph: &G,
    cells: &[Vec<usize>],
) -> Result<Matrix<BigInt>> {
    let count = graph.vertex_count();
    let mut cell_of = vec![usize::MAX; count];
    for (c, members) in cells.iter().enumerate() {
        for &v in members {
            if v >= count || cell_of[v] != usize::MAX {
                return Err(Error::Shape(alloc::format!(
                    "cells do not partition the vertex set (vertex {v})"
                )));
            }
            cell_of[v] = c;
        }
    }
    if let Some(v) = cell_of.iter().position(|&c| c == usize::MAX) {
        return Err(Error::Shape(alloc::format!("vertex {v} is in no cell")));
    }

    let k = cells.len();
    let mut result: Matrix<Option<(usize, usize)>> = Matrix::from_fn(k, k, |_, _| None);
    let mut counts = vec![0usize; k];
    for (i, members) in cells.iter().enumerate() {
        for &u in members {
            counts.iter_mut().for_each(|c| *c = 0);
            for v in graph.neighbors(u) {
                counts[cell_of[v]] += 1;
            }
            for (j, &c) in counts.iter().enumerate() {
                match result[(i, j)] {
                    None => result[(i, j)] = Some((u, c)),
                    Some((first, expected)) if expected != c => {
                        return Err(Error::NotEquitable {
                            row_cell: i + 1,
                            col_cell: j + 1,
                            first,
                            first_count: expected,
                            second: u,
                            second_count: c,
                        })
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(result.map(|e| BigInt::from(e.map_or(0, |(_, c)| c))))
}
