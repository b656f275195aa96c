//! Main and non-main eigenvalues of Γ(Rₙ) and Γ′(Rₙ).
//!
//! An eigenvalue is main when its eigenspace is not orthogonal to the all-one
//! vector `e`. Numerically, eigenvalues are grouped by a gap threshold and a
//! group is main when the projection of `e/‖e‖` onto its eigenspace exceeds
//! the projection threshold. Projections inside the band
//! `[0.1·threshold, threshold]` are reported as ambiguous, never guessed.
//!
//! The exact counterpart is [`krylov_rank`]: the rank over ℚ of
//! `[e, Ae, A²e, …]` equals the number of main eigenvalues.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Float, One, Zero};

use crate::eigen::{self, SymmetricEigen};
use crate::error::{check_min, Error, Result};
use crate::fib::golden_pair;
use crate::field::QuadraticNumber;
use crate::graph::{
    full_vertex_count, BipartiteSubgraph, GraphKind, SupportGraph, ZeroDivisorGraph, DEFAULT_SIZE_CAP,
};
use crate::linalg;
use crate::matrix::Matrix;
use crate::quotient::{binomial_table, build_p, build_q, QuotientMatrix};

/// Default cap on the vertex count for full dense eigen-decompositions.
pub const DEFAULT_DENSE_CAP: usize = 3_000;

/// Numerical thresholds. All defaults follow the documented values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Absolute floor of the eigenvalue grouping gap.
    pub grouping_gap: f64,
    /// Grouping gap relative to `‖A‖_F`; the effective gap is the larger one.
    pub grouping_gap_relative: f64,
    /// Projection norm above which a group is main.
    pub projection_threshold: f64,
    /// Jacobi stopping rule, relative to `‖A‖_F`.
    pub eigen_convergence: f64,
    pub max_sweeps: usize,
    /// Absolute tolerance when comparing computed and predicted eigenvalues.
    pub match_tolerance: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            grouping_gap: 1e-8,
            grouping_gap_relative: 1e-9,
            projection_threshold: 1e-7,
            eigen_convergence: eigen::DEFAULT_CONVERGENCE,
            max_sweeps: eigen::DEFAULT_MAX_SWEEPS,
            match_tolerance: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn gap_for(&self, frobenius: f64) -> f64 {
        self.grouping_gap.max(self.grouping_gap_relative * frobenius)
    }

    pub fn ambiguity_floor(&self) -> f64 {
        0.1 * self.projection_threshold
    }
}

/// Vertex caps for explicit construction and dense eigen-decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub size_cap: usize,
    pub dense_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            size_cap: DEFAULT_SIZE_CAP,
            dense_cap: DEFAULT_DENSE_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GraphSource {
    pub m: u64,
    pub n: usize,
    pub kind: GraphKind,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eigenpair {
    /// Mean of the grouped computed eigenvalues.
    pub value: f64,
    pub multiplicity: usize,
    pub is_main: bool,
    /// Norm of the projection of `e/‖e‖` onto the group's eigenspace.
    pub projection: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport {
    pub source: Option<GraphSource>,
    /// Distinct eigenvalues in increasing order.
    pub eigenpairs: Vec<Eigenpair>,
    pub grouping_gap: f64,
    pub projection_threshold: f64,
}

impl SpectralReport {
    pub fn vertex_count(&self) -> usize {
        self.eigenpairs.iter().map(|p| p.multiplicity).sum()
    }

    pub fn main_values(&self) -> Vec<f64> {
        self.eigenpairs.iter().filter(|p| p.is_main).map(|p| p.value).collect()
    }

    pub fn non_main_values(&self) -> Vec<f64> {
        self.eigenpairs.iter().filter(|p| !p.is_main).map(|p| p.value).collect()
    }

    pub fn main_count(&self) -> usize {
        self.eigenpairs.iter().filter(|p| p.is_main).count()
    }
}

/// Splits ascending eigenvalues into runs whose consecutive members are
/// closer than `gap`. Returns index ranges into `values`.
fn group_ranges(values: &[f64], gap: f64) -> Vec<core::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] >= gap {
            if start < i {
                out.push(start..i);
            }
            start = i;
        }
    }
    out
}

/// Groups a finished decomposition and classifies each group.
pub fn classify_decomposition(eig: &SymmetricEigen, tol: &Tolerances) -> Result<SpectralReport> {
    let dim = eig.dim();
    let gap = tol.gap_for(eig.frobenius);
    let inv_sqrt = if dim == 0 { 0.0 } else { 1.0 / Float::sqrt(dim as f64) };
    let mut eigenpairs = Vec::new();
    for range in group_ranges(&eig.values, gap) {
        let mut proj_sq = 0.0;
        for j in range.clone() {
            let dot: f64 = eig.vectors[j].iter().sum::<f64>() * inv_sqrt;
            proj_sq += dot * dot;
        }
        let projection = Float::sqrt(proj_sq);
        let value = eig.values[range.clone()].iter().sum::<f64>() / range.len() as f64;
        let is_main = if projection > tol.projection_threshold {
            true
        } else if projection < tol.ambiguity_floor() {
            false
        } else {
            return Err(Error::AmbiguousClassification {
                eigenvalue: value,
                projection,
                low: tol.ambiguity_floor(),
                high: tol.projection_threshold,
            });
        };
        eigenpairs.push(Eigenpair {
            value,
            multiplicity: range.len(),
            is_main,
            projection,
        });
    }
    Ok(SpectralReport {
        source: None,
        eigenpairs,
        grouping_gap: gap,
        projection_threshold: tol.projection_threshold,
    })
}

/// Eigen-decomposes a symmetric matrix and classifies its eigenvalues.
pub fn classify_main(a: &Matrix<f64>, tol: &Tolerances) -> Result<SpectralReport> {
    let eig = eigen::symmetric_eigen_with(a, tol.eigen_convergence, tol.max_sweeps)?;
    classify_decomposition(&eig, tol)
}

/// [`classify_main`] on the adjacency matrix of a constructed graph.
pub fn classify_graph<G: SupportGraph + ?Sized>(graph: &G, tol: &Tolerances) -> Result<SpectralReport> {
    let a = graph.adjacency_matrix().map(|&x| f64::from(x));
    let mut report = classify_main(&a, tol)?;
    report.source = Some(GraphSource {
        m: graph.m(),
        n: graph.n(),
        kind: graph.kind(),
    });
    Ok(report)
}

/// Rank over ℚ of the Krylov sequence `e, Ae, A²e, …` generated by `apply`.
///
/// Vectors are appended until one fails to raise the rank (from then on every
/// further vector is dependent too) or `max_columns` vectors are in.
pub fn krylov_rank_with(
    dim: usize,
    mut apply: impl FnMut(&[BigInt]) -> Vec<BigInt>,
    max_columns: usize,
) -> usize {
    if dim == 0 || max_columns == 0 {
        return 0;
    }
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one(); dim]];
    let mut rank = 1;
    while rows.len() < max_columns {
        let next = apply(rows.last().expect("sequence is non-empty"));
        rows.push(next);
        let m = Matrix::from_rows(rows.clone()).expect("Krylov vectors share a length");
        let new_rank = linalg::rank_int(&m);
        if new_rank == rank {
            break;
        }
        rank = new_rank;
    }
    rank
}

/// Exact Krylov rank of a square integer matrix, i.e. its number of main
/// eigenvalues when it is an adjacency matrix.
pub fn krylov_rank(a: &Matrix<BigInt>) -> usize {
    assert!(a.is_square(), "Krylov rank needs a square matrix");
    krylov_rank_with(a.rows(), |v| a.mul_vec(v), a.rows() + 1)
}

/// Krylov rank of a graph's adjacency operator, without forming the matrix.
pub fn graph_krylov_rank<G: SupportGraph + ?Sized>(graph: &G, max_columns: usize) -> usize {
    krylov_rank_with(graph.vertex_count(), |v| graph.apply_adjacency(v), max_columns)
}

/// Eigenvalues of a quotient matrix, ascending, via its symmetrization.
pub fn quotient_eigenvalues(q: &QuotientMatrix, tol: &Tolerances) -> Result<Vec<f64>> {
    let eig = eigen::symmetric_eigen_with(&q.symmetrized(), tol.eigen_convergence, tol.max_sweeps)?;
    Ok(eig.values)
}

/// One eigenvalue `φ^i·ξ^(n−i)` of `−Q[m,n]` and its multiplicity in Γ(Rₙ).
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedEigenvalue {
    pub index: usize,
    pub exact: QuadraticNumber,
    pub value: f64,
    pub multiplicity: usize,
}

/// Spectrum of Γ(Rₙ) as predicted from `P[m,n]`, `−Q[m,n]` and `0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PredictedSpectrum {
    pub m: u64,
    pub n: usize,
    /// Eigenvalues of `P[m,n]`, ascending, each simple.
    pub p_eigenvalues: Vec<f64>,
    pub q_derived: Vec<DerivedEigenvalue>,
    /// `mⁿ − (m−1)ⁿ − 2ⁿ + 1`, derived from the vertex count.
    pub zero_multiplicity: u128,
}

impl PredictedSpectrum {
    /// `(value, multiplicity)` pairs sorted by value, zero multiplicities dropped.
    pub fn multiset(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = self.p_eigenvalues.iter().map(|&v| (v, 1)).collect();
        out.extend(self.q_derived.iter().map(|d| (d.value, d.multiplicity)));
        if self.zero_multiplicity > 0 {
            out.push((0.0, self.zero_multiplicity as usize));
        }
        out.retain(|&(_, k)| k > 0);
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        out
    }

    pub fn total_multiplicity(&self) -> u128 {
        self.p_eigenvalues.len() as u128
            + self.q_derived.iter().map(|d| d.multiplicity as u128).sum::<u128>()
            + self.zero_multiplicity
    }

    /// Eigenvalues of `Q[m,n]`, i.e. `−φ^i·ξ^(n−i)`, ascending.
    pub fn q_eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.q_derived.iter().map(|d| -d.value).collect();
        v.sort_by(f64::total_cmp);
        v
    }
}

/// `mⁿ − (m−1)ⁿ − 2ⁿ + 1`; `None` on overflow.
pub fn zero_multiplicity(m: u64, n: usize) -> Option<u128> {
    let total = full_vertex_count(m, n);
    if total == u128::MAX {
        return None;
    }
    let two_n = 1u128.checked_shl(u32::try_from(n).ok()?)?;
    // total − (2ⁿ − 2) ≥ 0 because every nonempty proper support pattern
    // appears at least once among the vertices
    (total + 2).checked_sub(two_n)
}

pub fn predicted_spectrum(m: u64, n: usize, tol: &Tolerances) -> Result<PredictedSpectrum> {
    check_min("m", m, 2)?;
    check_min("n", n as u64, 2)?;
    let p = build_p(m, n)?;
    let p_eigenvalues = quotient_eigenvalues(&p, tol)?;
    let (phi, xi) = golden_pair(m)?;
    let table = binomial_table(n);
    let q_derived = (1..n)
        .map(|i| {
            let exact = &phi.pow(i as u32) * &xi.pow((n - i) as u32);
            let multiplicity = usize::try_from(&table[n][i] - BigInt::one()).unwrap_or(usize::MAX);
            DerivedEigenvalue {
                index: i,
                value: exact.to_f64(),
                exact,
                multiplicity,
            }
        })
        .collect();
    let zero_multiplicity = zero_multiplicity(m, n).ok_or(Error::SizeCap {
        vertices: u128::MAX,
        cap: usize::MAX,
    })?;
    Ok(PredictedSpectrum {
        m,
        n,
        p_eigenvalues,
        q_derived,
        zero_multiplicity,
    })
}

/// One named check with a pass flag and a numeric residual.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub residual: f64,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, pass: bool, residual: f64, detail: String) -> Self {
        Check {
            name,
            pass,
            residual,
            detail,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// `Ok` with the report if every check passed, otherwise `Mismatch` for the
    /// first failing check.
    pub fn into_result(self) -> Result<Self> {
        match self.checks.iter().find(|c| !c.pass) {
            None => Ok(self),
            Some(c) => Err(Error::Mismatch {
                check: c.name,
                detail: c.detail.clone(),
            }),
        }
    }

    fn push(&mut self, check: Check) {
        self.checks.push(check);
    }
}

/// Compares two ascending lists elementwise. Returns the largest absolute
/// difference, or `None` if the lengths differ.
fn max_sorted_difference(a: &[f64], b: &[f64]) -> Option<f64> {
    (a.len() == b.len()).then(|| {
        a.iter()
            .zip(b)
            .map(|(x, y)| Float::abs(x - y))
            .fold(0.0, f64::max)
    })
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

fn compare_sets(name: &'static str, got: Vec<f64>, want: Vec<f64>, tol: f64) -> Check {
    let (got, want) = (sorted(got), sorted(want));
    match max_sorted_difference(&got, &want) {
        Some(res) => Check::new(
            name,
            res <= tol,
            res,
            format!("computed {got:?}, expected {want:?}"),
        ),
        None => Check::new(
            name,
            false,
            f64::INFINITY,
            format!("computed {} values {got:?}, expected {} values {want:?}", got.len(), want.len()),
        ),
    }
}

/// Everything the spectral checks need for one `(m, n)`, computed once.
#[derive(Clone, Debug)]
pub struct SpectralAnalysis {
    pub m: u64,
    pub n: usize,
    pub tolerances: Tolerances,
    pub full: SpectralReport,
    pub bipartite: SpectralReport,
    /// Ascending computed eigenvalues of Γ(Rₙ), with multiplicity.
    pub full_values: Vec<f64>,
    pub predicted: PredictedSpectrum,
    pub q_eigenvalues: Vec<f64>,
    pub full_krylov_rank: usize,
    pub bipartite_krylov_rank: usize,
}

impl SpectralAnalysis {
    /// Builds both graphs and decomposes them. Refuses graphs above the dense
    /// cap with `SizeCap`.
    pub fn compute(m: u64, n: usize, tol: &Tolerances, limits: &Limits) -> Result<Self> {
        let cap = limits.dense_cap.min(limits.size_cap);
        let graph = ZeroDivisorGraph::build(m, n, cap)?;
        let sub = BipartiteSubgraph::build(m, n, cap)?;

        let a = graph.adjacency_matrix().map(|&x| f64::from(x));
        let eig = eigen::symmetric_eigen_with(&a, tol.eigen_convergence, tol.max_sweeps)?;
        let mut full = classify_decomposition(&eig, tol)?;
        full.source = Some(GraphSource {
            m,
            n,
            kind: GraphKind::Full,
        });
        let bipartite = classify_graph(&sub, tol)?;

        let predicted = predicted_spectrum(m, n, tol)?;
        let q_eigenvalues = quotient_eigenvalues(&build_q(m, n)?, tol)?;
        let full_krylov_rank = graph_krylov_rank(&graph, full.eigenpairs.len() + 1);
        let bipartite_krylov_rank = graph_krylov_rank(&sub, bipartite.eigenpairs.len() + 1);
        Ok(SpectralAnalysis {
            m,
            n,
            tolerances: *tol,
            full,
            bipartite,
            full_values: eig.values,
            predicted,
            q_eigenvalues,
            full_krylov_rank,
            bipartite_krylov_rank,
        })
    }

    /// The adjacency spectrum of Γ(Rₙ) against the predicted multiset.
    pub fn spectrum_theorem_checks(&self) -> VerificationReport {
        let tol = self.tolerances.match_tolerance;
        let mut report = VerificationReport::default();
        let predicted = self.predicted.multiset();

        let vertex_total = full_vertex_count(self.m, self.n);
        report.push(Check::new(
            "predicted_total_multiplicity",
            self.predicted.total_multiplicity() == vertex_total,
            0.0,
            format!(
                "predicted multiplicities sum to {}, graph has {vertex_total} vertices",
                self.predicted.total_multiplicity()
            ),
        ));

        let expanded: Vec<f64> = predicted
            .iter()
            .flat_map(|&(v, k)| core::iter::repeat(v).take(k))
            .collect();
        let mut values_check = compare_sets("spectrum_values", self.full_values.clone(), expanded, tol);
        values_check.detail = format!("largest deviation {:e}", values_check.residual);
        report.push(values_check);

        // multiplicities: every predicted value must meet one computed group
        // of exactly that size
        let mut residual: f64 = 0.0;
        let mut problems = Vec::new();
        let mut used = vec![false; self.full.eigenpairs.len()];
        for &(value, mult) in &predicted {
            let hit = self
                .full
                .eigenpairs
                .iter()
                .enumerate()
                .filter(|(_, p)| Float::abs(p.value - value) <= tol)
                .min_by(|a, b| Float::abs(a.1.value - value).total_cmp(&Float::abs(b.1.value - value)));
            match hit {
                Some((idx, p)) if !used[idx] => {
                    used[idx] = true;
                    residual = residual.max(Float::abs(p.value - value));
                    if p.multiplicity != mult {
                        problems.push(format!(
                            "eigenvalue {value}: multiplicity {} computed, {mult} predicted (delta {})",
                            p.multiplicity,
                            p.multiplicity as i64 - mult as i64
                        ));
                    }
                }
                _ => problems.push(format!("eigenvalue {value} (multiplicity {mult}) not found")),
            }
        }
        for (idx, p) in self.full.eigenpairs.iter().enumerate() {
            if !used[idx] {
                problems.push(format!(
                    "computed eigenvalue {} (multiplicity {}) not predicted",
                    p.value, p.multiplicity
                ));
            }
        }
        report.push(Check::new(
            "spectrum_multiplicities",
            problems.is_empty(),
            residual,
            if problems.is_empty() {
                format!("{} distinct eigenvalues matched", predicted.len())
            } else {
                problems.join("; ")
            },
        ));

        let expected_zero = zero_multiplicity(self.m, self.n).unwrap_or(u128::MAX);
        let zero_group = self
            .full
            .eigenpairs
            .iter()
            .find(|p| Float::abs(p.value) <= tol)
            .map_or(0, |p| p.multiplicity as u128);
        report.push(Check::new(
            "zero_multiplicity",
            zero_group == expected_zero && (self.m != 2 || zero_group == 0),
            0.0,
            format!("computed {zero_group}, predicted {expected_zero}"),
        ));

        // P-eigenvalues must be pairwise separated by more than the grouping gap
        let gap = self.full.grouping_gap;
        let min_sep = self
            .predicted
            .p_eigenvalues
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min);
        report.push(Check::new(
            "p_eigenvalues_simple",
            min_sep > gap,
            min_sep,
            format!("smallest separation {min_sep:e}, grouping gap {gap:e}"),
        ));
        report
    }

    /// Main spectra of Γ and Γ′ against the quotient spectra.
    pub fn main_correspondence_checks(&self) -> VerificationReport {
        let tol = self.tolerances.match_tolerance;
        let mut report = VerificationReport::default();
        report.push(compare_sets(
            "main_full_equals_eig_p",
            self.full.main_values(),
            self.predicted.p_eigenvalues.clone(),
            tol,
        ));
        report.push(compare_sets(
            "main_bipartite_equals_eig_q",
            self.bipartite.main_values(),
            self.q_eigenvalues.clone(),
            tol,
        ));
        let nonzero_non_main: Vec<f64> = self
            .full
            .non_main_values()
            .into_iter()
            .filter(|v| Float::abs(*v) > tol)
            .collect();
        let negated: Vec<f64> = self.bipartite.main_values().iter().map(|v| -v).collect();
        report.push(compare_sets(
            "nonzero_non_main_full_equals_neg_main_bipartite",
            nonzero_non_main,
            negated,
            tol,
        ));
        let expected = self.n - 1;
        let counts = [
            self.full.main_count(),
            self.bipartite.main_count(),
            self.full_krylov_rank,
            self.bipartite_krylov_rank,
        ];
        report.push(Check::new(
            "main_counts_equal_krylov_rank",
            counts.iter().all(|&c| c == expected),
            0.0,
            format!(
                "main(Γ) = {}, main(Γ′) = {}, krylov(Γ) = {}, krylov(Γ′) = {}, n−1 = {expected}",
                counts[0], counts[1], counts[2], counts[3]
            ),
        ));
        report
    }
}

/// Spectrum theorem check for one `(m, n)`.
pub fn verify_spectrum_theorem(m: u64, n: usize, tolerance: f64) -> Result<VerificationReport> {
    let tol = Tolerances {
        match_tolerance: tolerance,
        ..Tolerances::default()
    };
    let analysis = SpectralAnalysis::compute(m, n, &tol, &Limits::default())?;
    Ok(analysis.spectrum_theorem_checks())
}

/// Main-eigenvalue correspondences for one `(m, n)`.
pub fn verify_main_correspondences(m: u64, n: usize, tolerance: f64) -> Result<VerificationReport> {
    let tol = Tolerances {
        match_tolerance: tolerance,
        ..Tolerances::default()
    };
    let analysis = SpectralAnalysis::compute(m, n, &tol, &Limits::default())?;
    Ok(analysis.main_correspondence_checks())
}

/// For each `i ∈ 1..n−1`, checks in exact ℚ(√(4m−3)) arithmetic that
/// `det(Q[m,n] + φ^i·ξ^(n−i)·I) = 0`. Fails with `NonzeroDeterminant`.
pub fn q_eigen_exact_check(m: u64, n: usize) -> Result<VerificationReport> {
    let q = build_q(m, n)?;
    let (phi, xi) = golden_pair(m)?;
    let base = q.entries().map(|x| QuadraticNumber::from_int(x.clone()));
    let mut report = VerificationReport::default();
    for i in 1..n {
        let shift = &phi.pow(i as u32) * &xi.pow((n - i) as u32);
        let mut shifted = base.clone();
        for d in 0..q.order() {
            shifted[(d, d)] = &shifted[(d, d)] + &shift;
        }
        let det = linalg::det_field(&shifted);
        if !det.is_zero() {
            return Err(Error::NonzeroDeterminant {
                index: i,
                residual: crate::field::display_string(&det),
            });
        }
        report.push(Check::new(
            "q_eigen_exact",
            true,
            0.0,
            format!("det(Q + ({shift})·I) = 0 for i = {i}"),
        ));
    }
    Ok(report)
}
