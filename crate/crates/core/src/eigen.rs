//! Cyclic Jacobi eigensolver for dense real symmetric matrices.
//!
//! Each sweep visits every pair `(p, q)` with `p < q` in row order and applies
//! the plane rotation that annihilates `a_pq`. Iteration stops once the
//! off-diagonal Frobenius norm drops below `tolerance · ‖A‖_F`.

use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Relative off-diagonal tolerance used by [`symmetric_eigen`].
pub const DEFAULT_CONVERGENCE: f64 = 1e-12;
/// Sweep cap used by [`symmetric_eigen`].
pub const DEFAULT_MAX_SWEEPS: usize = 100;

#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// `vectors[j]` is the unit eigenvector for `values[j]`.
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
    /// Off-diagonal Frobenius norm of the final rotated matrix.
    pub off_norm: f64,
    /// `‖A‖_F` of the input.
    pub frobenius: f64,
}

impl SymmetricEigen {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `Σ λ_j v_j v_jᵀ`.
    pub fn reconstruct(&self) -> Matrix<f64> {
        let n = self.dim();
        let mut out = Matrix::zeros(n, n);
        for (lambda, v) in self.values.iter().zip(&self.vectors) {
            for i in 0..n {
                let li = lambda * v[i];
                for j in 0..n {
                    out[(i, j)] += li * v[j];
                }
            }
        }
        out
    }
}

pub fn frobenius_norm(a: &Matrix<f64>) -> f64 {
    Float::sqrt(a.as_slice().iter().map(|x| x * x).sum::<f64>())
}

/// Full eigen-decomposition with the default tolerance and sweep cap.
pub fn symmetric_eigen(a: &Matrix<f64>) -> Result<SymmetricEigen> {
    symmetric_eigen_with(a, DEFAULT_CONVERGENCE, DEFAULT_MAX_SWEEPS)
}

pub fn symmetric_eigen_with(a: &Matrix<f64>, tolerance: f64, max_sweeps: usize) -> Result<SymmetricEigen> {
    if !a.is_square() {
        return Err(Error::Shape(alloc::format!(
            "eigen-decomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let frobenius = frobenius_norm(a);
    let mut work: Vec<Vec<f64>> = a.to_rows();
    // rows of `basis` are the accumulated eigenvectors
    let mut basis: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = alloc::vec![0.0; n];
            row[i] = 1.0;
            row
        })
        .collect();

    let target = tolerance * frobenius;
    let mut sweeps = 0;
    let mut off = off_diagonal_norm(&work);
    while off > target {
        if sweeps == max_sweeps {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        // early sweeps only rotate the larger elements
        let threshold = if sweeps < 3 && n > 0 {
            0.2 * off / (n * n) as f64
        } else {
            0.0
        };
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = Float::abs(work[p][q]);
                if apq <= threshold {
                    continue;
                }
                // once an element is below rounding of both diagonal entries,
                // dropping it changes nothing representable
                let g = 100.0 * apq;
                if sweeps >= 4
                    && Float::abs(work[p][p]) + g == Float::abs(work[p][p])
                    && Float::abs(work[q][q]) + g == Float::abs(work[q][q])
                {
                    work[p][q] = 0.0;
                    work[q][p] = 0.0;
                    continue;
                }
                rotate(&mut work, &mut basis, p, q);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&work);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| work[i][i].total_cmp(&work[j][j]));
    let values = order.iter().map(|&i| work[i][i]).collect();
    let vectors = order.iter().map(|&i| core::mem::take(&mut basis[i])).collect();
    Ok(SymmetricEigen {
        values,
        vectors,
        sweeps,
        off_norm: off,
        frobenius,
    })
}

fn off_diagonal_norm(a: &[Vec<f64>]) -> f64 {
    let mut sum = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j {
                sum += x * x;
            }
        }
    }
    Float::sqrt(sum)
}

/// Annihilates `a[p][q]` (and `a[q][p]`) with one Jacobi rotation.
fn rotate(a: &mut [Vec<f64>], basis: &mut [Vec<f64>], p: usize, q: usize) {
    let apq = a[p][q];
    if apq == 0.0 {
        return;
    }
    let app = a[p][p];
    let aqq = a[q][q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = Float::signum(theta) / (Float::abs(theta) + Float::sqrt(theta * theta + 1.0));
    let c = 1.0 / Float::sqrt(t * t + 1.0);
    let s = t * c;
    let tau = s / (1.0 + c);

    let (row_p, row_q) = pair_mut(a, p, q);
    for k in 0..row_p.len() {
        if k == p || k == q {
            continue;
        }
        let akp = row_p[k];
        let akq = row_q[k];
        row_p[k] = akp - s * (akq + tau * akp);
        row_q[k] = akq + s * (akp - tau * akq);
    }
    row_p[p] = app - t * apq;
    row_q[q] = aqq + t * apq;
    row_p[q] = 0.0;
    row_q[p] = 0.0;
    // mirror the updated rows into the columns
    #[allow(clippy::needless_range_loop)]
    for k in 0..a.len() {
        if k != p && k != q {
            let (vp, vq) = (a[p][k], a[q][k]);
            a[k][p] = vp;
            a[k][q] = vq;
        }
    }

    let (bp, bq) = pair_mut(basis, p, q);
    for (x, y) in bp.iter_mut().zip(bq.iter_mut()) {
        let (vp, vq) = (*x, *y);
        *x = vp - s * (vq + tau * vp);
        *y = vq + s * (vp - tau * vq);
    }
}

fn pair_mut<T>(rows: &mut [T], p: usize, q: usize) -> (&mut T, &mut T) {
    debug_assert!(p < q);
    let (head, tail) = rows.split_at_mut(q);
    (&mut head[p], &mut tail[0])
}
