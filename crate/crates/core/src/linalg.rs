//! Exact elimination.
//!
//! Integer matrices go through fraction-free (Bareiss) elimination; every
//! intermediate division is exact, so entries stay bounded by the minors of the
//! input. Pivoting is deterministic: the first nonzero entry in the current
//! column, scanning rows top to bottom.

use alloc::vec::Vec;
use core::ops::{Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::Rational;
use crate::matrix::Matrix;

/// Runs Bareiss elimination in place. Returns the rank, whether an odd number
/// of row swaps happened, and the last pivot. For a nonsingular square input
/// that pivot is the determinant up to the swap sign.
fn bareiss(rows: &mut [Vec<BigInt>], cols: usize) -> (usize, bool, BigInt) {
    let nrows = rows.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut negated = false;

    for col in 0..cols {
        if rank == nrows {
            break;
        }
        let Some(pivot_row) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        if pivot_row != rank {
            rows.swap(pivot_row, rank);
            negated = !negated;
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for j in (col + 1)..cols {
                let v = &pivot[col] * &row[j] - &factor * &pivot[j];
                debug_assert!((&v % &prev).is_zero());
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = head[rank][col].clone();
        rank += 1;
    }
    (rank, negated, prev)
}

/// Rank of an integer matrix over ℚ.
pub fn rank_int(m: &Matrix<BigInt>) -> usize {
    let mut rows = m.to_rows();
    bareiss(&mut rows, m.cols()).0
}

/// Rank over ℚ, after clearing denominators row by row.
pub fn exact_rank(m: &Matrix<Rational>) -> usize {
    let mut rows: Vec<Vec<BigInt>> = m.iter_rows().map(clear_denominators).collect();
    bareiss(&mut rows, m.cols()).0
}

fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn det_int(m: &Matrix<BigInt>) -> BigInt {
    assert!(m.is_square(), "determinant needs a square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut rows = m.to_rows();
    let (rank, negated, last) = bareiss(&mut rows, n);
    if rank < n {
        return BigInt::zero();
    }
    if negated {
        -last
    } else {
        last
    }
}

/// Determinant over an exact field by Gaussian elimination with the first
/// nonzero pivot in each column.
pub fn det_field<T>(m: &Matrix<T>) -> T
where
    T: Clone + Zero + One + PartialEq,
    for<'a> &'a T: Sub<&'a T, Output = T> + Mul<&'a T, Output = T> + Div<&'a T, Output = T> + Neg<Output = T>,
{
    assert!(m.is_square(), "determinant needs a square matrix");
    let n = m.rows();
    let mut rows = m.to_rows();
    let mut det = T::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return T::zero();
        };
        if p != col {
            rows.swap(p, col);
            det = -&det;
        }
        let (head, tail) = rows.split_at_mut(col + 1);
        let pivot_row = &head[col];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for j in col..n {
                row[j] = &row[j] - &(&factor * &pivot_row[j]);
            }
        }
        det = &det * &pivot_row[col];
    }
    det
}
