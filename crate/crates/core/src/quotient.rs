//! Pascal-type quotient matrices and their walk matrices.
//!
//! With 1-based indices `i, j ∈ 1..n−1`:
//!
//! ```text
//! P[m,n](i,j) = C(i, n−j)·(m−1)^(n−j)        if i + j ≥ n, else 0
//! Q[m,n](i,j) = C(i−1, n−j−1)·(m−1)^(n−j)    if i + j ≥ n, else 0
//! ```
//!
//! `P` is the quotient of Γ(Rₙ) by the zero-count partition, `Q` the quotient of
//! the bipartite subgraph Γ′(Rₙ). The walk matrix of `B` has columns
//! `e, Be, …, B^(n−2)e`. Both walk matrices have closed forms in terms of
//! `F(m,k)` and factor as `V·D·U` with `V` the Vandermonde matrix on the nodes
//! `γ(m,0), …, γ(m,n−2)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::error::{check_min, Error, Result};
use crate::fib::FibSequence;
use crate::field::{rational_from_int, rational_to_f64, Rational};
use crate::linalg;
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuotientKind {
    P,
    Q,
}

impl fmt::Display for QuotientKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuotientKind::P => "P",
            QuotientKind::Q => "Q",
        })
    }
}

/// Pascal's triangle up to row `n`, exact.
pub fn binomial_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for r in 0..=n {
        let mut row = vec![BigInt::one(); r + 1];
        for c in 1..r {
            row[c] = &rows[r - 1][c - 1] + &rows[r - 1][c];
        }
        rows.push(row);
    }
    rows
}

fn binom(table: &[Vec<BigInt>], n: usize, k: usize) -> BigInt {
    if k > n {
        BigInt::zero()
    } else {
        table[n][k].clone()
    }
}

fn check_params(m: u64, n: usize) -> Result<()> {
    check_min("m", m, 2)?;
    check_min("n", n as u64, 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMatrix {
    kind: QuotientKind,
    m: u64,
    n: usize,
    entries: Matrix<BigInt>,
}

impl QuotientMatrix {
    pub fn build(kind: QuotientKind, m: u64, n: usize) -> Result<Self> {
        check_params(m, n)?;
        let table = binomial_table(n);
        let weight = BigInt::from(m - 1);
        let size = n - 1;
        let entries = Matrix::from_fn(size, size, |r, c| {
            let (i, j) = (r + 1, c + 1);
            if i + j < n {
                return BigInt::zero();
            }
            let power = Pow::pow(&weight, (n - j) as u32);
            match kind {
                QuotientKind::P => binom(&table, i, n - j) * power,
                QuotientKind::Q => binom(&table, i - 1, n - j - 1) * power,
            }
        });
        Ok(QuotientMatrix { kind, m, n, entries })
    }

    pub fn kind(&self) -> QuotientKind {
        self.kind
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Order of the matrix, `n − 1`.
    pub fn order(&self) -> usize {
        self.n - 1
    }

    pub fn entries(&self) -> &Matrix<BigInt> {
        &self.entries
    }

    /// Sizes of the cells the matrix is the quotient over:
    /// `|D_i| = C(n,i)(m−1)^(n−i)` for `P` and `|D′_i| = 2·C(n−2,i−1)(m−1)^(n−i)`
    /// for `Q`.
    pub fn cell_sizes(&self) -> Vec<BigInt> {
        let table = binomial_table(self.n);
        let weight = BigInt::from(self.m - 1);
        (1..self.n)
            .map(|i| {
                let power = Pow::pow(&weight, (self.n - i) as u32);
                match self.kind {
                    QuotientKind::P => binom(&table, self.n, i) * power,
                    QuotientKind::Q => BigInt::from(2) * binom(&table, self.n - 2, i - 1) * power,
                }
            })
            .collect()
    }

    /// The symmetric matrix `S^(1/2)·B·S^(−1/2)` with `S = diag(cell sizes)`.
    ///
    /// Equitable quotients satisfy `s_i·b_ij = s_j·b_ji`, so this matrix is
    /// symmetric and has the same (real) spectrum as `B`.
    pub fn symmetrized(&self) -> Matrix<f64> {
        let sizes = self.cell_sizes();
        Matrix::from_fn(self.order(), self.order(), |i, j| {
            let b = &self.entries[(i, j)];
            if b.is_zero() {
                return 0.0;
            }
            let ratio = Rational::new(sizes[i].clone(), sizes[j].clone());
            rational_to_f64(&Rational::from_integer(b.clone())) * num_traits::Float::sqrt(rational_to_f64(&ratio))
        })
    }

    /// Walk matrix by repeated exact matrix-vector products.
    pub fn walk_matrix(&self) -> WalkMatrix {
        walk_matrix_iterative(self)
    }
}

/// `P[m,n]`.
pub fn build_p(m: u64, n: usize) -> Result<QuotientMatrix> {
    QuotientMatrix::build(QuotientKind::P, m, n)
}

/// `Q[m,n]`.
pub fn build_q(m: u64, n: usize) -> Result<QuotientMatrix> {
    QuotientMatrix::build(QuotientKind::Q, m, n)
}

/// Walk counts `[e, Be, …, B^(n−2)e]` of a quotient matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkMatrix {
    kind: QuotientKind,
    m: u64,
    n: usize,
    matrix: Matrix<BigInt>,
}

impl WalkMatrix {
    pub fn kind(&self) -> QuotientKind {
        self.kind
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix<BigInt> {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        linalg::rank_int(&self.matrix)
    }

    pub fn determinant(&self) -> BigInt {
        linalg::det_int(&self.matrix)
    }
}

pub fn walk_matrix_iterative(b: &QuotientMatrix) -> WalkMatrix {
    let order = b.order();
    let mut columns = Vec::with_capacity(order);
    let mut current = vec![BigInt::one(); order];
    for _ in 0..order {
        let next = b.entries.mul_vec(&current);
        columns.push(core::mem::replace(&mut current, next));
    }
    WalkMatrix {
        kind: b.kind,
        m: b.m,
        n: b.n,
        matrix: Matrix::from_columns(columns).expect("columns share the order of B"),
    }
}

/// `h_0 = 1`, `h_j = F(m,j+1)^n − Σ_{r<j} h_r·F(m,j−r)^n`, for `j = 0..=max(0, n−3)`.
pub fn h_coefficients(m: u64, n: usize) -> Result<Vec<BigInt>> {
    check_params(m, n)?;
    let mut fib = FibSequence::new(m)?;
    h_with(&mut fib, n, n.saturating_sub(3))
}

fn h_with(fib: &mut FibSequence, n: usize, last: usize) -> Result<Vec<BigInt>> {
    let e = n as u32;
    let mut h: Vec<BigInt> = Vec::with_capacity(last + 1);
    h.push(BigInt::one());
    for j in 1..=last {
        let mut value = fib.power(j + 1, e);
        for (r, hr) in h.iter().enumerate() {
            value -= hr * fib.power(j - r, e);
        }
        h.push(value);
    }
    Ok(h)
}

/// Closed-form walk matrix of `P[m,n]`.
///
/// Column `k+1` (for `k ≥ 1`), row `i`:
/// `F_k^n·γ_k^i − Σ_{j<k} h_j·F_{k−j−1}^n·γ_{k−j−1}^i`, evaluated through the
/// integer identity `F_k^n·γ_k^i = F_k^(n−i)·F_(k+1)^i`.
pub fn walk_matrix_closed_p(m: u64, n: usize) -> Result<WalkMatrix> {
    check_params(m, n)?;
    let mut fib = FibSequence::new(m)?;
    let order = n - 1;
    fib.extend_to(order + 1);
    let h = h_with(&mut fib, n, n.saturating_sub(3))?;
    // term(k, i) = F_k^(n−i) · F_(k+1)^i
    let mut term = |k: usize, i: usize| fib.power(k, (n - i) as u32) * fib.power(k + 1, i as u32);
    let mut matrix = Matrix::zeros(order, order);
    for r in 0..order {
        let i = r + 1;
        matrix[(r, 0)] = BigInt::one();
        for k in 1..order {
            let mut value = term(k, i);
            for (j, hj) in h.iter().enumerate().take(k) {
                value -= hj * term(k - j - 1, i);
            }
            matrix[(r, k)] = value;
        }
    }
    Ok(WalkMatrix {
        kind: QuotientKind::P,
        m,
        n,
        matrix,
    })
}

/// Closed-form walk matrix of `Q[m,n]`:
/// `(m−1)^k·F_k^(n−2)·γ_k^(i−1) = (m−1)^k·F_k^(n−i−1)·F_(k+1)^(i−1)`.
pub fn walk_matrix_closed_q(m: u64, n: usize) -> Result<WalkMatrix> {
    check_params(m, n)?;
    let mut fib = FibSequence::new(m)?;
    let order = n - 1;
    fib.extend_to(order + 1);
    let weight = BigInt::from(m - 1);
    let matrix = Matrix::from_fn(order, order, |r, k| {
        let i = r + 1;
        Pow::pow(&weight, k as u32)
            * fib.power(k, (n - i - 1) as u32)
            * fib.power(k + 1, (i - 1) as u32)
    });
    Ok(WalkMatrix {
        kind: QuotientKind::Q,
        m,
        n,
        matrix,
    })
}

pub fn walk_matrix_closed(kind: QuotientKind, m: u64, n: usize) -> Result<WalkMatrix> {
    match kind {
        QuotientKind::P => walk_matrix_closed_p(m, n),
        QuotientKind::Q => walk_matrix_closed_q(m, n),
    }
}

/// `W = V·D·U` over ℚ.
///
/// * `V(i,k) = γ_(k−1)^(i−1)`, the Vandermonde matrix on `γ_0..γ_(n−2)`;
/// * `D = diag(F_k^n·γ_k)` for `P`, `diag((m−1)^k·F_k^(n−2))` for `Q`;
/// * `U` is unitriangular: column `k+1` of `U` holds `−h_(k−1), …, −h_0, 1`
///   for `P`, and `U = I` for `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkFactorization {
    pub kind: QuotientKind,
    pub m: u64,
    pub n: usize,
    pub nodes: Vec<Rational>,
    pub vandermonde: Matrix<Rational>,
    pub diagonal: Vec<Rational>,
    pub unitriangular: Matrix<Rational>,
}

impl WalkFactorization {
    pub fn product(&self) -> Matrix<Rational> {
        let d = Matrix::diagonal(&self.diagonal);
        self.vandermonde
            .mul_mat(&d)
            .and_then(|vd| vd.mul_mat(&self.unitriangular))
            .expect("factors are square of equal order")
    }

    /// The product as an integer walk matrix, or `NonIntegral` if some entry
    /// fails to reduce to an integer.
    pub fn reconstruct(&self) -> Result<WalkMatrix> {
        let product = self.product();
        let mut out = Matrix::zeros(product.rows(), product.cols());
        for r in 0..product.rows() {
            for c in 0..product.cols() {
                let v = &product[(r, c)];
                if !v.is_integer() {
                    return Err(Error::NonIntegral {
                        row: r + 1,
                        col: c + 1,
                        value: alloc::format!("{v}"),
                    });
                }
                out[(r, c)] = v.to_integer();
            }
        }
        Ok(WalkMatrix {
            kind: self.kind,
            m: self.m,
            n: self.n,
            matrix: out,
        })
    }

    /// `Π_{r<l} (γ_l − γ_r)`.
    pub fn vandermonde_det(&self) -> Rational {
        vandermonde_product(&self.nodes)
    }

    pub fn diagonal_det(&self) -> Rational {
        self.diagonal.iter().fold(Rational::one(), |acc, d| acc * d)
    }
}

fn vandermonde_product(nodes: &[Rational]) -> Rational {
    let mut acc = Rational::one();
    for l in 0..nodes.len() {
        for r in 0..l {
            acc *= &nodes[l] - &nodes[r];
        }
    }
    acc
}

/// The nodes `γ_k` and the scale factors `C_k` of the factorization.
fn nodes_and_scales(kind: QuotientKind, m: u64, n: usize) -> Result<(Vec<Rational>, Vec<BigInt>)> {
    check_params(m, n)?;
    let mut fib = FibSequence::new(m)?;
    let order = n - 1;
    let nodes: Vec<Rational> = (0..order).map(|k| fib.gamma(k)).collect();
    let weight = BigInt::from(m - 1);
    let scales = (0..order)
        .map(|k| match kind {
            QuotientKind::P => fib.power(k, n as u32),
            QuotientKind::Q => Pow::pow(&weight, k as u32) * fib.power(k, (n - 2) as u32),
        })
        .collect();
    Ok((nodes, scales))
}

pub fn factorize_walk(m: u64, n: usize, kind: QuotientKind) -> Result<WalkFactorization> {
    let (nodes, scales) = nodes_and_scales(kind, m, n)?;
    let order = n - 1;
    let vandermonde = Matrix::from_fn(order, order, |i, k| pow_rational(&nodes[k], i as u32));
    let diagonal: Vec<Rational> = match kind {
        QuotientKind::P => scales
            .iter()
            .zip(&nodes)
            .map(|(c, g)| Rational::from_integer(c.clone()) * g)
            .collect(),
        QuotientKind::Q => scales.into_iter().map(Rational::from_integer).collect(),
    };
    let unitriangular = match kind {
        QuotientKind::Q => Matrix::identity(order),
        QuotientKind::P => {
            let h = h_coefficients(m, n)?;
            Matrix::from_fn(order, order, |row, col| {
                if row == col {
                    Rational::one()
                } else if row < col {
                    // column k+1 = col, coefficient of v_(k−j−1) is −h_j
                    let j = col - row - 1;
                    rational_from_int(-h[j].clone())
                } else {
                    Rational::zero()
                }
            })
        }
    };
    Ok(WalkFactorization {
        kind,
        m,
        n,
        nodes,
        vandermonde,
        diagonal,
        unitriangular,
    })
}

fn pow_rational(x: &Rational, e: u32) -> Rational {
    Pow::pow(x, e)
}

/// `det W` from the product formula: `Π_{r<l}(γ_l − γ_r)·Π_k C_k·γ_k` for `P`
/// and `Π_{r<l}(γ_l − γ_r)·Π_k C_k` for `Q`.
pub fn det_walk_formula(m: u64, n: usize, kind: QuotientKind) -> Result<Rational> {
    let (nodes, scales) = nodes_and_scales(kind, m, n)?;
    let mut det = vandermonde_product(&nodes);
    for (k, c) in scales.into_iter().enumerate() {
        det *= Rational::from_integer(c);
        if kind == QuotientKind::P {
            det *= &nodes[k];
        }
    }
    Ok(det)
}

pub use crate::linalg::exact_rank;
