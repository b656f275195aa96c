//! Exact spectral machinery for the zero-divisor graph Γ(Rₙ) of
//! Rₙ = 𝔽ₘ × ⋯ × 𝔽ₘ and its bipartite subgraph Γ′(Rₙ).
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches
//! files, terminals or serialization lives in the `zdspec` companion crate.
//!
//! Layout:
//!
//! * [`fib`]: generalized Fibonacci numbers `F(m,k)` with seeds `F(m,0) = F(m,1) = 1`,
//!   their ratios, the D'Ocagne-type identity and the golden pair `(φ, ξ)`.
//! * [`field`]: exact rationals and numbers of the form `a + b√d`.
//! * [`quotient`]: the Pascal-type quotient matrices `P[m,n]`, `Q[m,n]`,
//!   their walk matrices (by iteration and in closed form) and the
//!   Vandermonde factorization of those walk matrices.
//! * [`linalg`]: fraction-free elimination (rank, determinant) and a generic
//!   determinant over any exact field.
//! * [`graph`]: explicit construction of Γ(Rₙ), Γ′(Rₙ) and their zero-count
//!   partitions.
//! * [`eigen`]: a cyclic Jacobi eigensolver for dense symmetric matrices.
//! * [`spectra`]: main/non-main classification, Krylov ranks and the
//!   spectrum checks tying the graphs to their quotients.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod eigen;
pub mod error;
pub mod fib;
pub mod field;
pub mod graph;
pub mod linalg;
pub mod matrix;
pub mod quotient;
pub mod spectra;

pub use error::{Error, Result};
pub use fib::{docagne_residual, fib, gamma, golden_pair, FibSequence};
pub use field::{QuadraticNumber, Rational};
pub use graph::{BipartiteSubgraph, GraphKind, VertexTuple, ZeroDivisorGraph, DEFAULT_SIZE_CAP};
pub use matrix::Matrix;
pub use quotient::{QuotientKind, QuotientMatrix, WalkFactorization, WalkMatrix};
pub use spectra::{PredictedSpectrum, SpectralReport, Tolerances};
