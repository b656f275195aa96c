//! Generalized Fibonacci numbers `F(m,k) = F(m,k-1) + (m-1)·F(m,k-2)` with
//! seeds `F(m,0) = F(m,1) = 1`.
//!
//! The consecutive ratios `γ(m,k) = F(m,k+1)/F(m,k)` are the Vandermonde
//! nodes of both walk-matrix factorizations, and their pairwise distinctness
//! is what makes those walk matrices invertible.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::error::{check_min, Error, Result};
use crate::field::{rational_from_int, QuadraticNumber, Rational};

/// Memoized `F(m,k)` for one fixed `m`.
///
/// The cache only grows; values already computed are never recomputed.
#[derive(Clone, Debug)]
pub struct FibSequence {
    m: u64,
    weight: BigInt,
    cache: Vec<BigInt>,
}

impl FibSequence {
    pub fn new(m: u64) -> Result<Self> {
        check_min("m", m, 2)?;
        Ok(FibSequence {
            m,
            weight: BigInt::from(m - 1),
            cache: vec![BigInt::one(), BigInt::one()],
        })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Extends the cache so that indices `0..=k` are available.
    pub fn extend_to(&mut self, k: usize) {
        while self.cache.len() <= k {
            let len = self.cache.len();
            let next = &self.cache[len - 1] + &self.weight * &self.cache[len - 2];
            self.cache.push(next);
        }
    }

    /// `F(m,k)`, extending the cache when needed.
    pub fn value(&mut self, k: usize) -> &BigInt {
        self.extend_to(k);
        &self.cache[k]
    }

    /// `F(m,k)` if it is already cached.
    pub fn get(&self, k: usize) -> Option<&BigInt> {
        self.cache.get(k)
    }

    pub fn cached_len(&self) -> usize {
        self.cache.len()
    }

    /// `γ(m,k) = F(m,k+1) / F(m,k)` in lowest terms.
    pub fn gamma(&mut self, k: usize) -> Rational {
        self.extend_to(k + 1);
        Rational::new(self.cache[k + 1].clone(), self.cache[k].clone())
    }

    /// `F(m,k)^e`.
    pub fn power(&mut self, k: usize, e: u32) -> BigInt {
        Pow::pow(self.value(k), e)
    }

    /// `(F(m,l)·F(m,r+1) − F(m,l+1)·F(m,r)) − (1−m)^(r+1)·F(m,l−r−1)`.
    pub fn docagne_residual(&mut self, l: usize, r: usize) -> Result<BigInt> {
        if l <= r {
            return Err(Error::IndexOrder { l, r });
        }
        self.extend_to(l + 1);
        let f = &self.cache;
        let lhs = &f[l] * &f[r + 1] - &f[l + 1] * &f[r];
        let sign_base = BigInt::one() - BigInt::from(self.m);
        let rhs = Pow::pow(&sign_base, (r + 1) as u32) * &f[l - r - 1];
        Ok(lhs - rhs)
    }
}

/// `F(m,k)`.
pub fn fib(m: u64, k: usize) -> Result<BigInt> {
    Ok(FibSequence::new(m)?.value(k).clone())
}

/// `γ(m,k) = F(m,k+1) / F(m,k)`.
pub fn gamma(m: u64, k: usize) -> Result<Rational> {
    Ok(FibSequence::new(m)?.gamma(k))
}

/// Residual of the D'Ocagne-type identity; zero whenever the identity holds.
/// Requires `l > r`.
pub fn docagne_residual(m: u64, l: usize, r: usize) -> Result<BigInt> {
    FibSequence::new(m)?.docagne_residual(l, r)
}

/// The generalized golden ratio `φ = (1 + √(4m−3))/2` and its conjugate
/// `ξ = −(m−1)/φ = (1 − √(4m−3))/2`, the two roots of `x² − x − (m−1)`.
pub fn golden_pair(m: u64) -> Result<(QuadraticNumber, QuadraticNumber)> {
    check_min("m", m, 2)?;
    let d = 4 * m - 3;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let phi = QuadraticNumber::new(half.clone(), half.clone(), d);
    let minus_weight = QuadraticNumber::from_rational(rational_from_int(-(BigInt::from(m - 1))));
    let xi = &minus_weight / &phi;
    Ok((phi, xi))
}
