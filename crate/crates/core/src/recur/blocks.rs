use num_complex::Complex;
use num_traits::{One, Zero};
use serde::Serialize;

use super::CoefficientSet;
use crate::scalar::Real;

/// Dense square block, row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Block<T> {
    size: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> Block<T> {
    fn zeros(size: usize) -> Self {
        Self {
            size,
            data: vec![Complex::zero(); size * size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.size + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.size + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Complex<T>>> {
        self.data.chunks(self.size).map(<[_]>::to_vec).collect()
    }

    /// Positions and values of the nonzero entries.
    pub fn nonzeros(&self) -> Vec<(usize, usize, Complex<T>)> {
        (0..self.size)
            .flat_map(|i| (0..self.size).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let v = self.get(i, j);
                (!v.is_zero()).then_some((i, j, v))
            })
            .collect()
    }
}

/// Block-tridiagonal form of the Jacobi matrix: block row `r` holds `C` at
/// block column `r−1`, `B` at `r` and `A` at `r+1`.
///
/// Row `n` of the assembled matrix is `(β_n, α_n, 1)` at columns
/// `(n−1, n, n+1)`, so `J·(φ₀(μ), φ₁(μ), …)ᵀ = μ·(φ₀(μ), φ₁(μ), …)ᵀ` row by
/// row whenever the vector is generated by the recurrence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JacobiBlocks<T> {
    pub a: Block<T>,
    pub b: Block<T>,
    pub c: Block<T>,
}

impl<T: Real> JacobiBlocks<T> {
    pub fn new(coeffs: &CoefficientSet<T>) -> Self {
        let n = coeffs.period();
        let mut a = Block::zeros(n);
        let mut b = Block::zeros(n);
        let mut c = Block::zeros(n);
        a.set(n - 1, 0, Complex::one());
        // row 0 of each block couples to the last column of the previous one
        c.set(0, n - 1, coeffs.beta_at(0));
        for i in 0..n {
            b.set(i, i, coeffs.alpha_at(i));
            if i + 1 < n {
                b.set(i, i + 1, Complex::one());
                b.set(i + 1, i, coeffs.beta_at(i + 1));
            }
        }
        Self { a, b, c }
    }

    pub fn period(&self) -> usize {
        self.b.size()
    }

    /// Entry `(i, j)` of the semi-infinite matrix.
    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        let n = self.period();
        let (bi, li) = (i / n, i % n);
        let (bj, lj) = (j / n, j % n);
        if bi == bj {
            self.b.get(li, lj)
        } else if bj == bi + 1 {
            self.a.get(li, lj)
        } else if bi == bj + 1 {
            self.c.get(li, lj)
        } else {
            Complex::zero()
        }
    }

    /// Leading `size × size` truncation.
    pub fn truncated(&self, size: usize) -> Vec<Vec<Complex<T>>> {
        (0..size)
            .map(|i| (0..size).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// `(J·x)_i` for the rows `i < x.len() − 1`, the rows whose three entries
    /// all fall inside `x`.
    pub fn apply_interior(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        let rows = x.len().saturating_sub(1);
        (0..rows)
            .map(|i| {
                let lo = i.saturating_sub(1);
                (lo..=i + 1).fold(Complex::zero(), |acc, j| acc + self.entry(i, j) * x[j])
            })
            .collect()
    }
}
