//! Periodic three-term recurrence engine.
//!
//! The sequence is generated by
//!
//! ```text
//! φ₋₁ = 0,  φ₀ = 1,  φ_{n+1}(x) = (x − α_n) φ_n(x) − β_n φ_{n−1}(x),
//! ```
//!
//! with `α_{n+N} = α_n`, `β_{n+N} = β_n`. Inputs written with a `(x + a_n)`
//! factor are mapped through `α_n = −a_n` (see [`Convention`]).

mod blocks;
mod input;

use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cpoly::{chebyshev_u, CPoly, EXACT_DIVISION_TOL};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub use blocks::{Block, JacobiBlocks};
pub use input::CoefficientFile;

/// Magnitude cap for [`PhiSequence::phi_eval_stream`].
pub const OVERFLOW_GUARD: f64 = 1e150;

/// Sign convention of the diagonal coefficients in an input document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `φ_{n+1} = (x − a_n) φ_n − b_n φ_{n−1}`; coefficients used as given.
    #[default]
    RecurrenceMinus,
    /// `φ_{n+1} = (x + a_n) φ_n − b_n φ_{n−1}`; mapped by `α_n = −a_n`.
    RecurrencePlus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientSet<T> {
    period: usize,
    alpha: Vec<Complex<T>>,
    beta: Vec<Complex<T>>,
}

impl<T: Real> CoefficientSet<T> {
    /// Coefficients in the `(x − α_n)` convention. `alpha` and `beta` must have
    /// the same nonzero length and every `β_k` must be nonzero.
    pub fn new(alpha: Vec<Complex<T>>, beta: Vec<Complex<T>>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::InvalidCoefficients(
                "period must be at least 1".into(),
            ));
        }
        if alpha.len() != beta.len() {
            return Err(Error::InvalidCoefficients(format!(
                "alpha has {} entries but beta has {}",
                alpha.len(),
                beta.len()
            )));
        }
        if let Some(k) = beta.iter().position(|b| b.is_zero()) {
            return Err(Error::InvalidCoefficients(format!("beta[{k}] is zero")));
        }
        if alpha
            .iter()
            .chain(&beta)
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::InvalidCoefficients("non-finite coefficient".into()));
        }
        Ok(Self {
            period: alpha.len(),
            alpha,
            beta,
        })
    }

    /// All `β_k = 1`.
    pub fn with_unit_beta(alpha: Vec<Complex<T>>) -> Result<Self> {
        let beta = vec![Complex::one(); alpha.len()];
        Self::new(alpha, beta)
    }

    pub fn from_convention(
        alpha: Vec<Complex<T>>,
        beta: Vec<Complex<T>>,
        convention: Convention,
    ) -> Result<Self> {
        let alpha = match convention {
            Convention::RecurrenceMinus => alpha,
            Convention::RecurrencePlus => alpha.into_iter().map(|a| -a).collect(),
        };
        Self::new(alpha, beta)
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn alpha(&self) -> &[Complex<T>] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Complex<T>] {
        &self.beta
    }

    pub fn alpha_at(&self, n: usize) -> Complex<T> {
        self.alpha[n % self.period]
    }

    pub fn beta_at(&self, n: usize) -> Complex<T> {
        self.beta[n % self.period]
    }

    /// `Π β_k`, the determinant of the one-period transfer matrix. The block
    /// recurrence `φ_n = P_N φ_{n−N} − φ_{n−2N}` needs it to equal 1.
    pub fn period_determinant(&self) -> Complex<T> {
        self.beta.iter().fold(Complex::one(), |acc, &b| acc * b)
    }
}

/// Memoized polynomial sequence `φ_n` for one coefficient set.
///
/// The cache is behind a lock, so a sequence can be shared between threads;
/// `phi(n)` always returns the same `Arc` for a given `n`.
pub struct PhiSequence<T> {
    coeffs: CoefficientSet<T>,
    cache: RwLock<Vec<Arc<CPoly<T>>>>,
    minus_one: Arc<CPoly<T>>,
    pn: OnceLock<CPoly<T>>,
}

impl<T: Real> std::fmt::Debug for PhiSequence<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PhiSequence")
            .field("coeffs", &self.coeffs)
            .field("cached", &self.cache.read().map(|c| c.len()).unwrap_or(0))
            .finish()
    }
}

impl<T: Real> Clone for PhiSequence<T> {
    fn clone(&self) -> Self {
        Self::new(self.coeffs.clone())
    }
}

impl<T: Real> PhiSequence<T> {
    pub fn new(coeffs: CoefficientSet<T>) -> Self {
        Self {
            coeffs,
            cache: RwLock::new(vec![Arc::new(CPoly::one())]),
            minus_one: Arc::new(CPoly::zero()),
            pn: OnceLock::new(),
        }
    }

    pub fn coeffs(&self) -> &CoefficientSet<T> {
        &self.coeffs
    }

    pub fn period(&self) -> usize {
        self.coeffs.period
    }

    /// `φ_n` for `n ≥ −1`.
    pub fn phi(&self, n: isize) -> Arc<CPoly<T>> {
        assert!(n >= -1, "phi is defined for n >= -1, got {n}");
        if n == -1 {
            return self.minus_one.clone();
        }
        let n = n as usize;
        if let Some(p) = self.cache.read().unwrap().get(n) {
            return p.clone();
        }
        let mut cache = self.cache.write().unwrap();
        while cache.len() <= n {
            let k = cache.len() - 1;
            let cur = &cache[k];
            let prev: &CPoly<T> = if k == 0 {
                &self.minus_one
            } else {
                &cache[k - 1]
            };
            let next = &(cur.as_ref() * &CPoly::linear(self.coeffs.alpha_at(k)))
                - &prev.scale(self.coeffs.beta_at(k));
            cache.push(Arc::new(next));
        }
        cache[n].clone()
    }

    /// `φ_0(μ), …, φ_{count−1}(μ)` by the scalar recurrence.
    pub fn phi_eval_stream(&self, mu: Complex<T>, count: usize) -> Result<Vec<Complex<T>>> {
        let guard = T::lit(OVERFLOW_GUARD).min(T::max_value().sqrt());
        let mut out = Vec::with_capacity(count);
        let mut prev = Complex::zero();
        let mut cur: Complex<T> = Complex::one();
        for n in 0..count {
            if cur.norm() > guard || !cur.re.is_finite() || !cur.im.is_finite() {
                return Err(Error::Overflow { index: n });
            }
            out.push(cur);
            let next = (mu - self.coeffs.alpha_at(n)) * cur - self.coeffs.beta_at(n) * prev;
            prev = cur;
            cur = next;
        }
        Ok(out)
    }

    /// The period polynomial `P_N = φ_{2N−1} / φ_{N−1}`, monic of degree N.
    pub fn extract_pn(&self) -> Result<CPoly<T>> {
        if let Some(p) = self.pn.get() {
            return Ok(p.clone());
        }
        let n = self.period() as isize;
        let p = self
            .phi(2 * n - 1)
            .div_exact(&self.phi(n - 1), T::lit(EXACT_DIVISION_TOL))?;
        Ok(self.pn.get_or_init(|| p).clone())
    }

    /// `φ_{Nm+k} = φ_{k+N}·U_{m−1}(P_N) − φ_k·U_{m−2}(P_N)` for `m ≥ 2`,
    /// `0 ≤ k < N`.
    pub fn phi_block(&self, m: usize, k: usize) -> Result<CPoly<T>> {
        assert!(m >= 2, "phi_block needs m >= 2");
        let n = self.period();
        assert!(k < n, "residue {k} out of range for period {n}");
        let pn = self.extract_pn()?;
        let u1 = chebyshev_u::<T>(m as isize - 1).compose(&pn);
        let u2 = chebyshev_u::<T>(m as isize - 2).compose(&pn);
        Ok(&(self.phi((k + n) as isize).as_ref() * &u1) - &(self.phi(k as isize).as_ref() * &u2))
    }

    pub fn jacobi_blocks(&self) -> JacobiBlocks<T> {
        JacobiBlocks::new(&self.coeffs)
    }
}
