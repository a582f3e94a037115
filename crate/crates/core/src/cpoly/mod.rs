//! Dense univariate polynomials with complex coefficients.
//!
//! Coefficients are stored lowest degree first and kept in canonical form:
//! the highest stored coefficient is nonzero, and the zero polynomial has no
//! coefficients at all.

mod chebyshev;
mod roots;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use chebyshev::chebyshev_u;
pub use roots::{backward_residual, roots, roots_with, Root, RootOptions, RootSet, DEFAULT_TOL};

/// Remainder norm, relative to the dividend norm, below which a division is
/// treated as exact.
pub const EXACT_DIVISION_TOL: f64 = 1e-8;

#[derive(Clone, PartialEq, Default)]
pub struct CPoly<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> CPoly<T> {
    pub fn new(mut coeffs: Vec<Complex<T>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, T::zero())).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Complex::one())
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Complex::one(), 1)
    }

    /// `c * x^k`
    pub fn monomial(c: Complex<T>, k: usize) -> Self {
        let mut coeffs = vec![Complex::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x - c`
    pub fn linear(c: Complex<T>) -> Self {
        Self::new(vec![-c, Complex::one()])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex<T>]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, &r| &acc * &Self::linear(r))
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex<T>> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Complex<T> {
        self.coeffs.get(k).copied().unwrap_or_else(Complex::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Complex<T> {
        self.coeffs.last().copied().unwrap_or_else(Complex::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// Compensated Horner evaluation: the rounding errors of every product
    /// and sum are carried along in a second Horner pass, so the result is
    /// as accurate as plain Horner run in twice the working precision.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let mut it = self.coeffs.iter().rev();
        let Some(&lead) = it.next() else {
            return Complex::zero();
        };
        let mut s = lead;
        let mut comp = Complex::zero();
        for &c in it {
            let (p, e_mul) = eft::two_prod(s, z);
            let (sum, e_add) = eft::two_sum(p, c);
            s = sum;
            comp = comp * z + (e_mul + e_add);
        }
        s + comp
    }

    /// Plain Horner evaluation.
    pub fn eval_fast(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::zero(), |acc, &c| acc * z + c)
    }

    /// Horner evaluation of `p(z)` together with `Σ|c_k||z|^k`, the scale
    /// against which the rounding error of `p(z)` is measured.
    pub fn eval_with_scale(&self, z: Complex<T>) -> (Complex<T>, T) {
        let r = z.norm();
        let mut value = Complex::zero();
        let mut scale = T::zero();
        for &c in self.coeffs.iter().rev() {
            value = value * z + c;
            scale = scale * r + c.norm();
        }
        (value, scale)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * T::from_usize(k).unwrap())
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Largest coefficient modulus.
    pub fn norm_inf(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()))
    }

    /// Sum of coefficient moduli.
    pub fn norm1(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |s, c| s + c.norm())
    }

    /// Zero every coefficient with modulus at or below `threshold`.
    pub fn chop(&self, threshold: T) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|&c| {
                    if c.norm() <= threshold {
                        Complex::zero()
                    } else {
                        c
                    }
                })
                .collect(),
        )
    }

    /// `self(inner(x))`, by Horner's scheme over polynomials.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, &c| &(&acc * inner) + &Self::constant(c))
    }

    /// Largest coefficientwise difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).fold(T::zero(), |m, k| {
            m.max((self.coeff(k) - other.coeff(k)).norm())
        })
    }

    /// Coefficientwise difference relative to the larger of the two norms.
    pub fn rel_diff(&self, other: &Self) -> T {
        let scale = self.norm_inf().max(other.norm_inf());
        if scale.is_zero() {
            T::zero()
        } else {
            self.max_abs_diff(other) / scale
        }
    }

    /// Synthetic long division: `self = d * quotient + remainder` with
    /// `degree(remainder) < degree(d)`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::ZeroDivisor)?;
        let Some(n) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if n < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let lead_inv = d.leading().inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Complex::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let q = rem[k + dd] * lead_inv;
            quot[k] = q;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= q * dc;
            }
            // exact cancellation of the eliminated term
            rem[k + dd] = Complex::zero();
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Division expected to be exact. Fails when the remainder norm exceeds
    /// `rel_tol` times the dividend norm.
    pub fn div_exact(&self, d: &Self, rel_tol: T) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        let relative = relative_remainder(self, &r);
        if relative > rel_tol {
            return Err(Error::InexactDivision {
                relative: relative.as_f64(),
            });
        }
        Ok(q)
    }
}

/// Error-free transformations on complex numbers.
mod eft {
    use num_complex::Complex;

    use crate::scalar::Real;

    fn sum<T: Real>(a: T, b: T) -> (T, T) {
        let s = a + b;
        let z = s - a;
        (s, (a - (s - z)) + (b - z))
    }

    fn prod<T: Real>(a: T, b: T) -> (T, T) {
        let p = a * b;
        (p, a.mul_add(b, -p))
    }

    pub(super) fn two_sum<T: Real>(x: Complex<T>, y: Complex<T>) -> (Complex<T>, Complex<T>) {
        let (re, er) = sum(x.re, y.re);
        let (im, ei) = sum(x.im, y.im);
        (Complex::new(re, im), Complex::new(er, ei))
    }

    pub(super) fn two_prod<T: Real>(x: Complex<T>, y: Complex<T>) -> (Complex<T>, Complex<T>) {
        let (p1, e1) = prod(x.re, y.re);
        let (p2, e2) = prod(x.im, -y.im);
        let (p3, e3) = prod(x.re, y.im);
        let (p4, e4) = prod(x.im, y.re);
        let (re, e5) = sum(p1, p2);
        let (im, e6) = sum(p3, p4);
        (
            Complex::new(re, im),
            Complex::new(e1 + e2 + e5, e3 + e4 + e6),
        )
    }
}

pub(crate) fn relative_remainder<T: Real>(dividend: &CPoly<T>, rem: &CPoly<T>) -> T {
    let scale = dividend.norm_inf();
    if scale.is_zero() {
        T::zero()
    } else {
        rem.norm_inf() / scale
    }
}

impl<T: Real> Add for &CPoly<T> {
    type Output = CPoly<T>;

    fn add(self, rhs: Self) -> CPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        CPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Real> Sub for &CPoly<T> {
    type Output = CPoly<T>;

    fn sub(self, rhs: Self) -> CPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        CPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Real> Mul for &CPoly<T> {
    type Output = CPoly<T>;

    fn mul(self, rhs: Self) -> CPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return CPoly::zero();
        }
        let mut out = vec![Complex::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CPoly::new(out)
    }
}

impl<T: Real> Neg for &CPoly<T> {
    type Output = CPoly<T>;

    fn neg(self) -> CPoly<T> {
        CPoly::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Real> $tr for CPoly<T> {
            type Output = CPoly<T>;
            fn $m(self, rhs: Self) -> CPoly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: fmt::Debug> fmt::Debug for CPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CPoly{:?}", self.coeffs)
    }
}

impl<T: Real> fmt::Display for CPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if c.im.is_zero() {
                format!("{}", c.re)
            } else if c.re.is_zero() {
                format!("{}i", c.im)
            } else {
                format!("({}{:+}i)", c.re, c.im)
            };
            match k {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}·x")?,
                _ => write!(f, "{coeff}·x^{k}")?,
            }
        }
        Ok(())
    }
}
