//! ℓ² certification of critical values through the transfer roots of the
//! period recurrence, eigenvectors, the spectrum report, support sampling and
//! a truncation oracle.

mod support;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::critical::{critical_values, CriticalReport, CriticalValue};
use crate::error::{Error, Result};
use crate::recur::PhiSequence;
use crate::scalar::Real;

pub use support::{support_sample, truncation_oracle, SupportCurve, MAX_ORACLE_N};

/// Half-width of the band around `P_N(μ)² = 4·Πβ` treated as coincident
/// transfer roots.
pub const BOUNDARY_BAND: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Eigenvalue,
    NotEigenvalue,
    Boundary,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Eigenvalue => "eigenvalue",
            Self::NotEigenvalue => "not-eigenvalue",
            Self::Boundary => "boundary",
        }
    }
}

/// Per-residue decomposition `φ_{k+Nm}(μ) = c₊⁽ᵏ⁾ z₊ᵐ + c₋⁽ᵏ⁾ z₋ᵐ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate<T> {
    pub mu: Complex<T>,
    pub pn_at_mu: Complex<T>,
    pub z_plus: Complex<T>,
    pub z_minus: Complex<T>,
    /// `c₊⁽ᵏ⁾`, `k = 0..N`.
    pub growth_coeffs: Vec<Complex<T>>,
    /// `c₋⁽ᵏ⁾`, `k = 0..N`.
    pub decay_coeffs: Vec<Complex<T>>,
    pub verdict: Verdict,
    /// `Σ|φ_n(μ)|²`; infinite unless the verdict is an eigenvalue.
    pub norm_sq: T,
    /// `Σφ_n(μ)²` with formal squares, when the series converges.
    pub formal_sum: Option<Complex<T>>,
    pub diagnostics: String,
}

impl<T: Real> Certificate<T> {
    pub fn is_eigenvalue(&self) -> bool {
        self.verdict == Verdict::Eigenvalue
    }
}

/// Roots of `z² − p·z + b`, ordered by modulus.
pub fn transfer_roots<T: Real>(p: Complex<T>, b: Complex<T>) -> (Complex<T>, Complex<T>) {
    let disc = (p * p - b.scale(T::lit(4.0))).sqrt();
    let (s1, s2) = (p + disc, p - disc);
    let big = if s1.norm() >= s2.norm() { s1 } else { s2 }.unscale(T::lit(2.0));
    if big.is_zero() {
        return (big, big);
    }
    let small = b / big;
    if small.norm() <= big.norm() {
        (small, big)
    } else {
        (big, small)
    }
}

/// Decide whether `X_μ = (φ₀(μ), φ₁(μ), …)` lies in ℓ².
///
/// An eigenvalue needs `max|c₊⁽ᵏ⁾| ≤ tol·max(|φ_k| + |φ_{k+N}|)` and
/// `|z₋| ≤ 1 − √tol`.
pub fn certify<T: Real>(seq: &PhiSequence<T>, mu: Complex<T>, tol: T) -> Result<Certificate<T>> {
    let n = seq.period();
    let pn_at_mu = seq.extract_pn()?.eval(mu);
    let det = seq.coeffs().period_determinant();
    let (z_minus, z_plus) = transfer_roots(pn_at_mu, det);
    let mut cert = Certificate {
        mu,
        pn_at_mu,
        z_plus,
        z_minus,
        growth_coeffs: Vec::new(),
        decay_coeffs: Vec::new(),
        verdict: Verdict::NotEigenvalue,
        norm_sq: T::infinity(),
        formal_sum: None,
        diagnostics: String::new(),
    };

    let values = match seq.phi_eval_stream(mu, 2 * n) {
        Ok(v) => v,
        Err(Error::Overflow { index }) => {
            cert.diagnostics = format!("phi overflowed at index {index}");
            return Ok(cert);
        }
        Err(e) => return Err(e),
    };

    let root_det = det.sqrt().scale(T::lit(2.0));
    let gap = (pn_at_mu - root_det)
        .norm()
        .min((pn_at_mu + root_det).norm());
    if gap <= T::lit(BOUNDARY_BAND) {
        cert.verdict = Verdict::Boundary;
        cert.diagnostics = format!(
            "coincident transfer roots: P_N(mu) is {:e} from +-2 sqrt(prod beta)",
            gap.as_f64()
        );
        return Ok(cert);
    }

    let split = z_plus - z_minus;
    for k in 0..n {
        let (a, b) = (values[k], values[k + n]);
        cert.growth_coeffs.push((b - z_minus * a) / split);
        cert.decay_coeffs.push((z_plus * a - b) / split);
    }
    let block_scale = (0..n)
        .map(|k| values[k].norm() + values[k + n].norm())
        .fold(T::zero(), T::max);
    let max_norm = |c: &[Complex<T>]| c.iter().map(|c| c.norm()).fold(T::zero(), T::max);
    let threshold = tol * block_scale;
    let pure_minus = max_norm(&cert.growth_coeffs) <= threshold;
    let pure_plus = max_norm(&cert.decay_coeffs) <= threshold;
    let modulus = z_minus.norm();
    let margin = tol.sqrt();

    if pure_minus && modulus <= T::one() - margin {
        let r2 = modulus * modulus;
        let block = values[..n]
            .iter()
            .fold(T::zero(), |acc, v| acc + v.norm_sqr());
        let formal: Complex<T> = values[..n].iter().map(|v| v * v).sum();
        cert.verdict = Verdict::Eigenvalue;
        cert.norm_sq = block / (T::one() - r2);
        cert.formal_sum = Some(formal / (Complex::new(T::one(), T::zero()) - z_minus * z_minus));
        cert.diagnostics = format!("contracting solution, |z-| = {}", modulus);
    } else if (pure_minus || pure_plus) && (modulus - T::one()).abs() <= margin {
        cert.verdict = Verdict::Boundary;
        cert.diagnostics = format!(
            "single transfer mode on the unit circle, |z-| = {}",
            modulus
        );
    } else if pure_minus {
        cert.diagnostics = format!("single mode with |z-| = {} >= 1", modulus);
    } else {
        cert.diagnostics = format!(
            "growing mode present: max |c+| = {:e}, threshold {:e}",
            max_norm(&cert.growth_coeffs).as_f64(),
            threshold.as_f64()
        );
    }
    Ok(cert)
}

/// Leading components of an eigenvector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Eigenvector<T> {
    /// `x_n = φ_n(μ)`, zero-based.
    pub x: Vec<Complex<T>>,
    /// `x / ‖x‖`, using the full ℓ² norm.
    pub y: Vec<Complex<T>>,
    /// `max |((J − μ)x)_i|` over the interior rows of the truncation.
    pub residual: T,
}

/// First `count` components of `X_μ` and of its normalization.
///
/// Components are generated from the decaying mode,
/// `x_{k+Nm} = φ_k(μ)·z₋ᵐ`, which is stable where the forward recurrence is
/// not. Values of `φ_k(μ)` below the rounding level of their evaluation are
/// set to zero.
pub fn eigenvector<T: Real>(
    seq: &PhiSequence<T>,
    cert: &Certificate<T>,
    count: usize,
) -> Result<Eigenvector<T>> {
    if !cert.is_eigenvalue() {
        return Err(Error::NotEigenvalue);
    }
    let n = seq.period();
    let head: Vec<Complex<T>> = (0..n)
        .map(|k| {
            let (v, scale) = seq.phi(k as isize).eval_with_scale(cert.mu);
            let noise = T::lit(8.0) * T::from_usize(k + 1).unwrap() * T::epsilon() * scale;
            if v.norm() <= noise {
                Complex::zero()
            } else {
                v
            }
        })
        .collect();
    let mut x = Vec::with_capacity(count);
    let mut factor = Complex::new(T::one(), T::zero());
    'outer: loop {
        for h in &head {
            if x.len() == count {
                break 'outer;
            }
            x.push(h * factor);
        }
        factor *= cert.z_minus;
    }
    let norm = cert.norm_sq.sqrt();
    let y = x.iter().map(|v| v.unscale(norm)).collect();
    let jx = seq.jacobi_blocks().apply_interior(&x);
    let residual = jx
        .iter()
        .zip(&x)
        .map(|(j, v)| (j - cert.mu * v).norm())
        .fold(T::zero(), T::max);
    Ok(Eigenvector { x, y, residual })
}

/// A critical value with its certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classified<T> {
    pub critical: CriticalValue<T>,
    pub certificate: Certificate<T>,
}

/// Certify every critical value of `report`: eigenvalues first, then by real
/// and imaginary part.
pub fn classify<T: Real>(
    seq: &PhiSequence<T>,
    report: &CriticalReport<T>,
    tol: T,
) -> Result<Vec<Classified<T>>> {
    let mut out = report
        .values()
        .into_iter()
        .map(|critical| {
            certify(seq, critical.value, tol).map(|certificate| Classified {
                critical,
                certificate,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| {
        let (x, y) = (a.certificate.mu, b.certificate.mu);
        (!a.certificate.is_eigenvalue())
            .cmp(&!b.certificate.is_eigenvalue())
            .then(x.re.partial_cmp(&y.re).unwrap_or(std::cmp::Ordering::Equal))
            .then(x.im.partial_cmp(&y.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    Ok(out)
}

/// Certificates for all critical values.
pub fn discrete_spectrum<T: Real>(seq: &PhiSequence<T>, tol: T) -> Result<Vec<Certificate<T>>> {
    let report = critical_values(seq, tol)?;
    Ok(classify(seq, &report, tol)?
        .into_iter()
        .map(|c| c.certificate)
        .collect())
}

/// Partial sums `Σ_{n<M}|φ_n(μ)|²` for `M = 1..=count`, by the scalar
/// recurrence.
pub fn partial_norms<T: Real>(
    seq: &PhiSequence<T>,
    mu: Complex<T>,
    count: usize,
) -> Result<Vec<T>> {
    let values = seq.phi_eval_stream(mu, count)?;
    let mut acc = T::zero();
    Ok(values
        .iter()
        .map(|v| {
            acc += v.norm_sqr();
            acc
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recur::CoefficientSet;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn seq(alpha: Vec<Complex64>) -> PhiSequence<f64> {
        PhiSequence::new(CoefficientSet::with_unit_beta(alpha).unwrap())
    }

    fn elementary3() -> PhiSequence<f64> {
        let s3 = 3f64.sqrt();
        seq(vec![c(0.0, s3), c(0.0, -s3), c(0.0, 0.0)])
    }

    fn elementary4() -> PhiSequence<f64> {
        seq(vec![c(0.0, 2.0), c(0.0, 0.0), c(0.0, -2.0), c(0.0, 0.0)])
    }

    #[test]
    fn transfer_roots_satisfy_vieta() {
        for (p, b) in [
            (c(6.0, 0.0), c(1.0, 0.0)),
            (c(0.3, -1.2), c(1.0, 0.0)),
            (c(1e-9, 0.0), c(2.0, 1.0)),
        ] {
            let (lo, hi) = transfer_roots(p, b);
            assert!(lo.norm() <= hi.norm());
            assert!((lo * hi - b).norm() < 1e-14);
            assert!((lo + hi - p).norm() < 1e-14);
        }
    }

    #[test]
    fn elementary3_verdicts() {
        let s = elementary3();
        let s2 = 2f64.sqrt();
        let up = certify(&s, c(0.0, s2), 1e-10).unwrap();
        assert_eq!(up.verdict, Verdict::Eigenvalue, "{}", up.diagnostics);
        assert!((up.z_minus - c(0.0, 3f64.sqrt() - s2)).norm() < 1e-12);
        assert_eq!(
            certify(&s, c(0.0, -s2), 1e-10).unwrap().verdict,
            Verdict::NotEigenvalue
        );
        assert_eq!(
            certify(&s, c(0.0, 0.0), 1e-10).unwrap().verdict,
            Verdict::NotEigenvalue
        );
    }

    #[test]
    fn elementary4_norm_and_vector() {
        let s = elementary4();
        let s2 = 2f64.sqrt();
        let cert = certify(&s, c(0.0, s2), 1e-10).unwrap();
        assert!(cert.is_eigenvalue());
        assert!((cert.norm_sq - s2).abs() < 1e-12);
        let v = eigenvector(&s, &cert, 12).unwrap();
        let expected = [
            c(1.0, 0.0),
            c(0.0, s2 - 2.0),
            c(2.0 * s2 - 3.0, 0.0),
            c(0.0, 0.0),
        ];
        for (x, e) in v.x.iter().zip(expected) {
            assert!((x - e).norm() < 1e-12);
        }
        assert_eq!(v.y[3], c(0.0, 0.0));
        assert_eq!(v.y[7], c(0.0, 0.0));
        assert!((v.y[0].re - 2f64.powf(-0.25)).abs() < 1e-12);
        assert!(v.residual < 1e-12);
    }

    #[test]
    fn eigenvector_requires_eigenvalue() {
        let s = elementary4();
        let cert = certify(&s, c(0.0, -2f64.sqrt()), 1e-10).unwrap();
        assert_eq!(eigenvector(&s, &cert, 4), Err(Error::NotEigenvalue));
    }

    #[test]
    fn coincident_roots_are_boundary() {
        // P₃ = x³ equals 2 at the real cube root of 2
        let s = elementary3();
        let cert = certify(&s, c(2f64.cbrt(), 0.0), 1e-10).unwrap();
        assert_eq!(cert.verdict, Verdict::Boundary);
        assert!(cert.norm_sq.is_infinite());
    }

    #[test]
    fn spectrum_orders_eigenvalues_first() {
        let certs = discrete_spectrum(&elementary4(), 1e-10).unwrap();
        assert!(certs[0].is_eigenvalue());
        assert_eq!(certs.iter().filter(|c| c.is_eigenvalue()).count(), 1);
        assert!((certs[0].mu - c(0.0, 2f64.sqrt())).norm() < 1e-10);
    }

    #[test]
    fn partial_norms_converge() {
        let s = elementary4();
        let mu = c(0.0, 2f64.sqrt());
        let sums = partial_norms(&s, mu, 40).unwrap();
        assert!((sums[39] - 2f64.sqrt()).abs() < 1e-6);
    }
}
