use num_complex::Complex64;
use serde::Serialize;

use crate::certify::{certify, Verdict};
use crate::critical::critical_values;
use crate::error::{Error, Result};
use crate::recur::{CoefficientSet, PhiSequence};

const SQRT3: f64 = 1.732_050_807_568_877_2;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn check_range(alpha: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "alpha must lie in [-1, 1], got {alpha}"
        )))
    }
}

/// Diagonal coefficients `(a₀, a₁, a₂)` at `α`.
pub fn parametric_alpha(alpha: f64) -> Result<[Complex64; 3]> {
    check_range(alpha)?;
    let a0 = c(0.0, SQRT3 / 2.0 * (alpha + 1.0) * (3.0 * alpha - 2.0));
    let a1 = c(0.0, -SQRT3 * alpha);
    let a2 = c(0.0, -SQRT3 / 2.0 * (alpha - 1.0) * (3.0 * alpha + 2.0));
    Ok([a0, a1, a2])
}

/// `(α̃₁², α̃₂²)`.
pub fn alpha_tilde_sq(alpha: f64) -> (f64, f64) {
    let w = 1.0 - alpha * alpha;
    (
        27.0 / 4.0 * alpha * alpha * w,
        0.75 * w * (9.0 * alpha * alpha - 4.0),
    )
}

/// Roots of `φ₂(·; α)`, `μ₁,₂ = (i√3/4)(α−1)(3α+2) ± √(1 − (3/16)f²)` with
/// `f = 3α² + 3α − 2` and the principal square root.
pub fn mu12(alpha: f64) -> [Complex64; 2] {
    let f = 3.0 * alpha * alpha + 3.0 * alpha - 2.0;
    let centre = c(0.0, SQRT3 / 4.0 * (alpha - 1.0) * (3.0 * alpha + 2.0));
    let root = c(1.0 - 3.0 / 16.0 * f * f, 0.0).sqrt();
    [centre + root, centre - root]
}

/// Roots of `Q₃(·; α) = 3μ² − α̃₁²`.
pub fn mu34(alpha: f64) -> [Complex64; 2] {
    let r = (alpha_tilde_sq(alpha).0 / 3.0).sqrt();
    [c(r, 0.0), c(-r, 0.0)]
}

/// Positive root of `λ³ − α̃₁²λ − 2 = 0` by safeguarded Newton from `∛2`.
pub fn lambda_of_alpha(alpha: f64) -> f64 {
    cubic_root(alpha_tilde_sq(alpha).0)
}

fn cubic_root(a: f64) -> f64 {
    let f = |l: f64| l * l * l - a * l - 2.0;
    let mut lo = 2f64.cbrt();
    let mut hi = 1.0 + a.max(2.0);
    let mut l = lo;
    for _ in 0..200 {
        let v = f(l);
        if v == 0.0 {
            return l;
        }
        if v < 0.0 {
            lo = l;
        } else {
            hi = l;
        }
        let d = 3.0 * l * l - a;
        let mut next = l - v / d;
        if !(next > lo && next < hi) || d <= 0.0 {
            next = 0.5 * (lo + hi);
        }
        if (next - l).abs() <= 4.0 * f64::EPSILON * l {
            return next;
        }
        l = next;
    }
    l
}

/// `∛(1+√(1−(27/64)²)) + ∛(1−√(1−(27/64)²))`.
pub fn lambda_max() -> f64 {
    let r = (1.0 - (27.0f64 / 64.0).powi(2)).sqrt();
    (1.0 + r).cbrt() + (1.0 - r).cbrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    /// Crossings of `|μ_k(α) − a₀(α)| < 1` located by bisection near each
    /// closed form: μ₂ at α₁ and α₂, μ₁ at α₃.
    pub bisected: [f64; 3],
}

/// Where the predicate `|μ − a₀| < 1` switches for μ₁ and μ₂.
pub fn thresholds() -> Thresholds {
    let s = 3.0 * SQRT3;
    let inner = (0.25 - (4.0 - 2.0 * SQRT3) / s).sqrt();
    let alpha1 = -0.5 - inner;
    let alpha2 = -0.5 + inner;
    let alpha3 = -0.5 + (0.25 + (4.0 + 2.0 * SQRT3) / s).sqrt();
    let inside = |k: usize, alpha: f64| {
        let a0 = parametric_alpha(alpha).expect("alpha in range")[0];
        (mu12(alpha)[k] - a0).norm() < 1.0 - 1e-12
    };
    let bisect = |k: usize, centre: f64| {
        let (mut lo, mut hi) = (centre - 1e-3, centre + 1e-3);
        let at_lo = inside(k, lo);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if inside(k, mid) == at_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    Thresholds {
        alpha1,
        alpha2,
        alpha3,
        bisected: [bisect(1, alpha1), bisect(1, alpha2), bisect(0, alpha3)],
    }
}

/// Interval of `[−1, 1]` with a fixed eigenvalue pattern for μ₁,₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    /// `[−1, α₁) ∪ [α₂, α₃]`: neither μ₁ nor μ₂.
    A,
    /// `(α₁, α₂)`: μ₂ only.
    B,
    /// `(α₃, 1]`: μ₁ only.
    C,
    /// `α = α₁`.
    Threshold,
}

pub fn region(alpha: f64) -> Region {
    let t = thresholds();
    if alpha == t.alpha1 {
        Region::Threshold
    } else if alpha < t.alpha1 || (t.alpha2..=t.alpha3).contains(&alpha) {
        Region::A
    } else if alpha < t.alpha2 {
        Region::B
    } else {
        Region::C
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaAnalysis {
    pub alpha: f64,
    pub mu12: [Complex64; 2],
    pub mu34: [Complex64; 2],
    pub lambda: f64,
    /// Certifier verdicts for μ₁, μ₂, μ₃, μ₄.
    pub verdicts: [Verdict; 4],
    /// Which of μ₁..μ₄ certify as eigenvalues.
    pub eigenvalue_flags: [bool; 4],
    pub region: Region,
    pub thresholds: Thresholds,
    /// Largest distance from a closed-form μ_k to the nearest computed
    /// critical value.
    pub root_mismatch: f64,
}

pub fn parametric_analysis(alpha: f64, tol: f64) -> Result<AlphaAnalysis> {
    let a = parametric_alpha(alpha)?;
    let seq = PhiSequence::new(CoefficientSet::with_unit_beta(a.to_vec())?);
    let report = critical_values(&seq, tol)?;
    let m12 = mu12(alpha);
    let m34 = mu34(alpha);
    let all = [m12[0], m12[1], m34[0], m34[1]];
    let root_mismatch = all
        .iter()
        .map(|mu| {
            report
                .critical_values
                .nearest(*mu)
                .map_or(f64::INFINITY, |(_, d)| d)
        })
        .fold(0.0, f64::max);
    let mut verdicts = [Verdict::NotEigenvalue; 4];
    for (v, mu) in verdicts.iter_mut().zip(all) {
        *v = certify(&seq, mu, tol)?.verdict;
    }
    Ok(AlphaAnalysis {
        alpha,
        mu12: m12,
        mu34: m34,
        lambda: lambda_of_alpha(alpha),
        eigenvalue_flags: verdicts.map(|v| v == Verdict::Eigenvalue),
        verdicts,
        region: region(alpha),
        thresholds: thresholds(),
        root_mismatch,
    })
}
