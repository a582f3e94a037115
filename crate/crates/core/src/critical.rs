//! Critical polynomial `Δ₀ = S₀ − P_N·D₀`, its factorization through
//! `φ_{N−1}`, and the list of critical values.

use num_complex::Complex;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cpoly::{backward_residual, roots, CPoly, Root, RootSet, EXACT_DIVISION_TOL};
use crate::error::{Error, Result};
use crate::recur::PhiSequence;
use crate::scalar::Real;

/// Distance, relative to `1 + |μ|`, below which roots from the two factors
/// are merged.
pub const MERGE_RADIUS: f64 = 1e-7;

/// Coefficients of `Δ_n` smaller than this multiple of `ε·max(‖S_n‖, ‖P·D_n‖)`
/// are cancellation noise and are dropped.
const CHOP_ULPS: f64 = 256.0;

/// Which factor of `Δ₀` a critical value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootSource {
    /// Root of `φ_{N−1}`.
    PhiRoot,
    /// Root of `Q_N = Δ₀ / φ_{N−1}`.
    QRoot,
    /// Root of `Δ₀` itself, used when the division is not exact.
    DeltaRoot,
}

impl RootSource {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::PhiRoot => "phi-root",
            Self::QRoot => "q-root",
            Self::DeltaRoot => "delta-root",
        }
    }
}

/// A critical value with its multiplicity in `Δ₀` and its source tags.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalValue<T> {
    pub value: Complex<T>,
    pub multiplicity: usize,
    pub sources: Vec<RootSource>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalReport<T> {
    pub pn: CPoly<T>,
    pub phi_nm1: CPoly<T>,
    pub delta0: CPoly<T>,
    pub qn: CPoly<T>,
    /// Remainder of `Δ₀ / φ_{N−1}` relative to `‖Δ₀‖∞`.
    pub division_remainder: T,
    pub critical_values: RootSet<T>,
    /// Source tags, parallel to `critical_values.roots`.
    pub sources: Vec<Vec<RootSource>>,
    pub warnings: Vec<String>,
}

impl<T: Real> CriticalReport<T> {
    pub fn values(&self) -> Vec<CriticalValue<T>> {
        self.critical_values
            .roots
            .iter()
            .zip(&self.sources)
            .map(|(r, s)| CriticalValue {
                value: r.value,
                multiplicity: r.multiplicity,
                sources: s.clone(),
            })
            .collect()
    }

    /// Whether `Δ₀` divided exactly by `φ_{N−1}`.
    pub fn factored(&self) -> bool {
        self.division_remainder <= T::lit(EXACT_DIVISION_TOL)
    }
}

/// `σ_{a,b} = Σ_{k=a}^{b} φ_k²` (formal squares).
pub fn sigma<T: Real>(seq: &PhiSequence<T>, a: usize, b: usize) -> CPoly<T> {
    (a..=b).fold(CPoly::zero(), |acc, k| {
        let p = seq.phi(k as isize);
        &acc + &(p.as_ref() * p.as_ref())
    })
}

/// `S_n = Σ_{k=n}^{n+2N−1} φ_k²` and `D_n = Σ_{k=n}^{n+N−1} φ_k φ_{k+N}`.
pub fn sums_sd<T: Real>(seq: &PhiSequence<T>, n: usize) -> (CPoly<T>, CPoly<T>) {
    let period = seq.period();
    let s = sigma(seq, n, n + 2 * period - 1);
    let d = (n..n + period).fold(CPoly::zero(), |acc, k| {
        &acc + &(seq.phi(k as isize).as_ref() * seq.phi((k + period) as isize).as_ref())
    });
    (s, d)
}

/// `Δ_n = S_n − P_N·D_n` together with `max(‖S_n‖∞, ‖P_N·D_n‖∞)`, the scale
/// its coefficients are computed against.
pub fn delta_n_scaled<T: Real>(seq: &PhiSequence<T>, n: usize) -> Result<(CPoly<T>, T)> {
    let pn = seq.extract_pn()?;
    let (s, d) = sums_sd(seq, n);
    let pd = &pn * &d;
    let scale = s.norm_inf().max(pd.norm_inf());
    let threshold = T::lit(CHOP_ULPS) * T::epsilon() * scale;
    Ok(((&s - &pd).chop(threshold), scale))
}

pub fn delta_n<T: Real>(seq: &PhiSequence<T>, n: usize) -> Result<CPoly<T>> {
    delta_n_scaled(seq, n).map(|(d, _)| d)
}

pub fn delta0<T: Real>(seq: &PhiSequence<T>) -> Result<CPoly<T>> {
    delta_n(seq, 0)
}

/// `Q_N = Δ₀ / φ_{N−1}` and the remainder norm relative to `‖Δ₀‖∞`.
/// Quotient coefficients at the rounding level of the division are chopped.
pub fn factor_qn<T: Real>(delta0: &CPoly<T>, phi_nm1: &CPoly<T>) -> Result<(CPoly<T>, T)> {
    let (q, r) = delta0.div_rem(phi_nm1)?;
    let q = q.chop(T::lit(CHOP_ULPS) * T::epsilon() * q.norm_inf());
    let scale = delta0.norm_inf();
    let relative = if scale.is_zero() {
        T::zero()
    } else {
        r.norm_inf() / scale
    };
    Ok((q, relative))
}

/// Both sides of the telescoped sum
///
/// ```text
/// (4 − P²)·σ_{0,nN−1} = 2(n−1)Δ₀ + σ_{N,2N−1} + (3 − P²)σ_{0,N−1}
///                       + σ_{(n−1)N,nN−1} − σ_{nN,(n+1)N−1}
/// ```
///
/// for `n ≥ 2`. Requires `Π β_k = 1`.
pub fn telescoping<T: Real>(seq: &PhiSequence<T>, n: usize) -> Result<(CPoly<T>, CPoly<T>)> {
    let period = seq.period();
    let (lhs, rhs) = telescoping_without_tail(seq, n)?;
    let tail = sigma(seq, n * period, (n + 1) * period - 1);
    Ok((lhs, &rhs - &tail))
}

/// The same identity with the final `−σ_{nN,(n+1)N−1}` term omitted.
pub fn telescoping_without_tail<T: Real>(
    seq: &PhiSequence<T>,
    n: usize,
) -> Result<(CPoly<T>, CPoly<T>)> {
    assert!(n >= 2, "telescoping identity needs n >= 2");
    let period = seq.period();
    let pn = seq.extract_pn()?;
    let p2 = &pn * &pn;
    let d0 = delta0(seq)?;
    let four_minus = &CPoly::constant(Complex::new(T::lit(4.0), T::zero())) - &p2;
    let three_minus = &CPoly::constant(Complex::new(T::lit(3.0), T::zero())) - &p2;
    let lhs = &four_minus * &sigma(seq, 0, n * period - 1);
    let rhs = &(&(&d0.scale(Complex::new(T::lit(2.0 * (n as f64 - 1.0)), T::zero()))
        + &sigma(seq, period, 2 * period - 1))
        + &(&three_minus * &sigma(seq, 0, period - 1)))
        + &sigma(seq, (n - 1) * period, n * period - 1);
    Ok((lhs, rhs))
}

/// Build `P_N`, `Δ₀`, `Q_N` and the tagged critical values.
pub fn critical_values<T: Real>(seq: &PhiSequence<T>, tol: T) -> Result<CriticalReport<T>> {
    let period = seq.period();
    let mut warnings = Vec::new();
    let det = seq.coeffs().period_determinant();
    if (det - Complex::one()).norm() > T::lit(1e-8) {
        warnings.push(format!(
            "product of beta over one period is {}{:+}i, not 1; Delta_n is not shift invariant",
            det.re, det.im
        ));
    }

    let pn = seq.extract_pn()?;
    let phi_nm1 = seq.phi(period as isize - 1).as_ref().clone();
    let delta0 = delta0(seq)?;
    if delta0.is_zero() {
        return Err(Error::InvalidCoefficients(
            "critical polynomial vanishes identically".into(),
        ));
    }
    let (qn, division_remainder) = factor_qn(&delta0, &phi_nm1)?;

    let mut tagged: Vec<(Root<T>, Vec<RootSource>)> = Vec::new();
    if division_remainder <= T::lit(EXACT_DIVISION_TOL) {
        for (poly, source) in [(&phi_nm1, RootSource::PhiRoot), (&qn, RootSource::QRoot)] {
            tagged.extend(
                roots_or_empty(poly, tol)?
                    .roots
                    .into_iter()
                    .map(|r| (r, vec![source])),
            );
        }
    } else {
        warnings.push(format!(
            "Delta_0 is not divisible by phi_(N-1): remainder is {:e} of its norm; using roots of Delta_0",
            division_remainder.as_f64()
        ));
        tagged.extend(
            roots_or_empty(&delta0, tol)?
                .roots
                .into_iter()
                .map(|r| (r, vec![RootSource::DeltaRoot])),
        );
    }

    let merged = merge(tagged, T::lit(MERGE_RADIUS));
    let residual = merged
        .iter()
        .map(|(r, _)| backward_residual(&delta0, r.value))
        .fold(T::zero(), T::max);
    let (roots, sources) = merged.into_iter().unzip();
    Ok(CriticalReport {
        pn,
        phi_nm1,
        delta0,
        qn,
        division_remainder,
        critical_values: RootSet {
            roots,
            residual,
            cluster_radius: tol.sqrt(),
        },
        sources,
        warnings,
    })
}

fn roots_or_empty<T: Real>(p: &CPoly<T>, tol: T) -> Result<RootSet<T>> {
    match roots(p, tol) {
        Err(Error::ConstantPolynomial) => Ok(RootSet {
            roots: Vec::new(),
            residual: T::zero(),
            cluster_radius: tol.sqrt(),
        }),
        other => other,
    }
}

fn merge<T: Real>(
    items: Vec<(Root<T>, Vec<RootSource>)>,
    radius: T,
) -> Vec<(Root<T>, Vec<RootSource>)> {
    let mut out: Vec<(Root<T>, Vec<RootSource>)> = Vec::new();
    for (root, sources) in items {
        let near = out.iter_mut().find(|(r, _)| {
            (r.value - root.value).norm() <= radius * (T::one() + root.value.norm())
        });
        match near {
            Some((r, s)) => {
                let (m1, m2) = (
                    T::from_usize(r.multiplicity).unwrap(),
                    T::from_usize(root.multiplicity).unwrap(),
                );
                r.value = (r.value.scale(m1) + root.value.scale(m2)).unscale(m1 + m2);
                r.multiplicity += root.multiplicity;
                for src in sources {
                    if !s.contains(&src) {
                        s.push(src);
                    }
                }
                s.sort();
            }
            None => out.push((root, sources)),
        }
    }
    out.sort_by(|a, b| {
        let (x, y) = (a.0.value, b.0.value);
        x.re.partial_cmp(&y.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(x.im.partial_cmp(&y.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    out
}
