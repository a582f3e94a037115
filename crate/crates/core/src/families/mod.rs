//! Built-in coefficient families with closed-form expectations.

mod parametric;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::cpoly::CPoly;
use crate::error::{Error, Result};
use crate::recur::CoefficientSet;

pub use parametric::{
    alpha_tilde_sq, lambda_max, lambda_of_alpha, mu12, mu34, parametric_alpha, parametric_analysis,
    region, thresholds, AlphaAnalysis, Region, Thresholds,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyName {
    GenericN3,
    Parametric,
    Elementary3,
    Elementary4,
    Elementary5,
}

impl FamilyName {
    pub const ALL: [FamilyName; 5] = [
        Self::GenericN3,
        Self::Parametric,
        Self::Elementary3,
        Self::Elementary4,
        Self::Elementary5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::GenericN3 => "generic-n3",
            Self::Parametric => "parametric",
            Self::Elementary3 => "elementary-3",
            Self::Elementary4 => "elementary-4",
            Self::Elementary5 => "elementary-5",
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Components of `X_μ` as stated in closed form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpectedVector {
    pub mu: Complex64,
    /// `x_n = φ_n(μ)` for `n < N`, when stated.
    pub components: Option<Vec<Complex64>>,
    /// `x_n²` for `n < N`.
    pub squares: Vec<Complex64>,
    /// `x_{n+N}² / x_n²`, when the tail is geometric.
    pub block_ratio_sq: Option<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpectedEigenvalue {
    pub mu: Complex64,
    pub norm_sq: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Expectations {
    pub pn: Option<CPoly<f64>>,
    /// Critical polynomial up to a constant factor.
    pub critical_poly: Option<CPoly<f64>>,
    /// Critical values with multiplicity.
    pub critical_roots: Vec<(Complex64, usize)>,
    /// `φ_0, …, φ_{2N−1}`.
    pub phi_table: Vec<CPoly<f64>>,
    pub eigenvalues: Vec<ExpectedEigenvalue>,
    pub non_eigenvalues: Vec<Complex64>,
    pub vectors: Vec<ExpectedVector>,
}

#[derive(Debug, Clone)]
pub struct FamilySpec {
    pub name: FamilyName,
    pub params: Vec<f64>,
    pub coeffs: CoefficientSet<f64>,
    pub expectations: Expectations,
    /// Known discrepancies in the tabulated form of the family.
    pub notes: Vec<String>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn poly(coeffs: &[Complex64]) -> CPoly<f64> {
    CPoly::new(coeffs.to_vec())
}

fn real(coeffs: &[f64]) -> CPoly<f64> {
    CPoly::from_real(coeffs)
}

/// Build a family by name. `params` holds α for `parametric` and the three
/// diagonal entries for `generic-n3` (three reals, or six reals read as
/// `re, im` pairs).
pub fn family(name: &str, params: &[f64]) -> Result<FamilySpec> {
    let name: FamilyName = name.parse()?;
    let no_params = || {
        if params.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!("{name} takes no parameters")))
        }
    };
    match name {
        FamilyName::Elementary3 => no_params().and_then(|_| elementary3()),
        FamilyName::Elementary4 => no_params().and_then(|_| elementary4()),
        FamilyName::Elementary5 => no_params().and_then(|_| elementary5()),
        FamilyName::GenericN3 => generic_n3(params),
        FamilyName::Parametric => match params {
            [alpha] => parametric(*alpha),
            _ => Err(Error::InvalidParams(
                "parametric takes exactly one value α".into(),
            )),
        },
    }
}

fn elementary3() -> Result<FamilySpec> {
    let s2 = 2f64.sqrt();
    let s3 = 3f64.sqrt();
    let alpha = vec![c(0.0, s3), c(0.0, -s3), c(0.0, 0.0)];
    let phi1 = poly(&[c(0.0, -s3), c(1.0, 0.0)]);
    let phi2 = real(&[2.0, 0.0, 1.0]);
    let x = CPoly::x();
    let x3 = real(&[0.0, 0.0, 0.0, 1.0]);
    let phi3 = &(&x * &phi2) - &phi1;
    let phi4 = &(&x3 * &phi1) + &CPoly::one();
    let phi5 = &x3 * &phi2;
    let zero_vector = [c(1.0, 0.0), c(0.0, -s3), c(2.0, 0.0)];
    Ok(FamilySpec {
        name: FamilyName::Elementary3,
        params: Vec::new(),
        coeffs: CoefficientSet::with_unit_beta(alpha)?,
        expectations: Expectations {
            pn: Some(x3.clone()),
            critical_poly: Some(real(&[0.0, 0.0, 2.0, 0.0, 1.0])),
            critical_roots: vec![(c(0.0, s2), 1), (c(0.0, -s2), 1), (c(0.0, 0.0), 2)],
            phi_table: vec![CPoly::one(), phi1, phi2, phi3, phi4, phi5],
            eigenvalues: vec![ExpectedEigenvalue {
                mu: c(0.0, s2),
                norm_sq: None,
            }],
            non_eigenvalues: vec![c(0.0, -s2), c(0.0, 0.0)],
            vectors: vec![ExpectedVector {
                mu: c(0.0, 0.0),
                components: Some(zero_vector.to_vec()),
                squares: zero_vector.iter().map(|v| v * v).collect(),
                block_ratio_sq: None,
            }],
        },
        notes: vec![
            "the tabulated coefficient list gives a1 = +i*sqrt(3); the polynomial table and the \
             Jacobi matrix both require a1 = -i*sqrt(3), which is used here"
                .into(),
        ],
    })
}

fn elementary4() -> Result<FamilySpec> {
    let s2 = 2f64.sqrt();
    let alpha = vec![c(0.0, 2.0), c(0.0, 0.0), c(0.0, -2.0), c(0.0, 0.0)];
    let pn = real(&[2.0, 0.0, 0.0, 0.0, 1.0]);
    let phi3 = real(&[0.0, 2.0, 0.0, 1.0]);
    let table = vec![
        CPoly::one(),
        poly(&[c(0.0, -2.0), c(1.0, 0.0)]),
        poly(&[c(-1.0, 0.0), c(0.0, -2.0), c(1.0, 0.0)]),
        phi3.clone(),
        poly(&[
            c(1.0, 0.0),
            c(0.0, 2.0),
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(1.0, 0.0),
        ]),
        poly(&[
            c(0.0, -2.0),
            c(3.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, -2.0),
            c(1.0, 0.0),
        ]),
        poly(&[
            c(-1.0, 0.0),
            c(0.0, -4.0),
            c(2.0, 0.0),
            c(0.0, 0.0),
            c(-1.0, 0.0),
            c(0.0, -2.0),
            c(1.0, 0.0),
        ]),
        &pn * &phi3,
    ];
    let up = [
        c(1.0, 0.0),
        c(0.0, s2 - 2.0),
        c(2.0 * s2 - 3.0, 0.0),
        c(0.0, 0.0),
    ];
    let down = [
        c(1.0, 0.0),
        c(0.0, -(2.0 + s2)),
        c(-(3.0 + 2.0 * s2), 0.0),
        c(0.0, 0.0),
    ];
    let zero = [c(1.0, 0.0), c(0.0, -2.0), c(-1.0, 0.0), c(0.0, 0.0)];
    let vector = |mu, comps: &[Complex64], ratio: Option<f64>| ExpectedVector {
        mu,
        components: Some(comps.to_vec()),
        squares: comps.iter().map(|v| v * v).collect(),
        block_ratio_sq: ratio.map(|r| c(r * r, 0.0)),
    };
    Ok(FamilySpec {
        name: FamilyName::Elementary4,
        params: Vec::new(),
        coeffs: CoefficientSet::with_unit_beta(alpha)?,
        expectations: Expectations {
            pn: Some(pn),
            critical_poly: Some(real(&[0.0, 0.0, 0.0, 0.0, 2.0, 0.0, 1.0])),
            critical_roots: vec![(c(0.0, s2), 1), (c(0.0, -s2), 1), (c(0.0, 0.0), 4)],
            phi_table: table,
            eigenvalues: vec![ExpectedEigenvalue {
                mu: c(0.0, s2),
                norm_sq: Some(s2),
            }],
            non_eigenvalues: vec![c(0.0, -s2), c(0.0, 0.0)],
            vectors: vec![
                vector(c(0.0, s2), &up, Some(3.0 - 2.0 * s2)),
                vector(c(0.0, -s2), &down, Some(3.0 + 2.0 * s2)),
                vector(c(0.0, 0.0), &zero, Some(1.0)),
            ],
        },
        notes: vec![
            "for the zero critical value the tabulated components read x2 = -i/2 and x4 = -3i/2; \
             the recurrence gives x2 = -2i and x4 = 0 (the periodic tail and the verdict are unchanged)"
                .into(),
        ],
    })
}

/// `μ₁, μ₂, μ₃, μ₄` of the period-5 family.
pub fn elementary5_nonzero_roots() -> [Complex64; 4] {
    let s5 = 5f64.sqrt();
    let a = (10.0 - 2.0 * s5).sqrt();
    let b = (10.0 + 2.0 * s5).sqrt();
    [
        c(a / 4.0, (1.0 + s5) / 4.0),
        c(-a / 4.0, (1.0 + s5) / 4.0),
        c(b / 4.0, (s5 - 1.0) / 4.0),
        c(-b / 4.0, (s5 - 1.0) / 4.0),
    ]
}

fn elementary5() -> Result<FamilySpec> {
    let s5 = 5f64.sqrt();
    let i5 = c(0.0, s5);
    let alpha = vec![c(0.0, 0.0), i5, c(0.0, 0.0), c(0.0, 0.0), -i5];
    let one = c(1.0, 0.0);
    let z = c(0.0, 0.0);
    let phi4 = poly(&[one, i5, c(-3.0, 0.0), -i5, one]);
    let x5 = real(&[0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
    let table = vec![
        CPoly::one(),
        CPoly::x(),
        poly(&[-one, -i5, one]),
        poly(&[z, c(-2.0, 0.0), -i5, one]),
        phi4.clone(),
        poly(&[i5, c(-2.0, 0.0), -i5, one, z, one]),
        real(&[-1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]),
        poly(&[z, one, z, z, z, -one, -i5, one]),
        poly(&[one, z, z, z, z, z, c(-2.0, 0.0), -i5, one]),
        &x5 * &phi4,
    ];
    let [m1, m2, m3, m4] = elementary5_nonzero_roots();
    let a = (10.0 - 2.0 * s5).sqrt();
    let b = (10.0 + 2.0 * s5).sqrt();
    let squares = |x2: Complex64, x3: Complex64, x4: f64| vec![one, x2, x3, c(x4, 0.0), z];
    let vectors = vec![
        ExpectedVector {
            mu: m1,
            components: None,
            squares: squares(
                c((1.0 - s5) / 4.0, (1.0 + s5) / 8.0 * a),
                c((s5 - 2.0) / 2.0, (1.0 - s5) / 8.0 * a),
                (s5 - 3.0) / 2.0,
            ),
            block_ratio_sq: Some(c((s5 - 3.0) / 2.0, 0.0)),
        },
        ExpectedVector {
            mu: m2,
            components: None,
            squares: squares(
                c((1.0 - s5) / 4.0, -(1.0 + s5) / 8.0 * a),
                c((s5 - 2.0) / 2.0, (s5 - 1.0) / 8.0 * a),
                (s5 - 3.0) / 2.0,
            ),
            block_ratio_sq: Some(c((s5 - 3.0) / 2.0, 0.0)),
        },
        ExpectedVector {
            mu: m3,
            components: None,
            squares: squares(
                c((1.0 + s5) / 4.0, (s5 - 1.0) / 8.0 * b),
                c(-(2.0 + s5) / 2.0, -(1.0 + s5) / 8.0 * b),
                -(s5 + 3.0) / 2.0,
            ),
            block_ratio_sq: Some(c(-(3.0 + s5) / 2.0, 0.0)),
        },
        ExpectedVector {
            mu: m4,
            components: None,
            squares: squares(
                c((1.0 + s5) / 4.0, -(s5 - 1.0) / 8.0 * b),
                c(-(2.0 + s5) / 2.0, (1.0 + s5) / 8.0 * b),
                -(s5 + 3.0) / 2.0,
            ),
            block_ratio_sq: Some(c(-(3.0 + s5) / 2.0, 0.0)),
        },
    ];
    Ok(FamilySpec {
        name: FamilyName::Elementary5,
        params: Vec::new(),
        coeffs: CoefficientSet::with_unit_beta(alpha)?,
        expectations: Expectations {
            pn: Some(x5),
            critical_poly: Some(poly(&[z, z, z, z, one, i5, c(-3.0, 0.0), -i5, one])),
            critical_roots: vec![(m1, 1), (m2, 1), (m3, 1), (m4, 1), (z, 4)],
            phi_table: table,
            eigenvalues: vec![
                ExpectedEigenvalue {
                    mu: m1,
                    norm_sq: Some(2.0 * s5),
                },
                ExpectedEigenvalue {
                    mu: m2,
                    norm_sq: Some(2.0 * s5),
                },
            ],
            non_eigenvalues: vec![m3, m4, z],
            vectors,
        },
        notes: Vec::new(),
    })
}

/// `μ± = ½(a₀+a₁) ± ½√(4+(a₁−a₀)²)`, the roots of `φ₂`.
pub fn generic_phi2_roots(a: [Complex64; 3]) -> [Complex64; 2] {
    let root = (c(4.0, 0.0) + (a[1] - a[0]) * (a[1] - a[0])).sqrt();
    let mid = (a[0] + a[1]) * 0.5;
    [mid + root * 0.5, mid - root * 0.5]
}

/// `ν± = ⅓((a₀+a₁+a₂) ± √(a₀²+a₁²+a₂²−a₀a₁−a₁a₂−a₀a₂+9))`, the roots of `Q₃`.
pub fn generic_q3_roots(a: [Complex64; 3]) -> [Complex64; 2] {
    let sum = a[0] + a[1] + a[2];
    let disc =
        a[0] * a[0] + a[1] * a[1] + a[2] * a[2] - a[0] * a[1] - a[1] * a[2] - a[0] * a[2] + 9.0;
    let root = disc.sqrt();
    [(sum + root) / 3.0, (sum - root) / 3.0]
}

/// `±√(1 + (a₀²+a₁²+a₂²)/6)`, the roots of `Q₃` when `a₀+a₁+a₂ = 0`.
pub fn generic_q3_roots_balanced(a: [Complex64; 3]) -> [Complex64; 2] {
    let r = (c(1.0, 0.0) + (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]) / 6.0).sqrt();
    [r, -r]
}

/// `P₃`, `φ₂` and `Q₃` of a generic period-3 family.
pub fn generic_polys(a: [Complex64; 3]) -> (CPoly<f64>, CPoly<f64>, CPoly<f64>) {
    let sum = a[0] + a[1] + a[2];
    let pair = a[0] * a[2] + a[1] * a[2] + a[0] * a[1];
    let prod = a[0] * a[1] * a[2];
    let p3 = poly(&[sum - prod, pair - 3.0, -sum, c(1.0, 0.0)]);
    let phi2 = poly(&[a[0] * a[1] - 1.0, -(a[0] + a[1]), c(1.0, 0.0)]);
    let q3 = poly(&[pair - 3.0, -sum * 2.0, c(3.0, 0.0)]);
    (p3, phi2, q3)
}

fn generic_n3(params: &[f64]) -> Result<FamilySpec> {
    let a: [Complex64; 3] = match params {
        [a0, a1, a2] => [c(*a0, 0.0), c(*a1, 0.0), c(*a2, 0.0)],
        [r0, i0, r1, i1, r2, i2] => [c(*r0, *i0), c(*r1, *i1), c(*r2, *i2)],
        _ => {
            return Err(Error::InvalidParams(
                "generic-n3 takes three reals or three re,im pairs".into(),
            ))
        }
    };
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidParams(
            "generic-n3 parameters must be finite".into(),
        ));
    }
    let (p3, phi2, q3) = generic_polys(a);
    let phi1 = CPoly::linear(a[0]);
    let phi3 = &(&CPoly::linear(a[2]) * &phi2) - &phi1;
    let phi4 = &(&CPoly::linear(a[0]) * &phi3) - &phi2;
    let phi5 = &phi2 * &(&phi3 - &CPoly::linear(a[1]));
    let [m1, m2] = generic_phi2_roots(a);
    let [n1, n2] = generic_q3_roots(a);
    let mut eigenvalues = Vec::new();
    let mut non_eigenvalues = Vec::new();
    for mu in [m1, m2] {
        let d = (mu - a[0]).norm();
        if d < 1.0 {
            eigenvalues.push(ExpectedEigenvalue { mu, norm_sq: None });
        } else if d > 1.0 {
            non_eigenvalues.push(mu);
        }
    }
    Ok(FamilySpec {
        name: FamilyName::GenericN3,
        params: params.to_vec(),
        coeffs: CoefficientSet::with_unit_beta(a.to_vec())?,
        expectations: Expectations {
            pn: Some(p3),
            critical_poly: Some(&phi2 * &q3),
            critical_roots: vec![(m1, 1), (m2, 1), (n1, 1), (n2, 1)],
            phi_table: vec![CPoly::one(), phi1, phi2, phi3, phi4, phi5],
            eigenvalues,
            non_eigenvalues,
            vectors: Vec::new(),
        },
        notes: Vec::new(),
    })
}

fn parametric(alpha: f64) -> Result<FamilySpec> {
    let a = parametric_alpha(alpha)?;
    let (t1, t2) = alpha_tilde_sq(alpha);
    let s3 = 3f64.sqrt();
    let one = c(1.0, 0.0);
    let pn = poly(&[c(0.0, -s3 * alpha * t2), c(-t1, 0.0), c(0.0, 0.0), one]);
    let phi1 = CPoly::linear(a[0]);
    let phi2 = poly(&[
        c(1.5 * alpha * (alpha + 1.0) * (3.0 * alpha - 2.0) - 1.0, 0.0),
        c(0.0, -s3 / 2.0 * (alpha - 1.0) * (3.0 * alpha + 2.0)),
        one,
    ]);
    let phi3 = poly(&[
        c(0.0, s3 * alpha * (1.0 - t2)),
        c(1.0 - t1, 0.0),
        c(0.0, 0.0),
        one,
    ]);
    let phi4 = &(&CPoly::linear(a[0]) * &phi3) - &phi2;
    let phi5 = &phi2 * &pn;
    let q3 = real(&[-t1, 0.0, 3.0]);
    let [m1, m2] = mu12(alpha);
    let [m3, m4] = mu34(alpha);
    let (eigenvalues, mut non_eigenvalues) = match region(alpha) {
        Region::B => (vec![m2], vec![m1]),
        Region::C => (vec![m1], vec![m2]),
        Region::A => (Vec::new(), vec![m1, m2]),
        Region::Threshold => (Vec::new(), Vec::new()),
    };
    non_eigenvalues.extend([m3, m4]);
    Ok(FamilySpec {
        name: FamilyName::Parametric,
        params: vec![alpha],
        coeffs: CoefficientSet::with_unit_beta(a.to_vec())?,
        expectations: Expectations {
            pn: Some(pn),
            critical_poly: Some(&phi2 * &q3),
            critical_roots: vec![(m1, 1), (m2, 1), (m3, 1), (m4, 1)],
            phi_table: vec![CPoly::one(), phi1, phi2, phi3, phi4, phi5],
            eigenvalues: eigenvalues
                .into_iter()
                .map(|mu| ExpectedEigenvalue { mu, norm_sq: None })
                .collect(),
            non_eigenvalues,
            vectors: Vec::new(),
        },
        notes: vec![
            "the tabulated third coefficient is labelled a3 and carries the factor (3a-2); \
             a2 = -(i*sqrt(3)/2)(a-1)(3a+2) = -(a0+a1) is used, which makes the coefficients sum to zero \
             and reproduces the tabulated P3, mu1,2 and Q3"
                .into(),
            "the tabulated Psi1 has the factor (3a+2); the recurrence gives x - a0 with the factor (3a-2)".into(),
            "the tabulated Psi2 has an empty fraction in the x coefficient; it is i*sqrt(3)/2".into(),
        ],
    })
}

impl FamilySpec {
    /// Expected eigenvalues must be roots of the expected critical polynomial,
    /// and the expected roots must account for its degree.
    pub fn consistency_error(&self) -> Option<String> {
        let e = &self.expectations;
        let poly = e.critical_poly.as_ref()?;
        let scale = poly.norm1();
        for ev in &e.eigenvalues {
            let (v, s) = poly.eval_with_scale(ev.mu);
            if v.norm() > 1e-9 * s.max(scale * 1e-3) {
                return Some(format!(
                    "expected eigenvalue {} is not a critical root",
                    ev.mu
                ));
            }
        }
        let total: usize = e.critical_roots.iter().map(|r| r.1).sum();
        if Some(total) != poly.degree() {
            return Some(format!(
                "expected roots have total multiplicity {total}, critical polynomial has degree {:?}",
                poly.degree()
            ));
        }
        None
    }
}
