//! Regression suite over the closed-form results of the built-in families.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::certify::{certify, classify, discrete_spectrum, eigenvector, support_sample, Verdict};
use crate::cpoly::{chebyshev_u, roots, CPoly, RootSet};
use crate::critical::{critical_values, delta0, RootSource, MERGE_RADIUS};
use crate::error::Result;
use crate::families::{
    alpha_tilde_sq, family, generic_phi2_roots, generic_polys, generic_q3_roots,
    generic_q3_roots_balanced, lambda_max, lambda_of_alpha, mu12, mu34, parametric_alpha, region,
    thresholds, FamilySpec, Region,
};
use crate::recur::{CoefficientSet, PhiSequence};

/// One named comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

const POLY_TOL: f64 = 1e-9;
const ROOT_TOL: f64 = 1e-8;
const RANDOM_TRIPLES: usize = 50;
const GRID_POINTS: usize = 41;

struct Suite {
    checks: Vec<Check>,
    tol: f64,
}

impl Suite {
    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn close(&mut self, name: impl Into<String>, err: f64, tol: f64) {
        self.check(
            name,
            err <= tol,
            format!("error {err:.3e}, limit {tol:.0e}"),
        );
    }

    fn guard(&mut self, name: &str, f: impl FnOnce(&mut Self) -> Result<()>) {
        if let Err(e) = f(self) {
            self.check(name, false, format!("error: {e}"));
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn seq_of(alpha: Vec<Complex64>) -> Result<PhiSequence<f64>> {
    Ok(PhiSequence::new(CoefficientSet::with_unit_beta(alpha)?))
}

fn pdiff(a: &CPoly<f64>, b: &CPoly<f64>) -> f64 {
    a.max_abs_diff(b) / b.norm_inf().max(1.0)
}

fn monic(p: &CPoly<f64>) -> CPoly<f64> {
    p.scale(p.leading().inv())
}

fn pair_err(a: [Complex64; 2], b: [Complex64; 2]) -> f64 {
    let straight = (a[0] - b[0]).norm().max((a[1] - b[1]).norm());
    let crossed = (a[0] - b[1]).norm().max((a[1] - b[0]).norm());
    straight.min(crossed)
}

/// Worst distance from an expected root to the computed set, or infinity on a
/// multiplicity mismatch. Coincident expected roots are merged first.
fn root_set_err(expected: &[(Complex64, usize)], got: &RootSet<f64>) -> f64 {
    let mut merged: Vec<(Complex64, usize)> = Vec::new();
    for (z, k) in expected {
        match merged
            .iter_mut()
            .find(|(w, _)| (w - z).norm() <= MERGE_RADIUS * (1.0 + z.norm()))
        {
            Some(entry) => entry.1 += k,
            None => merged.push((*z, *k)),
        }
    }
    let total: usize = merged.iter().map(|r| r.1).sum();
    if total != got.total_multiplicity() {
        return f64::INFINITY;
    }
    merged
        .iter()
        .fold(0.0, |worst, (z, k)| match got.nearest(*z) {
            Some((r, d)) if r.multiplicity == *k => worst.max(d),
            _ => f64::INFINITY,
        })
}

fn pair(p: &CPoly<f64>, tol: f64) -> Result<[Complex64; 2]> {
    let e = roots(p, tol)?.expanded();
    Ok([e[0], e[1]])
}

/// Run every check. The output depends only on `seed` and `tol`.
pub fn run_suite(seed: u64, tol: f64) -> Vec<Check> {
    let mut s = Suite {
        checks: Vec::new(),
        tol,
    };
    basics(&mut s);
    for name in ["elementary-3", "elementary-4", "elementary-5"] {
        s.guard(name, |s| family_checks(s, &family(name, &[])?));
    }
    elementary3(&mut s);
    elementary4(&mut s);
    elementary5(&mut s);
    generic(&mut s, seed);
    parametric(&mut s);
    s.checks
}

fn basics(s: &mut Suite) {
    let u: CPoly<f64> = chebyshev_u(-1);
    s.check("chebyshev U_-1 = 0", u.is_zero(), "");
    let u0: CPoly<f64> = chebyshev_u(0);
    s.close("chebyshev U_0 = 1", pdiff(&u0, &CPoly::one()), 0.0);
    let x2p2 = CPoly::from_real(&[2.0, 0.0, 1.0]);
    s.close(
        "eval x^2+2 at i*sqrt2",
        x2p2.eval(c(0.0, 2f64.sqrt())).norm(),
        1e-14,
    );
    s.close(
        "x^2+2 plus zero",
        pdiff(&(&x2p2 + &CPoly::zero()), &x2p2),
        0.0,
    );
    let s2 = 2f64.sqrt();
    for (label, lead_zero) in [("roots mu^2(mu^2+2)", 2usize), ("roots mu^4(mu^2+2)", 4)] {
        s.guard(label, |s| {
            let p = &CPoly::monomial(c(1.0, 0.0), lead_zero) * &x2p2;
            let got = roots(&p, s.tol)?;
            let expected = [(c(0.0, 0.0), lead_zero), (c(0.0, s2), 1), (c(0.0, -s2), 1)];
            s.close(label, root_set_err(&expected, &got), ROOT_TOL);
            Ok(())
        });
    }
}

/// Checks driven by the expectations attached to a family.
fn family_checks(s: &mut Suite, spec: &FamilySpec) -> Result<()> {
    let name = format!("{}{:?}", spec.name, spec.params);
    let seq = PhiSequence::new(spec.coeffs.clone());
    let e = &spec.expectations;
    let n = seq.period();
    s.check(
        format!("{name}: phi_-1 = 0, phi_0 = 1"),
        seq.phi(-1).is_zero() && pdiff(&seq.phi(0), &CPoly::one()) == 0.0,
        "",
    );
    if let Some(pn) = &e.pn {
        s.close(
            format!("{name}: P_N"),
            pdiff(&seq.extract_pn()?, pn),
            POLY_TOL,
        );
    }
    let table_err = e
        .phi_table
        .iter()
        .enumerate()
        .fold(0.0, |w, (k, p)| f64::max(w, pdiff(&seq.phi(k as isize), p)));
    s.close(format!("{name}: phi table"), table_err, POLY_TOL);
    let report = critical_values(&seq, s.tol)?;
    s.close(
        format!("{name}: P_N division remainder"),
        report.division_remainder,
        1e-8,
    );
    if let Some(poly) = &e.critical_poly {
        s.close(
            format!("{name}: critical polynomial up to scale"),
            pdiff(&monic(&report.delta0), &monic(poly)),
            POLY_TOL,
        );
    }
    s.close(
        format!("{name}: critical roots"),
        root_set_err(&e.critical_roots, &report.critical_values),
        ROOT_TOL,
    );
    for ev in &e.eigenvalues {
        let cert = certify(&seq, ev.mu, s.tol)?;
        s.check(
            format!("{name}: {} is an eigenvalue", ev.mu),
            cert.is_eigenvalue(),
            cert.diagnostics.clone(),
        );
        if let Some(norm) = ev.norm_sq {
            s.close(
                format!("{name}: norm_sq at {}", ev.mu),
                (cert.norm_sq - norm).abs() / norm,
                1e-8,
            );
        }
    }
    for mu in &e.non_eigenvalues {
        let cert = certify(&seq, *mu, s.tol)?;
        s.check(
            format!("{name}: {mu} is not an eigenvalue"),
            !cert.is_eigenvalue(),
            cert.verdict.as_str(),
        );
    }
    let spectrum = discrete_spectrum(&seq, s.tol)?;
    let found: Vec<Complex64> = spectrum
        .iter()
        .filter(|c| c.is_eigenvalue())
        .map(|c| c.mu)
        .collect();
    let matched = found.len() == e.eigenvalues.len()
        && e.eigenvalues
            .iter()
            .all(|ev| found.iter().any(|z| (z - ev.mu).norm() <= ROOT_TOL));
    s.check(
        format!("{name}: discrete spectrum"),
        matched,
        format!("{} eigenvalues found", found.len()),
    );
    for v in &e.vectors {
        let values = seq.phi_eval_stream(v.mu, 2 * n)?;
        if let Some(comps) = &v.components {
            let err = comps
                .iter()
                .zip(&values)
                .fold(0.0, |w, (a, b)| f64::max(w, (a - b).norm()));
            s.close(format!("{name}: components at {}", v.mu), err, ROOT_TOL);
        }
        let err = v
            .squares
            .iter()
            .zip(&values)
            .fold(0.0, |w, (a, b)| f64::max(w, (a - b * b).norm()));
        s.close(
            format!("{name}: squared components at {}", v.mu),
            err,
            ROOT_TOL,
        );
        if let Some(ratio) = v.block_ratio_sq {
            let err = (0..n)
                .filter(|&k| values[k].norm() > 1e-6)
                .map(|k| {
                    let r = values[k + n] / values[k];
                    (r * r - ratio).norm() / ratio.norm().max(1.0)
                })
                .fold(0.0, f64::max);
            s.close(format!("{name}: block ratio at {}", v.mu), err, ROOT_TOL);
        }
    }
    Ok(())
}

fn elementary3(s: &mut Suite) {
    s.guard("elementary-3", |s| {
        let spec = family("elementary-3", &[])?;
        let seq = PhiSequence::new(spec.coeffs.clone());
        let x = CPoly::x();
        let phi3 = &(&x * &seq.phi(2)) - &seq.phi(1);
        s.close(
            "elementary-3: phi_3 = x phi_2 - phi_1",
            pdiff(&seq.phi(3), &phi3),
            0.0,
        );
        let x3 = CPoly::monomial(c(1.0, 0.0), 3);
        s.close(
            "elementary-3: phi_5 = x^3 phi_2",
            pdiff(&seq.phi(5), &(&x3 * &seq.phi(2))),
            POLY_TOL,
        );
        let (q, r) = seq.phi(5).div_rem(&seq.phi(2))?;
        s.close(
            "elementary-3: phi_5 / phi_2 = (x^3, 0)",
            pdiff(&q, &x3).max(r.norm_inf()),
            POLY_TOL,
        );
        let expected = CPoly::from_real(&[0.0, 0.0, 6.0, 0.0, 3.0]);
        s.close(
            "elementary-3: Delta_0 = 3 mu^2 (mu^2 + 2)",
            pdiff(&delta0(&seq)?, &expected),
            POLY_TOL,
        );
        let s3 = 3f64.sqrt();
        let b = seq.jacobi_blocks();
        let diag = [c(0.0, s3), c(0.0, -s3), c(0.0, 0.0)];
        let err = (0..3).fold(0.0, |w, k| f64::max(w, (b.b.get(k, k) - diag[k]).norm()));
        s.close("elementary-3: B diagonal", err, 0.0);
        let unit = b.a.nonzeros() == vec![(2, 0, c(1.0, 0.0))];
        s.check("elementary-3: A has one unit entry at (N-1, 0)", unit, "");
        let values = seq.phi_eval_stream(c(0.0, 0.0), 24)?;
        let head = [
            c(1.0, 0.0),
            c(0.0, -s3),
            c(2.0, 0.0),
            c(0.0, s3),
            c(1.0, 0.0),
            c(0.0, 0.0),
        ];
        let mut err = head
            .iter()
            .zip(&values)
            .fold(0.0, |w, (a, b)| f64::max(w, (a - b).norm()));
        for k in 0..18 {
            err = err.max((values[k + 6] + values[k]).norm());
        }
        s.close(
            "elementary-3: x at 0 is 1, -i*sqrt3, 2, i*sqrt3, 1, 0 with x_(k+6) = -x_k",
            err,
            1e-12,
        );
        let tail = certify(&seq, c(0.0, 0.0), s.tol)?;
        s.check(
            "elementary-3: 0 is rejected",
            !tail.is_eigenvalue(),
            tail.verdict.as_str(),
        );
        let s2 = 2f64.sqrt();
        s.check(
            "elementary-3: |i*sqrt2 - a0| < 1",
            (c(0.0, s2) - spec.coeffs.alpha()[0]).norm() < 1.0,
            "",
        );
        Ok(())
    });
}

fn elementary4(s: &mut Suite) {
    s.guard("elementary-4", |s| {
        let spec = family("elementary-4", &[])?;
        let seq = PhiSequence::new(spec.coeffs.clone());
        let s2 = 2f64.sqrt();
        let p4 = CPoly::from_real(&[2.0, 0.0, 0.0, 0.0, 1.0]);
        s.close(
            "elementary-4: phi_7 = (x^4+2) phi_3",
            pdiff(&seq.phi(7), &(&p4 * &seq.phi(3))),
            POLY_TOL,
        );
        let (q, r) = seq.phi(7).div_rem(&seq.phi(3))?;
        s.close(
            "elementary-4: phi_7 / phi_3 = (x^4+2, 0)",
            pdiff(&q, &p4).max(r.norm_inf()),
            POLY_TOL,
        );
        let block = seq.phi_block(2, 3)?;
        s.close(
            "elementary-4: block form of phi_11",
            pdiff(&block, &seq.phi(11)),
            POLY_TOL,
        );
        let b = seq.jacobi_blocks();
        let diag = [c(0.0, 2.0), c(0.0, 0.0), c(0.0, -2.0), c(0.0, 0.0)];
        let err = (0..4).fold(0.0, |w, k| f64::max(w, (b.b.get(k, k) - diag[k]).norm()));
        s.close("elementary-4: B diagonal", err, 0.0);
        let unit = b.a.nonzeros() == vec![(3, 0, c(1.0, 0.0))];
        s.check("elementary-4: A has one unit entry at (N-1, 0)", unit, "");
        let mu = c(0.0, s2);
        let cert = certify(&seq, mu, s.tol)?;
        let v = eigenvector(&seq, &cert, 16)?;
        let head = [
            c(1.0, 0.0),
            c(0.0, s2 - 2.0),
            c(2.0 * s2 - 3.0, 0.0),
            c(0.0, 0.0),
        ];
        let ratio = 3.0 - 2.0 * s2;
        let mut err = 0.0f64;
        for (k, x) in v.x.iter().enumerate() {
            let want = head[k % 4] * ratio.powi((k / 4) as i32);
            err = err.max((x - want).norm());
        }
        s.close("elementary-4: eigenvector at i*sqrt2", err, ROOT_TOL);
        s.close(
            "elementary-4: y_1 = 2^(-1/4)",
            (v.y[0] - c(2f64.powf(-0.25), 0.0)).norm(),
            ROOT_TOL,
        );
        let zeros = (3..v.y.len()).step_by(4).all(|k| v.y[k] == c(0.0, 0.0));
        s.check("elementary-4: y_(4k+4) = 0 exactly", zeros, "");
        let report = critical_values(&seq, s.tol)?;
        let items = classify(&seq, &report, s.tol)?;
        let eigen: Vec<_> = items
            .iter()
            .filter(|i| i.certificate.is_eigenvalue())
            .collect();
        let rejected: Vec<_> = items
            .iter()
            .filter(|i| !i.certificate.is_eigenvalue())
            .collect();
        let one = eigen.len() == 1
            && (eigen[0].certificate.mu - mu).norm() <= ROOT_TOL
            && (eigen[0].certificate.norm_sq - s2).abs() <= ROOT_TOL;
        s.check(
            "elementary-4: spectrum has the single eigenvalue i*sqrt2, norm_sq sqrt2",
            one,
            "",
        );
        let zero_tags = rejected
            .iter()
            .find(|i| i.critical.value.norm() <= ROOT_TOL)
            .map(|i| i.critical.sources.clone());
        let rejected_ok = rejected.len() == 2
            && rejected
                .iter()
                .any(|i| (i.critical.value - c(0.0, -s2)).norm() <= ROOT_TOL)
            && zero_tags == Some(vec![RootSource::PhiRoot, RootSource::QRoot]);
        s.check(
            "elementary-4: rejected -i*sqrt2 and 0 (from phi_3 and Q_4)",
            rejected_ok,
            format!("{} rejected entries", rejected.len()),
        );
        Ok(())
    });
}

fn elementary5(s: &mut Suite) {
    s.guard("elementary-5", |s| {
        let spec = family("elementary-5", &[])?;
        let seq = PhiSequence::new(spec.coeffs.clone());
        s.close(
            "elementary-5: phi_6 = x^6 + x^2 - 1",
            pdiff(
                &seq.phi(6),
                &CPoly::from_real(&[-1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]),
            ),
            POLY_TOL,
        );
        s.close(
            "elementary-5: P_5 = x^5",
            pdiff(&seq.extract_pn()?, &CPoly::monomial(c(1.0, 0.0), 5)),
            POLY_TOL,
        );
        let two_sqrt5 = 2.0 * 5f64.sqrt();
        let [m1, m2, m3, _] = crate::families::elementary5_nonzero_roots();
        for mu in [m1, m2] {
            let cert = certify(&seq, mu, s.tol)?;
            s.close(
                format!("elementary-5: norm_sq at {mu} is 2*sqrt5"),
                (cert.norm_sq - two_sqrt5).abs(),
                1e-6,
            );
        }
        let cert = certify(&seq, m3, s.tol)?;
        s.check(
            "elementary-5: mu_3 is rejected",
            cert.verdict == Verdict::NotEigenvalue,
            cert.verdict.as_str(),
        );
        Ok(())
    });
}

fn random_triple(rng: &mut ChaCha8Rng) -> [Complex64; 3] {
    let mut z = || c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    [z(), z(), z()]
}

fn generic(s: &mut Suite, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<[Complex64; 3]> = (0..RANDOM_TRIPLES)
        .map(|_| random_triple(&mut rng))
        .collect();
    s.guard("generic-n3 (0,0,0)", |s| {
        family_checks(s, &family("generic-n3", &[0.0, 0.0, 0.0])?)
    });
    let mut worst = [0.0f64; 6];
    let mut lemma = (0usize, 0usize, 0usize);
    s.guard("generic-n3 random triples", |s| {
        for a in &triples {
            let seq = seq_of(a.to_vec())?;
            let (p3, phi2, q3) = generic_polys(*a);
            worst[0] = worst[0].max(pdiff(&seq.extract_pn()?, &p3));
            let report = critical_values(&seq, s.tol)?;
            worst[1] = worst[1].max(pdiff(&monic(&report.qn), &monic(&q3)));
            worst[2] = worst[2].max(pair_err(pair(&seq.phi(2), s.tol)?, generic_phi2_roots(*a)));
            worst[3] = worst[3].max(pair_err(pair(&report.qn, s.tol)?, generic_q3_roots(*a)));
            worst[4] = worst[4].max(pdiff(&seq.phi(2), &phi2));
            for mu in generic_phi2_roots(*a) {
                let d = (mu - a[0]).norm();
                if (d - 1.0).abs() <= 1e-3 {
                    lemma.2 += 1;
                    continue;
                }
                lemma.0 += 1;
                if certify(&seq, mu, s.tol)?.is_eigenvalue() == (d < 1.0) {
                    lemma.1 += 1;
                }
            }
            let balanced = [a[0], a[1], -a[0] - a[1]];
            let seq = seq_of(balanced.to_vec())?;
            let qn = critical_values(&seq, s.tol)?.qn;
            worst[5] = worst[5].max(pair_err(
                pair(&qn, s.tol)?,
                generic_q3_roots_balanced(balanced),
            ));
        }
        Ok(())
    });
    let labels = [
        ("generic-n3: P_3 closed form", POLY_TOL),
        ("generic-n3: Q_3 closed form", POLY_TOL),
        ("generic-n3: phi_2 roots closed form", ROOT_TOL),
        ("generic-n3: Q_3 roots closed form", ROOT_TOL),
        ("generic-n3: phi_2 closed form", POLY_TOL),
        ("generic-n3: balanced Q_3 roots closed form", ROOT_TOL),
    ];
    for ((label, tol), err) in labels.iter().zip(worst) {
        s.close(format!("{label} ({RANDOM_TRIPLES} triples)"), err, *tol);
    }
    s.check(
        "generic-n3: verdict equals |mu - a0| < 1",
        lemma.0 == lemma.1,
        format!(
            "{} of {} agree, {} near ties skipped",
            lemma.1, lemma.0, lemma.2
        ),
    );
    s.guard("generic-n3: tie is boundary", |s| {
        let a = [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let seq = seq_of(a.to_vec())?;
        let cert = certify(&seq, c(1.0, 0.0), s.tol)?;
        s.check(
            "generic-n3: tie |mu - a0| = 1 is boundary",
            cert.verdict == Verdict::Boundary,
            cert.verdict.as_str(),
        );
        Ok(())
    });
}

fn grid(k: usize) -> f64 {
    -1.0 + 2.0 * k as f64 / (GRID_POINTS - 1) as f64
}

fn parametric(s: &mut Suite) {
    s.guard("parametric", |s| {
        for alpha in [-1.0, 0.0, 0.9] {
            family_checks(s, &family("parametric", &[alpha])?)?;
        }
        let a = parametric_alpha(1.0)?;
        s.close(
            "parametric: a0 + a1 + a2 = 0 at alpha = 1",
            (a[0] + a[1] + a[2]).norm(),
            1e-14,
        );
        let mut sum_err = 0.0f64;
        let mut root_err = 0.0f64;
        let mut q_err = 0.0f64;
        let mut pn_err = 0.0f64;
        let mut cubic = 0.0f64;
        let mut bounds = true;
        let mut pattern = Vec::new();
        let mut mu34_rejected = true;
        let lmax = lambda_max();
        let mut grid_max = 0.0f64;
        for k in 0..GRID_POINTS {
            let alpha = grid(k);
            let a = parametric_alpha(alpha)?;
            sum_err = sum_err.max((a[0] + a[1] + a[2]).norm());
            let seq = seq_of(a.to_vec())?;
            let (t1, t2) = alpha_tilde_sq(alpha);
            let p3 = CPoly::new(vec![
                c(0.0, -3f64.sqrt() * alpha * t2),
                c(-t1, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
            ]);
            pn_err = pn_err.max(pdiff(&seq.extract_pn()?, &p3));
            let report = critical_values(&seq, s.tol)?;
            let q3 = CPoly::from_real(&[-t1, 0.0, 3.0]);
            q_err = q_err.max(pdiff(&monic(&report.qn), &monic(&q3)));
            let phi2 = seq.phi(2);
            for mu in mu12(alpha) {
                root_err = root_err.max(phi2.eval(mu).norm());
            }
            for mu in mu34(alpha) {
                root_err = root_err.max(q3.eval(mu).norm());
                mu34_rejected &= !certify(&seq, mu, s.tol)?.is_eigenvalue();
            }
            let flags = [
                certify(&seq, mu12(alpha)[0], s.tol)?.is_eigenvalue(),
                certify(&seq, mu12(alpha)[1], s.tol)?.is_eigenvalue(),
            ];
            let want = match region(alpha) {
                Region::A | Region::Threshold => [false, false],
                Region::B => [false, true],
                Region::C => [true, false],
            };
            if flags != want {
                pattern.push(format!("{alpha:.2}"));
            }
            let lambda = lambda_of_alpha(alpha);
            grid_max = grid_max.max(lambda);
            cubic = cubic.max((lambda.powi(3) - t1 * lambda - 2.0).abs());
            bounds &= lambda >= 2f64.cbrt() - 1e-12 && lambda <= lmax + 1e-12;
        }
        s.close(
            "parametric: coefficients sum to zero (grid)",
            sum_err,
            1e-12,
        );
        s.close("parametric: P_3 closed form (grid)", pn_err, POLY_TOL);
        s.close(
            "parametric: Q_3 = 3 mu^2 - t1^2 up to scale (grid)",
            q_err,
            POLY_TOL,
        );
        s.close(
            "parametric: mu_1..4 are roots of phi_2 and Q_3 (grid)",
            root_err,
            ROOT_TOL,
        );
        s.check(
            "parametric: eigenvalue pattern by region (grid)",
            pattern.is_empty(),
            if pattern.is_empty() {
                format!("{GRID_POINTS} points")
            } else {
                format!("mismatch at alpha = {}", pattern.join(", "))
            },
        );
        s.check(
            "parametric: mu_3,4 never eigenvalues (grid)",
            mu34_rejected,
            "",
        );
        s.close("parametric: lambda cubic residual (grid)", cubic, 1e-12);
        s.check(
            "parametric: cbrt2 <= lambda <= lambda_max (grid)",
            bounds,
            "",
        );
        let peak = lambda_of_alpha(0.5f64.sqrt());
        s.close(
            "parametric: lambda at the peak of t1^2 is lambda_max",
            (peak - lmax).abs(),
            1e-12,
        );
        s.check(
            "parametric: grid maximum of lambda below lambda_max",
            grid_max <= lmax + 1e-12,
            format!("{grid_max:.12} vs {lmax:.12}"),
        );
        for alpha in [-1.0, 0.0, 1.0] {
            s.close(
                format!("parametric: lambda = cbrt2 at alpha = {alpha}"),
                (lambda_of_alpha(alpha) - 2f64.cbrt()).abs(),
                1e-12,
            );
        }
        thresholds_check(s)?;
        endpoints(s)?;
        Ok(())
    });
}

fn thresholds_check(s: &mut Suite) -> Result<()> {
    let t = thresholds();
    let s3 = 3f64.sqrt();
    let inner = (0.25 - (4.0 - 2.0 * s3) / (3.0 * s3)).sqrt();
    let closed = [
        -0.5 - inner,
        -0.5 + inner,
        -0.5 + (0.25 + (4.0 + 2.0 * s3) / (3.0 * s3)).sqrt(),
    ];
    let err = (t.alpha1 - closed[0])
        .abs()
        .max((t.alpha2 - closed[1]).abs())
        .max((t.alpha3 - closed[2]).abs());
    s.close("parametric: thresholds closed form", err, 1e-14);
    let step = 1e-3;
    let count = (2.0 / step) as usize;
    let mut flips = [Vec::new(), Vec::new()];
    let mut last = [None, None];
    for k in 0..=count {
        let alpha = (-1.0 + k as f64 * step).clamp(-1.0, 1.0);
        let seq = seq_of(parametric_alpha(alpha)?.to_vec())?;
        let mu = mu12(alpha);
        for j in 0..2 {
            let flag = certify(&seq, mu[j], s.tol)?.is_eigenvalue();
            if last[j].is_some_and(|p| p != flag) {
                flips[j].push(alpha - step / 2.0);
            }
            last[j] = Some(flag);
        }
    }
    let near = |found: &[f64], want: &[f64]| {
        found.len() == want.len() && found.iter().zip(want).all(|(f, w)| (f - w).abs() <= step)
    };
    s.check(
        "parametric: mu_1 flag switches once, at alpha_3",
        near(&flips[0], &closed[2..]),
        format!("switches at {:?}", flips[0]),
    );
    s.check(
        "parametric: mu_2 flag switches at alpha_1 and alpha_2",
        near(&flips[1], &closed[..2]),
        format!("switches at {:?}", flips[1]),
    );
    Ok(())
}

fn endpoints(s: &mut Suite) -> Result<()> {
    for alpha in [0.0, 2.0 / 3.0, 1.0] {
        let seq = seq_of(parametric_alpha(alpha)?.to_vec())?;
        let curve = support_sample(&seq, 64)?;
        let last = curve.theta.len() - 1;
        let outer = curve.points[..3]
            .iter()
            .chain(&curve.points[3 * last..])
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        s.close(
            format!("parametric: outermost support endpoint at radius lambda, alpha = {alpha:.4}"),
            (outer - lambda_of_alpha(alpha)).abs(),
            ROOT_TOL,
        );
    }
    Ok(())
}
