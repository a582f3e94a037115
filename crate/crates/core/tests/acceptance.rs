mod common;

use std::process::Command;

use common::{c, orbit, pair_err, random_complex, random_set, report, unit_beta};
use num_complex::Complex64;
use periodic_jacobi::certify::{support_sample, truncation_oracle};
use periodic_jacobi::critical::{delta_n_scaled, telescoping, telescoping_without_tail};
use periodic_jacobi::families::{
    lambda_max, lambda_of_alpha, mu12, mu34, parametric_alpha, thresholds,
};
use periodic_jacobi::{
    certify, critical_values, discrete_spectrum, eigenvector, family, roots, CPoly, PhiSequence,
    RootSet,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-10;

fn spectrum_of(seq: &PhiSequence<f64>) -> Vec<Complex64> {
    discrete_spectrum(seq, TOL)
        .unwrap()
        .into_iter()
        .filter(|c| c.is_eigenvalue())
        .map(|c| c.mu)
        .collect()
}

fn expanded_err(got: &RootSet<f64>, expected: &[Complex64]) -> f64 {
    let mut got = got.expanded();
    if got.len() != expected.len() {
        return f64::INFINITY;
    }
    let mut worst = 0.0f64;
    for z in expected {
        let (k, d) = got
            .iter()
            .enumerate()
            .map(|(k, w)| (k, (w - z).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        worst = worst.max(d);
        got.remove(k);
    }
    worst
}

fn monic(p: &CPoly<f64>) -> CPoly<f64> {
    p.scale(p.leading().inv())
}

#[test]
fn criterion_01_elementary_3() {
    let s2 = 2f64.sqrt();
    let s3 = 3f64.sqrt();
    let seq = unit_beta(vec![c(0.0, s3), c(0.0, -s3), c(0.0, 0.0)]);
    let r = critical_values(&seq, TOL).unwrap();
    let shape = monic(&r.delta0).max_abs_diff(&CPoly::from_real(&[0.0, 0.0, 2.0, 0.0, 1.0]));
    let root_err = expanded_err(
        &r.critical_values,
        &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, s2), c(0.0, -s2)],
    );
    let spectrum = spectrum_of(&seq);
    let only = spectrum.len() == 1 && (spectrum[0] - c(0.0, s2)).norm() <= 1e-8;
    let rejected = [c(0.0, -s2), c(0.0, 0.0)]
        .iter()
        .all(|mu| !certify(&seq, *mu, TOL).unwrap().is_eigenvalue());
    let passed = shape <= 1e-9 && root_err <= 1e-8 && only && rejected;
    report(
        1,
        passed,
        &format!(
            "shape {shape:.1e}, roots {root_err:.1e}, spectrum {spectrum:?}, rejected {rejected}"
        ),
    );
    assert!(passed);
}

#[test]
fn criterion_02_elementary_4() {
    let s2 = 2f64.sqrt();
    let alpha = vec![c(0.0, 2.0), c(0.0, 0.0), c(0.0, -2.0), c(0.0, 0.0)];
    let seq = unit_beta(alpha.clone());
    let r = critical_values(&seq, TOL).unwrap();
    let zero = c(0.0, 0.0);
    let root_err = expanded_err(
        &r.critical_values,
        &[zero, zero, zero, zero, c(0.0, s2), c(0.0, -s2)],
    );
    let mu = c(0.0, s2);
    let spectrum = spectrum_of(&seq);
    let only = spectrum.len() == 1 && (spectrum[0] - mu).norm() <= 1e-8;
    let cert = certify(&seq, mu, TOL).unwrap();
    let ones = vec![c(1.0, 0.0); 4];
    let oracle: f64 = orbit(&alpha, &ones, mu, 32)
        .iter()
        .map(|v| v.norm_sqr())
        .sum();
    let block = (24.0 - 16.0 * s2) / (12.0 * s2 - 16.0);
    let norm_err = (cert.norm_sq - s2)
        .abs()
        .max((oracle - s2).abs())
        .max((block - s2).abs());
    let v = eigenvector(&seq, &cert, 32).unwrap();
    let head = [
        c(1.0, 0.0),
        c(0.0, s2 - 2.0),
        c(2.0 * s2 - 3.0, 0.0),
        c(0.0, 0.0),
    ];
    let comp_err = head
        .iter()
        .zip(&v.x)
        .fold(0.0f64, |w, (a, b)| w.max((a - b).norm()));
    let zeros = (3..v.y.len()).step_by(4).all(|k| v.y[k] == zero);
    let passed = root_err <= 1e-8 && only && norm_err <= 1e-8 && comp_err <= 1e-8 && zeros;
    report(
        2,
        passed,
        &format!(
            "roots {root_err:.1e}, norm_sq {:.12}, norm err {norm_err:.1e}, components {comp_err:.1e}, exact zeros {zeros}",
            cert.norm_sq
        ),
    );
    assert!(passed);
}

#[test]
fn criterion_03_elementary_5() {
    let s5 = 5f64.sqrt();
    let alpha = vec![
        c(0.0, 0.0),
        c(0.0, s5),
        c(0.0, 0.0),
        c(0.0, 0.0),
        c(0.0, -s5),
    ];
    let seq = unit_beta(alpha.clone());
    let a = (10.0 - 2.0 * s5).sqrt() / 4.0;
    let b = (10.0 + 2.0 * s5).sqrt() / 4.0;
    let m = [
        c(a, (1.0 + s5) / 4.0),
        c(-a, (1.0 + s5) / 4.0),
        c(b, (s5 - 1.0) / 4.0),
        c(-b, (s5 - 1.0) / 4.0),
    ];
    let r = critical_values(&seq, TOL).unwrap();
    let zero = c(0.0, 0.0);
    let root_err = expanded_err(
        &r.critical_values,
        &[m[0], m[1], m[2], m[3], zero, zero, zero, zero],
    );
    let mut spectrum = spectrum_of(&seq);
    spectrum.sort_by(|x, y| x.re.total_cmp(&y.re));
    let exact = spectrum.len() == 2
        && (spectrum[0] - m[1]).norm() <= 1e-8
        && (spectrum[1] - m[0]).norm() <= 1e-8;
    let ones = vec![c(1.0, 0.0); 5];
    let mut norm_err = 0.0f64;
    for mu in [m[0], m[1]] {
        let oracle: f64 = orbit(&alpha, &ones, mu, 150)
            .iter()
            .map(|v| v.norm_sqr())
            .sum();
        let cert = certify(&seq, mu, TOL).unwrap();
        norm_err = norm_err
            .max((oracle - 2.0 * s5).abs())
            .max((cert.norm_sq - oracle).abs());
    }
    let rejected = [m[2], m[3]]
        .iter()
        .all(|mu| !certify(&seq, *mu, TOL).unwrap().is_eigenvalue());
    let passed = root_err <= 1e-8 && exact && norm_err <= 1e-6 && rejected;
    report(
        3,
        passed,
        &format!(
            "roots {root_err:.1e}, eigenvalues {}, norm err {norm_err:.1e}, rejected {rejected}",
            spectrum.len()
        ),
    );
    assert!(passed);
}

#[test]
fn criterion_04_period_polynomials() {
    let s3 = 3f64.sqrt();
    let s5 = 5f64.sqrt();
    let cases = [
        (
            vec![c(0.0, s3), c(0.0, -s3), c(0.0, 0.0)],
            CPoly::from_real(&[0.0, 0.0, 0.0, 1.0]),
        ),
        (
            vec![c(0.0, 2.0), c(0.0, 0.0), c(0.0, -2.0), c(0.0, 0.0)],
            CPoly::from_real(&[2.0, 0.0, 0.0, 0.0, 1.0]),
        ),
        (
            vec![
                c(0.0, 0.0),
                c(0.0, s5),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, -s5),
            ],
            CPoly::from_real(&[0.0, 0.0, 0.0, 0.0, 0.0, 1.0]),
        ),
    ];
    let mut coeff_err = 0.0f64;
    let mut rem_err = 0.0f64;
    for (alpha, want) in cases {
        let seq = unit_beta(alpha);
        let n = seq.period() as isize;
        coeff_err = coeff_err.max(seq.extract_pn().unwrap().max_abs_diff(&want));
        let top = seq.phi(2 * n - 1);
        let (_, r) = top.div_rem(&seq.phi(n - 1)).unwrap();
        rem_err = rem_err.max(r.norm_inf() / top.norm_inf());
    }
    let passed = coeff_err <= 1e-9 && rem_err < 1e-8;
    report(
        4,
        passed,
        &format!("coefficients {coeff_err:.1e}, remainder {rem_err:.1e}"),
    );
    assert!(passed);
}

fn triples() -> Vec<[Complex64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    (0..50)
        .map(|_| {
            [
                random_complex(&mut rng, 2.0),
                random_complex(&mut rng, 2.0),
                random_complex(&mut rng, 2.0),
            ]
        })
        .collect()
}

fn phi2_closed(a: &[Complex64; 3]) -> [Complex64; 2] {
    let mid = (a[0] + a[1]) / 2.0;
    let root = (c(4.0, 0.0) + (a[1] - a[0]).powi(2)).sqrt() / 2.0;
    [mid + root, mid - root]
}

fn roots2(p: &CPoly<f64>) -> [Complex64; 2] {
    let e = roots(p, TOL).unwrap().expanded();
    [e[0], e[1]]
}

#[test]
fn criterion_05_generic_closed_forms() {
    let mut phi_err = 0.0f64;
    let mut q_err = 0.0f64;
    let mut balanced_err = 0.0f64;
    for a in triples() {
        let seq = unit_beta(a.to_vec());
        phi_err = phi_err.max(pair_err(roots2(&seq.phi(2)), phi2_closed(&a)));
        let sum = a[0] + a[1] + a[2];
        let disc =
            a[0] * a[0] + a[1] * a[1] + a[2] * a[2] - a[0] * a[1] - a[1] * a[2] - a[0] * a[2] + 9.0;
        let closed = [(sum + disc.sqrt()) / 3.0, (sum - disc.sqrt()) / 3.0];
        let qn = critical_values(&seq, TOL).unwrap().qn;
        q_err = q_err.max(pair_err(roots2(&qn), closed));
        let b = [a[0], a[1], -a[0] - a[1]];
        let seq = unit_beta(b.to_vec());
        let r = (c(1.0, 0.0) + (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]) / 6.0).sqrt();
        let qn = critical_values(&seq, TOL).unwrap().qn;
        balanced_err = balanced_err.max(pair_err(roots2(&qn), [r, -r]));
    }
    let passed = phi_err <= 1e-8 && q_err <= 1e-8 && balanced_err <= 1e-8;
    report(
        5,
        passed,
        &format!("phi_2 roots {phi_err:.1e}, Q_3 roots {q_err:.1e}, balanced {balanced_err:.1e}"),
    );
    assert!(passed);
}

#[test]
fn criterion_06_radius_criterion() {
    let (mut tested, mut agree) = (0, 0);
    for a in triples() {
        let seq = unit_beta(a.to_vec());
        for mu in phi2_closed(&a) {
            let d = (mu - a[0]).norm();
            if (d - 1.0).abs() <= 1e-3 {
                continue;
            }
            tested += 1;
            if certify(&seq, mu, TOL).unwrap().is_eigenvalue() == (d < 1.0) {
                agree += 1;
            }
        }
    }
    let passed = tested > 0 && agree == tested;
    report(6, passed, &format!("{agree} of {tested} verdicts agree"));
    assert!(passed);
}

#[test]
fn criterion_07_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut lemma1 = 0.0f64;
    let mut lemma2 = 0.0f64;
    let mut corrected = 0.0f64;
    let mut printed = 0.0f64;
    let mut remark2 = 0.0f64;
    let mut counterexamples = Vec::new();
    for case in 0..100 {
        let n = 2 + case % 5;
        let set = random_set(&mut rng, n);
        let seq = PhiSequence::new(set.clone());
        let pn = seq.extract_pn().unwrap();
        for k in 2 * n..4 * n {
            let rhs = &(&pn * &seq.phi((k - n) as isize)) - &seq.phi((k - 2 * n) as isize);
            lemma1 = lemma1.max(seq.phi(k as isize).rel_diff(&rhs));
        }
        let (d0, _) = delta_n_scaled(&seq, 0).unwrap();
        for m in 1..=n + 1 {
            let (dm, scale) = delta_n_scaled(&seq, m).unwrap();
            lemma2 = lemma2.max(dm.max_abs_diff(&d0) / scale);
        }
        for m in 2..=4 {
            let (l, r) = telescoping(&seq, m).unwrap();
            corrected = corrected.max(l.rel_diff(&r));
            let (l, r) = telescoping_without_tail(&seq, m).unwrap();
            printed = printed.max(l.rel_diff(&r));
        }
        let report = critical_values(&seq, TOL).unwrap();
        if report.division_remainder > 1e-8 {
            counterexamples.push(format!("{:?}", set.alpha()));
        }
        remark2 = remark2.max(report.division_remainder);
    }
    for example in &counterexamples {
        println!("divisibility counterexample: alpha = {example}");
    }
    let passed = lemma1 <= 1e-8 && lemma2 <= 1e-8 && printed <= 1e-8 && remark2 <= 1e-8;
    report(
        7,
        passed,
        &format!(
            "lemma 1 {lemma1:.1e}, lemma 2 {lemma2:.1e}, telescoping as stated {printed:.1e} \
             (with the closing block term {corrected:.1e}), divisibility {remark2:.1e}"
        ),
    );
    assert!(
        corrected <= 1e-8,
        "corrected telescoping identity failed: {corrected:e}"
    );
    assert!(passed);
}

#[test]
fn criterion_08_parametric_family() {
    let lmax = lambda_max();
    let cbrt2 = 2f64.cbrt();
    let s3 = 3f64.sqrt();
    let inner = (0.25 - (4.0 - 2.0 * s3) / (3.0 * s3)).sqrt();
    let closed = [
        -0.5 - inner,
        -0.5 + inner,
        -0.5 + (0.25 + (4.0 + 2.0 * s3) / (3.0 * s3)).sqrt(),
    ];
    let mut cubic = 0.0f64;
    let mut bounds = true;
    let mut mu34_rejected = true;
    let mut pattern = true;
    for k in 0..41 {
        let alpha = -1.0 + k as f64 / 20.0;
        let t1 = 6.75 * alpha * alpha * (1.0 - alpha * alpha);
        let lambda = lambda_of_alpha(alpha);
        cubic = cubic.max((lambda.powi(3) - t1 * lambda - 2.0).abs());
        bounds &= lambda >= cbrt2 - 1e-12 && lambda <= lmax + 1e-12;
        let seq = unit_beta(parametric_alpha(alpha).unwrap().to_vec());
        for mu in mu34(alpha) {
            mu34_rejected &= !certify(&seq, mu, TOL).unwrap().is_eigenvalue();
        }
        let flags = mu12(alpha).map(|mu| certify(&seq, mu, TOL).unwrap().is_eigenvalue());
        let want = if alpha > closed[2] {
            [true, false]
        } else if alpha > closed[0] && alpha < closed[1] {
            [false, true]
        } else {
            [false, false]
        };
        pattern &= flags == want;
    }
    let step = 1e-3;
    let mut flips: [Vec<f64>; 2] = [Vec::new(), Vec::new()];
    let mut last: [Option<bool>; 2] = [None, None];
    for k in 0..=2000 {
        let alpha = (-1.0 + k as f64 * step).min(1.0);
        let seq = unit_beta(parametric_alpha(alpha).unwrap().to_vec());
        let mu = mu12(alpha);
        for j in 0..2 {
            let flag = certify(&seq, mu[j], TOL).unwrap().is_eigenvalue();
            if last[j].is_some_and(|p| p != flag) {
                flips[j].push(alpha - step / 2.0);
            }
            last[j] = Some(flag);
        }
    }
    let located = flips[0].len() == 1
        && flips[1].len() == 2
        && (flips[0][0] - closed[2]).abs() <= step
        && (flips[1][0] - closed[0]).abs() <= step
        && (flips[1][1] - closed[1]).abs() <= step;
    let t = thresholds();
    let bisected = t
        .bisected
        .iter()
        .zip(closed)
        .all(|(b, w)| (b - w).abs() <= step);
    let passed = cubic <= 1e-12 && bounds && mu34_rejected && pattern && located && bisected;
    report(
        8,
        passed,
        &format!(
            "cubic {cubic:.1e}, bounds {bounds}, mu_3,4 rejected {mu34_rejected}, pattern {pattern}, \
             crossings mu_1 {:?} mu_2 {:?}",
            flips[0], flips[1]
        ),
    );
    assert!(passed);
}

#[test]
fn criterion_09_truncation_oracle() {
    let s2 = 2f64.sqrt();
    let seq = unit_beta(vec![c(0.0, 2.0), c(0.0, 0.0), c(0.0, -2.0), c(0.0, 0.0)]);
    let curve = support_sample(&seq, 512).unwrap();
    let up = c(0.0, s2);
    let down = c(0.0, -s2);
    let mut distances = Vec::new();
    let mut isolated_down = false;
    let mut off_curve = 0.0f64;
    for n in [16, 24, 32] {
        let set = truncation_oracle(&seq, n, TOL).unwrap();
        let (near, d) = set.nearest(up).unwrap();
        distances.push(d);
        isolated_down |= set.nearest(down).unwrap().1 < 0.05;
        for r in &set.roots {
            if r.value != near.value {
                off_curve = off_curve.max(curve.distance(r.value));
            }
        }
    }
    let decreasing = distances.windows(2).all(|w| w[1] < w[0]);
    let passed = decreasing && distances[2] < 0.05 && !isolated_down && off_curve <= 0.1;
    report(
        9,
        passed,
        &format!("distances to i*sqrt2 {:?}, root near -i*sqrt2 {isolated_down}, off-curve {off_curve:.1e}", distances.iter().map(|d| format!("{d:.1e}")).collect::<Vec<_>>()),
    );
    assert!(passed);
}

#[test]
fn criterion_10_determinism() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_pjacobi"))
            .args(["verify", "--format", "json", "--seed", "11"])
            .output()
            .unwrap()
    };
    let first = run();
    let second = run();
    let passed =
        first.status.code() == Some(0) && !first.stdout.is_empty() && first.stdout == second.stdout;
    report(
        10,
        passed,
        &format!(
            "{} bytes, exit {:?}",
            first.stdout.len(),
            first.status.code()
        ),
    );
    assert!(passed);
}

#[test]
fn families_are_consistent() {
    for name in ["elementary-3", "elementary-4", "elementary-5"] {
        assert_eq!(family(name, &[]).unwrap().consistency_error(), None);
    }
}
