mod common;

use common::{c, orbit, random_set, unit_beta};
use num_complex::{Complex32, Complex64};
use periodic_jacobi::certify::partial_norms;
use periodic_jacobi::critical::{delta_n_scaled, telescoping};
use periodic_jacobi::{
    certify, critical_values, roots, CPoly, CPoly32, CoefficientSet32, PhiSequence, PhiSequence32,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-10;

fn sequence(seed: u64, n: usize) -> PhiSequence<f64> {
    PhiSequence::new(random_set(&mut ChaCha8Rng::seed_from_u64(seed), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn block_recurrence(seed in any::<u64>(), n in 2usize..=6) {
        let seq = sequence(seed, n);
        let pn = seq.extract_pn().unwrap();
        for k in 2 * n..4 * n {
            let rhs = &(&pn * &seq.phi((k - n) as isize)) - &seq.phi((k - 2 * n) as isize);
            prop_assert!(seq.phi(k as isize).rel_diff(&rhs) <= 1e-9);
        }
    }

    #[test]
    fn chebyshev_block_form(seed in any::<u64>(), n in 2usize..=6, m in 2usize..=4) {
        let seq = sequence(seed, n);
        for k in 0..n {
            let block = seq.phi_block(m, k).unwrap();
            prop_assert!(block.rel_diff(&seq.phi((n * m + k) as isize)) <= 1e-9);
        }
    }

    #[test]
    fn stream_matches_polynomials(seed in any::<u64>(), n in 2usize..=6, re in -1.5f64..1.5, im in -1.5f64..1.5) {
        let seq = sequence(seed, n);
        let mu = c(re, im);
        let values = seq.phi_eval_stream(mu, 3 * n).unwrap();
        let direct = orbit(seq.coeffs().alpha(), seq.coeffs().beta(), mu, 3 * n);
        for (k, v) in values.iter().enumerate() {
            let (p, scale) = seq.phi(k as isize).eval_with_scale(mu);
            prop_assert!((v - p).norm() <= 1e-11 * scale.max(1.0));
            prop_assert!((v - direct[k]).norm() <= 1e-11 * scale.max(1.0));
        }
    }

    #[test]
    fn critical_polynomial_is_shift_invariant(seed in any::<u64>(), n in 2usize..=6) {
        let seq = sequence(seed, n);
        let (d0, _) = delta_n_scaled(&seq, 0).unwrap();
        for m in 1..=2 * n {
            let (dm, scale) = delta_n_scaled(&seq, m).unwrap();
            prop_assert!(dm.max_abs_diff(&d0) <= 1e-9 * scale);
        }
    }

    #[test]
    fn telescoped_sums(seed in any::<u64>(), n in 2usize..=6, m in 2usize..=5) {
        let seq = sequence(seed, n);
        let (lhs, rhs) = telescoping(&seq, m).unwrap();
        prop_assert!(lhs.rel_diff(&rhs) <= 1e-9);
    }

    #[test]
    fn jacobi_rows_annihilate_phi(seed in any::<u64>(), n in 2usize..=6, re in -1.0f64..1.0, im in -1.0f64..1.0) {
        let seq = sequence(seed, n);
        let mu = c(re, im);
        let x = seq.phi_eval_stream(mu, 4 * n).unwrap();
        let jx = seq.jacobi_blocks().apply_interior(&x);
        let scale = x.iter().fold(1.0f64, |m, v| m.max(v.norm()));
        for (j, v) in jx.iter().zip(&x) {
            prop_assert!((j - mu * v).norm() <= 1e-11 * scale);
        }
    }

    #[test]
    fn roots_recover_vieta(zs in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..8)) {
        let zs: Vec<Complex64> = zs.into_iter().map(|(re, im)| c(re, im)).collect();
        let separated = zs
            .iter()
            .enumerate()
            .all(|(i, a)| zs[..i].iter().all(|b| (a - b).norm() > 0.1));
        prop_assume!(separated);
        let p = CPoly::from_roots(&zs);
        let got = roots(&p, TOL).unwrap();
        prop_assert_eq!(got.total_multiplicity(), zs.len());
        for z in &zs {
            prop_assert!(got.nearest(*z).unwrap().1 <= 1e-8);
        }
        let sum: Complex64 = got.expanded().iter().sum();
        prop_assert!((sum + p.coeff(zs.len() - 1)).norm() <= 1e-9);
    }

    #[test]
    fn partial_norms_are_monotone(seed in any::<u64>(), n in 2usize..=6, re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let seq = sequence(seed, n);
        let sums = partial_norms(&seq, c(re, im), 5 * n).unwrap();
        prop_assert!(sums.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn radius_criterion(a0 in (-2.0f64..2.0, -2.0f64..2.0), a1 in (-2.0f64..2.0, -2.0f64..2.0), a2 in (-2.0f64..2.0, -2.0f64..2.0)) {
        let a = [c(a0.0, a0.1), c(a1.0, a1.1), c(a2.0, a2.1)];
        let seq = unit_beta(a.to_vec());
        for mu in roots(&seq.phi(2), TOL).unwrap().expanded() {
            let d = (mu - a[0]).norm();
            prop_assume!((d - 1.0).abs() > 1e-3);
            prop_assert_eq!(certify(&seq, mu, TOL).unwrap().is_eigenvalue(), d < 1.0);
        }
    }
}

#[test]
fn divisibility_on_random_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for case in 0..100 {
        let seq = PhiSequence::new(random_set(&mut rng, 2 + case % 5));
        let report = critical_values(&seq, TOL).unwrap();
        assert!(
            report.division_remainder <= 1e-8,
            "case {case}: {:e}",
            report.division_remainder
        );
        assert!(report.warnings.is_empty());
    }
}

#[test]
fn partial_norms_converge_to_certified_norm() {
    let s2 = 2f64.sqrt();
    let s5 = 5f64.sqrt();
    let cases = [
        (
            vec![c(0.0, 2.0), c(0.0, 0.0), c(0.0, -2.0), c(0.0, 0.0)],
            c(0.0, s2),
            32,
        ),
        (
            vec![
                c(0.0, 0.0),
                c(0.0, s5),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, -s5),
            ],
            c((10.0 - 2.0 * s5).sqrt() / 4.0, (1.0 + s5) / 4.0),
            150,
        ),
    ];
    for (alpha, mu, count) in cases {
        let seq = unit_beta(alpha);
        let cert = certify(&seq, mu, TOL).unwrap();
        assert!(cert.is_eigenvalue());
        let sums = partial_norms(&seq, mu, count).unwrap();
        assert!((sums[count - 1] - cert.norm_sq).abs() <= 1e-9 * cert.norm_sq);
    }
}

#[test]
fn single_precision_aliases() {
    let alpha = vec![
        Complex32::new(0.0, 2.0),
        Complex32::new(0.0, 0.0),
        Complex32::new(0.0, -2.0),
        Complex32::new(0.0, 0.0),
    ];
    let seq: PhiSequence32 = PhiSequence::new(CoefficientSet32::with_unit_beta(alpha).unwrap());
    let pn = seq.extract_pn().unwrap();
    assert!(pn.max_abs_diff(&CPoly32::from_real(&[2.0, 0.0, 0.0, 0.0, 1.0])) <= 1e-5);
    let cert = certify(&seq, Complex32::new(0.0, 2f32.sqrt()), 1e-5).unwrap();
    assert!(cert.is_eigenvalue());
    assert!((cert.norm_sq - 2f32.sqrt()).abs() <= 1e-4);
    let rejected = certify(&seq, Complex32::new(0.0, -2f32.sqrt()), 1e-5).unwrap();
    assert!(!rejected.is_eigenvalue());
}
