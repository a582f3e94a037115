#![allow(dead_code)]

use num_complex::Complex64;
use periodic_jacobi::{CoefficientSet, PhiSequence};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn unit_beta(alpha: Vec<Complex64>) -> PhiSequence<f64> {
    PhiSequence::new(CoefficientSet::with_unit_beta(alpha).unwrap())
}

pub fn random_complex(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    c(
        rng.gen_range(-radius..radius),
        rng.gen_range(-radius..radius),
    )
}

/// Random period-`n` coefficients with `Π β = 1`: β drawn from the annulus
/// `0.5 ≤ |β| ≤ 1.5`, then divided by `(Π β)^{1/n}`.
pub fn random_set(rng: &mut ChaCha8Rng, n: usize) -> CoefficientSet<f64> {
    let alpha: Vec<Complex64> = (0..n).map(|_| random_complex(rng, 1.0)).collect();
    let mut beta: Vec<Complex64> = (0..n)
        .map(|_| {
            Complex64::from_polar(
                rng.gen_range(0.5..1.5),
                rng.gen_range(0.0..std::f64::consts::TAU),
            )
        })
        .collect();
    let det: Complex64 = beta.iter().product();
    let root = det.powf(1.0 / n as f64);
    for b in &mut beta {
        *b /= root;
    }
    CoefficientSet::new(alpha, beta).unwrap()
}

/// `φ_0(μ), φ_1(μ), …` by the scalar recurrence, independent of the library.
pub fn orbit(
    alpha: &[Complex64],
    beta: &[Complex64],
    mu: Complex64,
    count: usize,
) -> Vec<Complex64> {
    let n = alpha.len();
    let mut out = Vec::with_capacity(count);
    let (mut prev, mut cur) = (c(0.0, 0.0), c(1.0, 0.0));
    for k in 0..count {
        out.push(cur);
        let next = (mu - alpha[k % n]) * cur - beta[k % n] * prev;
        prev = cur;
        cur = next;
    }
    out
}

/// Unordered distance between two root pairs.
pub fn pair_err(a: [Complex64; 2], b: [Complex64; 2]) -> f64 {
    let straight = (a[0] - b[0]).norm().max((a[1] - b[1]).norm());
    let crossed = (a[0] - b[1]).norm().max((a[1] - b[0]).norm());
    straight.min(crossed)
}

pub fn report(criterion: u32, passed: bool, detail: &str) {
    let verdict = if passed { "PASS" } else { "FAIL" };
    println!("criterion {criterion:>2}: {verdict}  {detail}");
}
