use num_complex::Complex;
use serde::Serialize;

use crate::cpoly::{roots, CPoly, RootSet};
use crate::error::{Error, Result};
use crate::recur::PhiSequence;
use crate::scalar::Real;

/// Largest truncation size accepted by [`truncation_oracle`].
pub const MAX_ORACLE_N: usize = 64;

/// Sampled preimage `{x : P_N(x) ∈ [−2, 2]}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupportCurve<T> {
    /// `θ_j = πj/(grid−1)`.
    pub theta: Vec<T>,
    /// The N solutions of `P_N(x) = 2cos θ_j` for each `j`, grid-major.
    pub points: Vec<Complex<T>>,
    /// `branches[b][j]`: branch `b` at `θ_j`, by nearest-neighbour
    /// continuation in θ.
    pub branches: Vec<Vec<Complex<T>>>,
}

impl<T: Real> SupportCurve<T> {
    /// Distance from `z` to the polyline through the sampled branches.
    pub fn distance(&self, z: Complex<T>) -> T {
        let mut best = T::infinity();
        for branch in &self.branches {
            for pair in branch.windows(2) {
                best = best.min(segment_distance(z, pair[0], pair[1]));
            }
            if let [only] = branch.as_slice() {
                best = best.min((z - only).norm());
            }
        }
        best
    }
}

fn segment_distance<T: Real>(z: Complex<T>, a: Complex<T>, b: Complex<T>) -> T {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 <= T::epsilon() {
        return (z - a).norm();
    }
    let t = ((z - a) * d.conj()).re / len2;
    let t = t.max(T::zero()).min(T::one());
    (z - (a + d.scale(t))).norm()
}

pub fn support_sample<T: Real>(seq: &PhiSequence<T>, grid_size: usize) -> Result<SupportCurve<T>> {
    if grid_size < 2 {
        return Err(Error::Input(format!(
            "grid size must be at least 2, got {grid_size}"
        )));
    }
    let pn = seq.extract_pn()?;
    let n = seq.period();
    let tol = T::lit(crate::cpoly::DEFAULT_TOL).max(T::epsilon() * T::lit(64.0));
    let step = T::PI() / T::from_usize(grid_size - 1).unwrap();
    let mut theta = Vec::with_capacity(grid_size);
    let mut points = Vec::with_capacity(grid_size * n);
    let mut branches: Vec<Vec<Complex<T>>> = vec![Vec::with_capacity(grid_size); n];
    for j in 0..grid_size {
        let t = step * T::from_usize(j).unwrap();
        let shifted = &pn - &CPoly::constant(Complex::new(T::lit(2.0) * t.cos(), T::zero()));
        let found = roots(&shifted, tol)?.expanded();
        if j == 0 {
            for (b, z) in branches.iter_mut().zip(&found) {
                b.push(*z);
            }
        } else {
            let last: Vec<Complex<T>> = branches.iter().map(|b| *b.last().unwrap()).collect();
            for (b, z) in continue_branches(&last, &found).into_iter().enumerate() {
                branches[b].push(z);
            }
        }
        theta.push(t);
        points.extend(found);
    }
    Ok(SupportCurve {
        theta,
        points,
        branches,
    })
}

/// Greedy matching: repeatedly pair the closest (previous, new) couple.
fn continue_branches<T: Real>(last: &[Complex<T>], new: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut pairs: Vec<(T, usize, usize)> = last
        .iter()
        .enumerate()
        .flat_map(|(i, a)| {
            new.iter()
                .enumerate()
                .map(move |(j, b)| ((a - b).norm(), i, j))
        })
        .collect();
    pairs.sort_by(|x, y| {
        x.0.partial_cmp(&y.0)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then((x.1, x.2).cmp(&(y.1, y.2)))
    });
    let mut out = vec![None; last.len()];
    let mut used = vec![false; new.len()];
    for (_, i, j) in pairs {
        if out[i].is_none() && !used[j] {
            out[i] = Some(new[j]);
            used[j] = true;
        }
    }
    out.into_iter().map(Option::unwrap).collect()
}

/// Eigenvalues of the leading `n × n` truncation of J, i.e. the roots of `φ_n`.
pub fn truncation_oracle<T: Real>(seq: &PhiSequence<T>, n: usize, tol: T) -> Result<RootSet<T>> {
    if !(1..=MAX_ORACLE_N).contains(&n) {
        return Err(Error::Input(format!(
            "truncation size must be in 1..={MAX_ORACLE_N}, got {n}"
        )));
    }
    roots(seq.phi(n as isize).as_ref(), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recur::CoefficientSet;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn elementary3() -> PhiSequence<f64> {
        let s3 = 3f64.sqrt();
        PhiSequence::new(
            CoefficientSet::with_unit_beta(vec![c(0.0, s3), c(0.0, -s3), c(0.0, 0.0)]).unwrap(),
        )
    }

    #[test]
    fn cube_root_spokes() {
        let s = elementary3();
        let curve = support_sample(&s, 33).unwrap();
        assert_eq!(curve.points.len(), 99);
        let pn = s.extract_pn().unwrap();
        for z in &curve.points {
            let p = pn.eval(*z);
            assert!(p.im.abs() <= 1e-8 && p.re.abs() <= 2.0 + 1e-8);
            let cube = z * z * z;
            assert!(cube.im.abs() < 1e-8);
        }
        for b in &curve.branches {
            assert_eq!(b.len(), 33);
            assert!((b[0].norm() - 2f64.cbrt()).abs() < 1e-8);
        }
    }

    #[test]
    fn distance_to_curve() {
        let curve = support_sample(&elementary3(), 65).unwrap();
        assert!(curve.distance(c(0.5, 0.0)) < 1e-3);
        assert!((curve.distance(c(2.0, 0.0)) - 2.0 + 2f64.cbrt()).abs() < 1e-3);
    }

    #[test]
    fn oracle_bounds() {
        let s = elementary3();
        let one = truncation_oracle(&s, 1, 1e-10).unwrap();
        assert!((one.roots[0].value - c(0.0, 3f64.sqrt())).norm() < 1e-15);
        assert!(truncation_oracle(&s, 0, 1e-10).is_err());
        assert!(truncation_oracle(&s, 65, 1e-10).is_err());
    }

    #[test]
    fn grid_too_small() {
        assert!(support_sample(&elementary3(), 1).is_err());
    }
}
