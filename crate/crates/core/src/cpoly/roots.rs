//! Simultaneous root finding (Aberth–Ehrlich) with Newton polish and
//! multiplicity clustering.

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use super::CPoly;
use crate::error::{Error, Result};
use crate::scalar::{to_c64, Real};

/// Default residual tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
pub struct RootOptions<T> {
    /// Accepted backward residual `|p(z)| / Σ|c_k||z|^k`. Its square root,
    /// scaled by `1 + |z|`, is the clustering radius for multiple roots.
    pub tol: T,
    pub max_iter: usize,
}

impl<T: Real> Default for RootOptions<T> {
    fn default() -> Self {
        Self {
            tol: T::lit(DEFAULT_TOL),
            max_iter: 800,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Root<T> {
    pub value: Complex<T>,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootSet<T> {
    /// Distinct roots, ordered by real part then imaginary part.
    pub roots: Vec<Root<T>>,
    /// Largest backward residual over the reported roots.
    pub residual: T,
    /// Base clustering radius; the effective radius at `z` is `radius·(1+|z|)`.
    pub cluster_radius: T,
}

impl<T: Real> RootSet<T> {
    /// Sum of multiplicities.
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Every root repeated by its multiplicity.
    pub fn expanded(&self) -> Vec<Complex<T>> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
            .collect()
    }

    /// Closest reported root to `z` and its distance.
    pub fn nearest(&self, z: Complex<T>) -> Option<(Root<T>, T)> {
        self.roots
            .iter()
            .map(|r| (*r, (r.value - z).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
    }
}

/// All roots of `p` using the default iteration cap.
pub fn roots<T: Real>(p: &CPoly<T>, tol: T) -> Result<RootSet<T>> {
    roots_with(
        p,
        RootOptions {
            tol,
            ..RootOptions::default()
        },
    )
}

pub fn roots_with<T: Real>(p: &CPoly<T>, opts: RootOptions<T>) -> Result<RootSet<T>> {
    let degree = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::ConstantPolynomial),
    };
    let radius = opts.tol.sqrt();

    // Exact zero roots are split off first.
    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let reduced = CPoly::new(p.coeffs()[zeros..].to_vec());
    let mut found: Vec<Root<T>> = Vec::new();
    if zeros > 0 {
        found.push(Root {
            value: Complex::zero(),
            multiplicity: zeros,
        });
    }

    match reduced.degree().unwrap_or(0) {
        0 => {}
        1 => {
            let c = reduced.coeffs();
            found.push(Root {
                value: -c[0] / c[1],
                multiplicity: 1,
            });
        }
        _ => {
            let mut z = aberth(&reduced, &opts)?;
            polish(&reduced, &mut z);
            found.extend(cluster(&reduced, &z, radius));
        }
    }

    found.sort_by(|a, b| {
        a.value
            .re
            .partial_cmp(&b.value.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(
                a.value
                    .im
                    .partial_cmp(&b.value.im)
                    .unwrap_or(std::cmp::Ordering::Equal),
            )
    });
    debug_assert_eq!(found.iter().map(|r| r.multiplicity).sum::<usize>(), degree);

    let residual = found
        .iter()
        .map(|r| backward_residual(p, r.value))
        .fold(T::zero(), T::max);
    Ok(RootSet {
        roots: found,
        residual,
        cluster_radius: radius,
    })
}

/// `|p(z)| / Σ|c_k||z|^k`
pub fn backward_residual<T: Real>(p: &CPoly<T>, z: Complex<T>) -> T {
    let (v, scale) = p.eval_with_scale(z);
    if scale.is_zero() {
        T::zero()
    } else {
        v.norm() / scale
    }
}

fn aberth<T: Real>(p: &CPoly<T>, opts: &RootOptions<T>) -> Result<Vec<Complex<T>>> {
    let n = p.degree().unwrap();
    let lead = p.leading();
    let monic = p.scale(lead.inv());
    let dp = monic.derivative();

    // Cauchy bound on the root moduli.
    let bound = T::one()
        + monic.coeffs()[..n]
            .iter()
            .fold(T::zero(), |m, c| m.max(c.norm()));
    let nf = T::from_usize(n).unwrap();
    let offset = T::lit(0.4);
    let mut z: Vec<Complex<T>> = (0..n)
        .map(|k| {
            let angle = T::TAU() * T::from_usize(k).unwrap() / nf + offset;
            Complex::from_polar(bound, angle)
        })
        .collect();

    let eps = T::epsilon();
    let stop = eps * T::lit(4.0) * nf;
    let mut done = vec![false; n];
    for _ in 0..opts.max_iter {
        let mut active = false;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (pv, scale) = monic.eval_with_scale(z[i]);
            if pv.norm() <= stop * scale {
                done[i] = true;
                continue;
            }
            active = true;
            let dv = dp.eval(z[i]);
            let ratio = if dv.is_zero() {
                // stationary point: nudge off it
                Complex::new(eps.sqrt() * (T::one() + z[i].norm()), T::zero())
            } else {
                pv / dv
            };
            let repulsion =
                (0..n)
                    .filter(|&j| j != i)
                    .fold(Complex::zero(), |acc: Complex<T>, j| {
                        let d = z[i] - z[j];
                        if d.is_zero() {
                            acc
                        } else {
                            acc + d.inv()
                        }
                    });
            let denom = Complex::new(T::one(), T::zero()) - ratio * repulsion;
            let step = if denom.is_zero() {
                ratio
            } else {
                ratio / denom
            };
            z[i] -= step;
            if step.norm() <= eps * z[i].norm() {
                done[i] = true;
            }
        }
        if !active {
            break;
        }
    }

    let residual = z
        .iter()
        .map(|&r| backward_residual(&monic, r))
        .fold(T::zero(), T::max);
    if residual > opts.tol || z.iter().any(|r| !r.re.is_finite() || !r.im.is_finite()) {
        return Err(Error::NoConvergence {
            iterations: opts.max_iter,
            residual: residual.as_f64(),
            best: z.iter().map(|&r| to_c64(r)).collect(),
        });
    }
    Ok(z)
}

fn polish<T: Real>(p: &CPoly<T>, z: &mut [Complex<T>]) {
    let dp = p.derivative();
    for r in z.iter_mut() {
        let mut best = p.eval(*r).norm();
        for _ in 0..3 {
            let dv = dp.eval(*r);
            if dv.is_zero() || best.is_zero() {
                break;
            }
            let cand = *r - p.eval(*r) / dv;
            let val = p.eval(cand).norm();
            if val < best {
                *r = cand;
                best = val;
            } else {
                break;
            }
        }
    }
}

/// Single-linkage clustering of approximate roots; each cluster becomes one
/// root whose multiplicity is the cluster size.
fn cluster<T: Real>(p: &CPoly<T>, z: &[Complex<T>], radius: T) -> Vec<Root<T>> {
    let n = z.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = T::one() + z[i].norm().max(z[j].norm());
            if (z[i] - z[j]).norm() < radius * scale {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[b] = a;
                }
            }
        }
    }

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }

    groups
        .into_iter()
        .map(|g| {
            let m = g.len();
            let sum = g
                .iter()
                .fold(Complex::zero(), |acc: Complex<T>, &i| acc + z[i]);
            let mut value = sum / T::from_usize(m).unwrap();
            if m > 1 {
                value = refine_multiple(p, value, m);
            }
            Root {
                value,
                multiplicity: m,
            }
        })
        .collect()
}

/// Newton on the (m−1)-th derivative, which has a simple root at a root of
/// multiplicity m.
fn refine_multiple<T: Real>(p: &CPoly<T>, start: Complex<T>, m: usize) -> Complex<T> {
    let mut d = p.clone();
    for _ in 1..m {
        d = d.derivative();
    }
    let dd = d.derivative();
    let mut z = start;
    let mut best = d.eval(z).norm();
    for _ in 0..5 {
        let dv = dd.eval(z);
        if dv.is_zero() || best.is_zero() {
            break;
        }
        let cand = z - d.eval(z) / dv;
        let val = d.eval(cand).norm();
        if val < best && (cand - start).norm() <= (T::one() + start.norm()) * T::lit(1e-3) {
            z = cand;
            best = val;
        } else {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn has_root(set: &RootSet<f64>, z: Complex64, mult: usize, tol: f64) -> bool {
        set.roots
            .iter()
            .any(|r| (r.value - z).norm() < tol && r.multiplicity == mult)
    }

    #[test]
    fn linear_case() {
        let p = CPoly::linear(c(1.5, -2.0));
        let set = roots(&p, 1e-10).unwrap();
        assert_eq!(set.roots.len(), 1);
        assert!((set.roots[0].value - c(1.5, -2.0)).norm() < 1e-15);
    }

    #[test]
    fn double_zero_and_pair() {
        // μ²(μ²+2)
        let p = CPoly::from_real(&[0.0, 0.0, 2.0, 0.0, 1.0]);
        let set = roots(&p, 1e-10).unwrap();
        let s2 = 2f64.sqrt();
        assert_eq!(set.total_multiplicity(), 4);
        assert!(has_root(&set, c(0.0, 0.0), 2, 1e-12));
        assert!(has_root(&set, c(0.0, s2), 1, 1e-12));
        assert!(has_root(&set, c(0.0, -s2), 1, 1e-12));
    }

    #[test]
    fn quadruple_zero() {
        // μ⁴(μ²+2)
        let p = CPoly::from_real(&[0.0, 0.0, 0.0, 0.0, 2.0, 0.0, 1.0]);
        let set = roots(&p, 1e-10).unwrap();
        assert!(has_root(&set, c(0.0, 0.0), 4, 1e-12));
        assert_eq!(set.roots.len(), 3);
    }

    #[test]
    fn multiple_root_away_from_origin() {
        // (x-1)^3 (x+2i)
        let p = CPoly::from_roots(&[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, -2.0)]);
        let set = roots(&p, 1e-10).unwrap();
        assert!(has_root(&set, c(1.0, 0.0), 3, 1e-8), "{set:?}");
        assert!(has_root(&set, c(0.0, -2.0), 1, 1e-10));
    }

    #[test]
    fn complex_coefficients() {
        let rs = [
            c(0.3, 0.7),
            c(-1.2, 0.1),
            c(0.0, -0.9),
            c(2.0, 2.0),
            c(-0.5, -1.5),
        ];
        let p = CPoly::from_roots(&rs).scale(c(0.5, -3.0));
        let set = roots(&p, 1e-10).unwrap();
        assert_eq!(set.roots.len(), 5);
        for r in rs {
            assert!(has_root(&set, r, 1, 1e-10));
        }
        assert!(set.residual <= 1e-10);
    }

    #[test]
    fn constant_rejected() {
        assert_eq!(
            roots(&CPoly::<f64>::one(), 1e-10),
            Err(Error::ConstantPolynomial)
        );
        assert_eq!(
            roots(&CPoly::<f64>::zero(), 1e-10),
            Err(Error::ConstantPolynomial)
        );
    }

    #[test]
    fn iteration_cap_reports_best_iterate() {
        let p = CPoly::from_real(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        let err = roots_with(
            &p,
            RootOptions {
                tol: 1e-10,
                max_iter: 1,
            },
        )
        .unwrap_err();
        match err {
            Error::NoConvergence {
                best, iterations, ..
            } => {
                assert_eq!(iterations, 1);
                assert_eq!(best.len(), 7);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn single_precision_roots() {
        let p = CPoly::<f32>::from_real(&[-1.0, 0.0, 1.0]);
        let set = roots(&p, 1e-5f32).unwrap();
        assert_eq!(set.roots.len(), 2);
        assert!((set.roots[0].value.re + 1.0).abs() < 1e-5);
        assert!((set.roots[1].value.re - 1.0).abs() < 1e-5);
    }
}
