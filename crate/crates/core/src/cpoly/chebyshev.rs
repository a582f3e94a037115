use num_complex::Complex;
use num_traits::One;

use super::CPoly;
use crate::scalar::Real;

/// Chebyshev polynomial of the second kind in the argument `t = 2cosθ`:
/// `U₋₁ = 0`, `U₀ = 1`, `U_{n+1} = t·U_n − U_{n−1}`.
///
/// Panics for `n < -1`.
pub fn chebyshev_u<T: Real>(n: isize) -> CPoly<T> {
    assert!(n >= -1, "chebyshev_u is defined for n >= -1, got {n}");
    let mut prev = CPoly::zero();
    let mut cur = CPoly::one();
    if n == -1 {
        return prev;
    }
    let t = CPoly::monomial(Complex::one(), 1);
    for _ in 0..n {
        let next = &(&t * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}
