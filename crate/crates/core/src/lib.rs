//! Discrete spectrum of periodic complex Jacobi matrices.
//!
//! Orthogonal polynomials of a period-N three-term recurrence, the period
//! and critical polynomials derived from them, and a certifier deciding
//! which critical values are ℓ² eigenvalues.

pub mod certify;
pub mod cli;
pub mod cpoly;
pub mod critical;
pub mod error;
pub mod families;
pub mod recur;
pub mod scalar;

pub use certify::{
    certify, classify, discrete_spectrum, eigenvector, Certificate, Eigenvector, Verdict,
};
pub use cpoly::{chebyshev_u, roots, CPoly, Root, RootSet};
pub use critical::{critical_values, CriticalReport, CriticalValue, RootSource};
pub use error::{Error, Result};
pub use families::{family, FamilyName, FamilySpec};
pub use recur::{CoefficientSet, Convention, JacobiBlocks, PhiSequence};
pub use scalar::Real;

pub type CPoly64 = CPoly<f64>;
pub type CPoly32 = CPoly<f32>;
pub type CoefficientSet64 = CoefficientSet<f64>;
pub type CoefficientSet32 = CoefficientSet<f32>;
pub type PhiSequence64 = PhiSequence<f64>;
pub type PhiSequence32 = PhiSequence<f32>;
pub type Certificate64 = Certificate<f64>;
pub type Certificate32 = Certificate<f32>;
