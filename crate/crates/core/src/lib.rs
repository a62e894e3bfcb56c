//! Entropies of fermionic Gaussian states from reduced one-particle density
//! operators, an exact Fock-space oracle, closed-form excitation entropies,
//! and the Rindler-wedge spectrum and relative entropy.

pub mod error;
pub mod excitations;
pub mod fock;
pub mod gaussian;
pub mod linalg;
pub mod matrix_io;
pub mod quadrature;
pub mod rindler;
pub mod sampling;

pub use error::{Error, Result, Violation};
pub use gaussian::{
    BogoliubovTransform, CovarianceMatrix, OneParticleDensity, RelativeEntropy, Tolerances,
};
