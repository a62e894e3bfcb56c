use std::fmt;

use thiserror::Error;

/// A single constraint that a candidate covariance matrix failed.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    /// `max |M - M*|` exceeded the symmetry tolerance.
    NotHermitian { residual: f64 },
    /// `max |S M S + conj(M)|` exceeded the symmetry tolerance.
    SelfDualViolation { residual: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotHermitian { residual } => {
                write!(f, "not Hermitian (max residual {residual:.3e})")
            }
            Violation::SelfDualViolation { residual } => {
                write!(f, "self-dual symmetry S M S = -conj(M) violated (max residual {residual:.3e})")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must be square with even dimension, got {rows}x{cols}")]
    BadShape { rows: usize, cols: usize },

    #[error("invalid covariance matrix: {}", join(.0))]
    InvalidCovariance(Vec<Violation>),

    #[error("invalid one-particle density: {0}")]
    InvalidDensity(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("Bogoliubov diagonalization could not split a kernel of dimension {dim} (smallest split {best_split:.3e})")]
    DegenerateKernel { dim: usize, best_split: f64 },

    #[error("occupation eigenvalue {value:.3e} lies outside the open interval (eps, 1 - eps)")]
    SingularOccupation { value: f64 },

    #[error("states are not unitarily equivalent (max spectral mismatch {mismatch:.3e})")]
    NotUnitarilyEquivalent { mismatch: f64 },

    #[error("{n_modes} modes exceed the Fock-space ceiling of {max}")]
    DimensionTooLarge { n_modes: usize, max: usize },

    #[error("excitation profile is not normalized (|f|^2 = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("occupation {value} must lie strictly inside (0, 1)")]
    InvalidOccupation { value: f64 },

    #[error("grid too coarse: Nyquist limit {nyquist:.4} is below requested |l| = {requested:.4}")]
    GridTooCoarse { nyquist: f64, requested: f64 },

    #[error("quadrature did not converge (estimated error {estimate:.3e}, requested {requested:.3e})")]
    QuadratureNotConverged { estimate: f64, requested: f64 },

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("invalid matrix file: {0}")]
    MatrixFormat(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
