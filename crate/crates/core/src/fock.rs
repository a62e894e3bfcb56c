//! Brute-force reference on the `2^N`-dimensional Fock space.
//!
//! Field operators are Jordan–Wigner matrices with mode 1 as the leftmost
//! tensor factor: the basis state `|n_1 n_2 … n_N⟩` has index
//! `Σ_k n_k 2^{N-k}`, and `Ψ_k` carries the sign string `(-1)^{n_1+…+n_{k-1}}`.
//! Every quantity here is computed with dense linear algebra and serves as
//! ground truth for the one-particle formulas.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gaussian::{CovarianceMatrix, OneParticleDensity, RelativeEntropy};
use crate::linalg::{
    identity,
    hermitian_part, max_abs, max_abs_diff, neumaier_sum, trace_product, xlogx, CMatrix,
    HermitianEigen, ZERO,
};

/// Default ceiling on the number of modes (64 × 64 matrices).
pub const DEFAULT_MAX_MODES: usize = 6;
/// Reference eigenvalues below this count as zero in the support check.
pub const SUPPORT_EPS: f64 = 1e-13;
const DENSITY_TOL: f64 = 1e-12;

fn check_modes(n: usize) -> Result<()> {
    if n == 0 || n > DEFAULT_MAX_MODES {
        return Err(Error::DimensionTooLarge {
            n_modes: n,
            max: DEFAULT_MAX_MODES,
        });
    }
    Ok(())
}

/// An operator on the Fock space of `n_modes` modes.
#[derive(Clone, Debug, PartialEq)]
pub struct FockOperator {
    n_modes: usize,
    data: CMatrix,
}

impl FockOperator {
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.data
    }

    pub fn adjoint(&self) -> FockOperator {
        FockOperator {
            n_modes: self.n_modes,
            data: self.data.adjoint(),
        }
    }
}

/// Annihilators `Ψ_k` and creators `Ψ†_k` for every mode.
#[derive(Clone, Debug)]
pub struct FieldOperators {
    n_modes: usize,
    annihilators: Vec<CMatrix>,
    creators: Vec<CMatrix>,
}

impl FieldOperators {
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn dim(&self) -> usize {
        1 << self.n_modes
    }

    /// `(Ψ_k, Ψ†_k)` for 0-based mode `k`.
    pub fn pair(&self, k: usize) -> (FockOperator, FockOperator) {
        (
            FockOperator {
                n_modes: self.n_modes,
                data: self.annihilators[k].clone(),
            },
            FockOperator {
                n_modes: self.n_modes,
                data: self.creators[k].clone(),
            },
        )
    }

    pub fn annihilator(&self, k: usize) -> &CMatrix {
        &self.annihilators[k]
    }

    pub fn creator(&self, k: usize) -> &CMatrix {
        &self.creators[k]
    }

    /// Component `j` of the doubled field `Φ = (Ψ_1..Ψ_N, Ψ†_1..Ψ†_N)`.
    pub fn doubled(&self, j: usize) -> &CMatrix {
        if j < self.n_modes {
            &self.annihilators[j]
        } else {
            &self.creators[j - self.n_modes]
        }
    }

    /// `Ψ(f̄) = Σ f̄_k Ψ_k`.
    pub fn annihilate(&self, f: &[Complex64]) -> CMatrix {
        self.combine(f, |z| z.conj(), &self.annihilators)
    }

    /// `Ψ†(f) = Σ f_k Ψ†_k`.
    pub fn create(&self, f: &[Complex64]) -> CMatrix {
        self.combine(f, |z| z, &self.creators)
    }

    fn combine(&self, f: &[Complex64], coef: impl Fn(Complex64) -> Complex64, ops: &[CMatrix]) -> CMatrix {
        let mut acc = CMatrix::zeros(self.dim(), self.dim());
        for (z, op) in f.iter().zip(ops) {
            acc += op * coef(*z);
        }
        acc
    }

    /// Largest deviation from `{Ψ_j, Ψ†_k} = δ_jk` and `{Ψ_j, Ψ_k} = 0`.
    pub fn car_residual(&self) -> f64 {
        let id = identity(self.dim());
        let mut worst = 0.0_f64;
        for j in 0..self.n_modes {
            for k in 0..self.n_modes {
                let a = &self.annihilators[j];
                let b = &self.annihilators[k];
                let bd = &self.creators[k];
                let mixed = a * bd + bd * a;
                let want = if j == k { id.clone() } else { CMatrix::zeros(self.dim(), self.dim()) };
                worst = worst.max(max_abs_diff(&mixed, &want));
                worst = worst.max(max_abs(&(a * b + b * a)));
            }
        }
        worst
    }

    /// The fermion parity `(-1)^{N̂}`.
    pub fn parity(&self) -> CMatrix {
        let dim = self.dim();
        CMatrix::from_fn(dim, dim, |i, j| {
            if i != j {
                ZERO
            } else if i.count_ones() % 2 == 0 {
                1.0.into()
            } else {
                (-1.0).into()
            }
        })
    }
}

/// Jordan–Wigner representation of `N` modes.
pub fn jordan_wigner_field_ops(n_modes: usize) -> Result<FieldOperators> {
    check_modes(n_modes)?;
    let dim = 1usize << n_modes;
    let mut annihilators = Vec::with_capacity(n_modes);
    for k in 0..n_modes {
        let bit = 1usize << (n_modes - 1 - k);
        // Occupations of modes left of k.
        let left_mask = !((bit << 1) - 1) & (dim - 1);
        let mut m = CMatrix::zeros(dim, dim);
        for b in 0..dim {
            if b & bit != 0 {
                let sign = if (b & left_mask).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
                m[(b ^ bit, b)] = sign.into();
            }
        }
        annihilators.push(m);
    }
    let creators = annihilators.iter().map(|a| a.adjoint()).collect();
    Ok(FieldOperators {
        n_modes,
        annihilators,
        creators,
    })
}

/// A normalized, positive semi-definite Fock-space density operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n_modes: usize,
    data: CMatrix,
}

impl DensityMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        let dim = m.nrows();
        if m.ncols() != dim || !dim.is_power_of_two() || dim < 2 {
            return Err(Error::BadShape {
                rows: dim,
                cols: m.ncols(),
            });
        }
        let n_modes = dim.trailing_zeros() as usize;
        let herm = max_abs_diff(&m, &m.adjoint());
        if herm > DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!("not Hermitian ({herm:.3e})")));
        }
        let m = hermitian_part(&m);
        let tr = m.trace().re;
        if (tr - 1.0).abs() > DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr}")));
        }
        let lo = HermitianEigen::new(&m).values[0];
        if lo < -DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!("negative eigenvalue {lo:.3e}")));
        }
        Ok(DensityMatrix { n_modes, data: m })
    }

    /// Product state `⊗_k diag(1 - d_k, d_k)`: the particle-number-preserving
    /// vacuum `det(1 - D0) exp(-Σ s_k Ψ†_k Ψ_k)`, including the limits `d_k ∈ {0, 1}`.
    pub fn product_vacuum(d: &[f64]) -> Result<Self> {
        check_modes(d.len())?;
        if let Some(&bad) = d.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(Error::InvalidOccupation { value: bad });
        }
        let n = d.len();
        let dim = 1usize << n;
        let data = CMatrix::from_fn(dim, dim, |i, j| {
            if i != j {
                return ZERO;
            }
            let p: f64 = (0..n)
                .map(|k| {
                    if i & (1 << (n - 1 - k)) != 0 {
                        d[k]
                    } else {
                        1.0 - d[k]
                    }
                })
                .product();
            p.into()
        });
        Ok(DensityMatrix { n_modes: n, data })
    }

    pub fn maximally_mixed(n_modes: usize) -> Result<Self> {
        check_modes(n_modes)?;
        let dim = 1usize << n_modes;
        Ok(DensityMatrix {
            n_modes,
            data: identity(dim).scale(1.0 / dim as f64),
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.data
    }

    /// `U W U*`.
    pub fn conjugated(&self, u: &FockOperator) -> Result<DensityMatrix> {
        DensityMatrix::new(&u.data * &self.data * u.data.adjoint())
    }
}

/// `Q = Σ_ij 𝒞_ij Φ_i† Φ_j` on the Fock space.
pub fn quadratic_form(ops: &FieldOperators, c: &CovarianceMatrix) -> CMatrix {
    let n2 = 2 * ops.n_modes();
    let mut q = CMatrix::zeros(ops.dim(), ops.dim());
    for i in 0..n2 {
        let left = ops.doubled(i).adjoint();
        for j in 0..n2 {
            let cij = c.matrix()[(i, j)];
            if cij != ZERO {
                q += (&left * ops.doubled(j)) * cij;
            }
        }
    }
    hermitian_part(&q)
}

/// `log tr exp(-Q)`, evaluated on the spectrum of `Q`.
pub fn fock_partition_log(c: &CovarianceMatrix) -> Result<f64> {
    let ops = jordan_wigner_field_ops(c.n_modes())?;
    let eig = HermitianEigen::new(&quadratic_form(&ops, c));
    let q_min = eig.values[0];
    let sum = neumaier_sum(eig.values.iter().map(|q| (-(q - q_min)).exp()));
    Ok(-q_min + sum.ln())
}

/// `W = exp(-Q) / tr exp(-Q)`.
pub fn gaussian_density_matrix(c: &CovarianceMatrix) -> Result<DensityMatrix> {
    let ops = jordan_wigner_field_ops(c.n_modes())?;
    let eig = HermitianEigen::new(&quadratic_form(&ops, c));
    let q_min = eig.values[0];
    let z = neumaier_sum(eig.values.iter().map(|q| (-(q - q_min)).exp()));
    let w = eig.map(|q| (-(q - q_min)).exp() / z);
    DensityMatrix::new(w)
}

/// `U = Ψ†(f) + Ψ(f̄)` for `‖f‖ = 1`; symmetric and unitary.
pub fn excitation_unitary(f: &[Complex64]) -> Result<FockOperator> {
    let norm_sq: f64 = f.iter().map(|z| z.norm_sqr()).sum();
    if (norm_sq - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized { norm_sq });
    }
    let ops = jordan_wigner_field_ops(f.len())?;
    Ok(FockOperator {
        n_modes: f.len(),
        data: ops.create(f) + ops.annihilate(f),
    })
}

/// `-tr(W log W)`.
pub fn oracle_von_neumann(w: &DensityMatrix) -> f64 {
    -neumaier_sum(HermitianEigen::new(w.matrix()).values.into_iter().map(xlogx))
}

/// `tr(W (log W - log W0))`; infinite when `W` has weight outside the support of `W0`.
pub fn oracle_relative_entropy(w: &DensityMatrix, w0: &DensityMatrix) -> Result<RelativeEntropy> {
    if w.n_modes() != w0.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: w0.n_modes(),
            got: w.n_modes(),
        });
    }
    let ref_eig = HermitianEigen::new(w0.matrix());
    let weights = ref_eig.weights(w.matrix());
    let mut terms = vec![-oracle_von_neumann(w)];
    for (&x0, &wt) in ref_eig.values.iter().zip(&weights) {
        if x0 < SUPPORT_EPS {
            if wt > SUPPORT_EPS {
                return Ok(RelativeEntropy::Infinite);
            }
            continue;
        }
        terms.push(-wt * x0.ln());
    }
    Ok(RelativeEntropy::Finite(neumaier_sum(terms)))
}

/// `T_jk = tr(Φ_k† Φ_j W)`, the doubled reduced one-particle density operator.
pub fn oracle_reduced_density(w: &DensityMatrix) -> Result<OneParticleDensity> {
    let n = w.n_modes();
    let ops = jordan_wigner_field_ops(n)?;
    let n2 = 2 * n;
    // Φ_j W, reused across k.
    let phi_w: Vec<CMatrix> = (0..n2).map(|j| ops.doubled(j) * w.matrix()).collect();
    let daggers: Vec<CMatrix> = (0..n2).map(|k| ops.doubled(k).adjoint()).collect();
    let t = CMatrix::from_fn(n2, n2, |j, k| trace_product(&daggers[k], &phi_w[j]));
    Ok(OneParticleDensity::from_matrix_unchecked(t))
}

/// `(1 + Ψ(f̄) + Ψ†(f)) W0 (1 + Ψ†(f) + Ψ(f̄)) / (1 + |f|²)` for unnormalized `f`.
///
/// The result contains parity-odd coherences `U W0 + W0 U`; apply
/// [`parity_even_part`] to obtain the state seen by fermionic observables.
pub fn nonunitary_excited_density(w0: &DensityMatrix, f: &[Complex64]) -> Result<DensityMatrix> {
    if f.len() != w0.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: w0.n_modes(),
            got: f.len(),
        });
    }
    let ops = jordan_wigner_field_ops(f.len())?;
    let norm_sq: f64 = f.iter().map(|z| z.norm_sqr()).sum();
    let dressing = identity(ops.dim()) + ops.annihilate(f) + ops.create(f);
    let w = &dressing * w0.matrix() * &dressing;
    DensityMatrix::new(w.scale(1.0 / (1.0 + norm_sq)))
}

/// `(W + P W P) / 2` with `P` the fermion parity.
pub fn parity_even_part(w: &DensityMatrix) -> DensityMatrix {
    let n = w.n_modes();
    let dim = 1usize << n;
    let data = CMatrix::from_fn(dim, dim, |i, j| {
        if (i.count_ones() + j.count_ones()) % 2 == 0 {
            w.matrix()[(i, j)]
        } else {
            ZERO
        }
    });
    DensityMatrix { n_modes: n, data }
}
