//! Covariance-matrix calculus for fermionic Gaussian states.
//!
//! A Gaussian state on `N` modes is `W = exp(-Q) / tr exp(-Q)` with
//! `Q = Φ* 𝒞 Φ`, where `Φ = (Ψ_1, …, Ψ_N, Ψ†_1, …, Ψ†_N)` and the `2N × 2N`
//! covariance matrix has the block form
//!
//! ```text
//! 𝒞 = (  A     B  )      A* = A,  Bᵀ = -B,   S 𝒞 S = -conj(𝒞)
//!     ( -B̄    -Ā  )
//! ```
//!
//! with `S` the block swap. The doubled one-particle density operator is
//! `T_jk = tr(Φ_k† Φ_j W) = e^{-𝒞} / (2 cosh 𝒞)`, and every entropy of `W`
//! is a spectral function of `T` (and `𝒞`). All matrix functions below are
//! evaluated on a Hermitian eigendecomposition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::linalg::{
    identity,
    fermi, hermitian_part, log_2cosh, max_abs, max_abs_diff, neumaier_sum, swap_conj_vector,
    swap_conjugate, trace_product, xlogx, CMatrix, HermitianEigen, ZERO,
};

/// Eigenvalues of a reference density at or below this count as zero when
/// deciding the support condition of a relative entropy.
pub const SUPPORT_EIGEN_EPS: f64 = 1e-13;
/// Weight of `T` on a null direction of `T0` above which the relative entropy is infinite.
pub const SUPPORT_WEIGHT_EPS: f64 = 1e-12;
/// Default eigenvalue clipping for [`covariance_from_density`].
pub const DEFAULT_EIGEN_CLIP: f64 = 1e-12;
/// Perturbation strengths tried, in order, to split a kernel of `𝒞`.
pub const KERNEL_PERTURBATION_SCHEDULE: [f64; 3] = [1e-8, 1e-6, 1e-4];

/// Numerical tolerances. `sym` is relative to the Frobenius norm of the checked matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub sym: f64,
    pub diag: f64,
    pub num: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            sym: 1e-10,
            diag: 1e-9,
            num: 1e-8,
        }
    }
}

impl Tolerances {
    fn sym_abs(&self, m: &CMatrix) -> f64 {
        self.sym * m.norm().max(1.0)
    }
}

/// Outcome of a relative entropy that may diverge when the support condition fails.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RelativeEntropy {
    Finite(f64),
    Infinite,
}

impl RelativeEntropy {
    pub fn value(self) -> f64 {
        match self {
            RelativeEntropy::Finite(v) => v,
            RelativeEntropy::Infinite => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            RelativeEntropy::Finite(v) => Some(v),
            RelativeEntropy::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, RelativeEntropy::Infinite)
    }
}

fn check_shape(m: &CMatrix) -> Result<usize> {
    let (rows, cols) = m.shape();
    if rows != cols || rows == 0 || rows % 2 != 0 {
        return Err(Error::BadShape { rows, cols });
    }
    Ok(rows / 2)
}

/// Hermitian `2N × 2N` matrix with `S 𝒞 S = -conj(𝒞)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceMatrix {
    n_modes: usize,
    data: CMatrix,
}

impl CovarianceMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        validate_covariance(m, &Tolerances::default())
    }

    /// Assembles `(A B; -B̄ -Ā)` and validates it.
    pub fn from_blocks(a: &CMatrix, b: &CMatrix) -> Result<Self> {
        let n = a.nrows();
        if a.shape() != (n, n) || b.shape() != (n, n) {
            return Err(Error::BadShape {
                rows: b.nrows(),
                cols: b.ncols(),
            });
        }
        let mut m = CMatrix::zeros(2 * n, 2 * n);
        m.view_mut((0, 0), (n, n)).copy_from(a);
        m.view_mut((0, n), (n, n)).copy_from(b);
        m.view_mut((n, 0), (n, n)).copy_from(&(-b.map(|z| z.conj())));
        m.view_mut((n, n), (n, n)).copy_from(&(-a.map(|z| z.conj())));
        Self::new(m)
    }

    /// Canonical form `diag(c_1..c_N, -c_1..-c_N)`.
    pub fn canonical(c: &[f64]) -> Self {
        let n = c.len();
        let data = CMatrix::from_fn(2 * n, 2 * n, |i, j| {
            if i != j {
                ZERO
            } else if i < n {
                c[i].into()
            } else {
                (-c[i - n]).into()
            }
        });
        CovarianceMatrix { n_modes: n, data }
    }

    pub fn zero(n_modes: usize) -> Self {
        CovarianceMatrix {
            n_modes,
            data: CMatrix::zeros(2 * n_modes, 2 * n_modes),
        }
    }

    pub(crate) fn from_matrix_unchecked(m: CMatrix) -> Self {
        let n_modes = m.nrows() / 2;
        CovarianceMatrix { n_modes, data: m }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.data
    }

    pub fn into_matrix(self) -> CMatrix {
        self.data
    }

    pub fn a_block(&self) -> CMatrix {
        let n = self.n_modes;
        self.data.view((0, 0), (n, n)).into_owned()
    }

    pub fn b_block(&self) -> CMatrix {
        let n = self.n_modes;
        self.data.view((0, n), (n, n)).into_owned()
    }

    pub fn eigen(&self) -> HermitianEigen {
        HermitianEigen::new(&self.data)
    }
}

/// Checks Hermiticity and the self-dual symmetry, reporting every violated constraint.
pub fn validate_covariance(m: CMatrix, tol: &Tolerances) -> Result<CovarianceMatrix> {
    let n_modes = check_shape(&m)?;
    let limit = tol.sym_abs(&m);
    let mut violations = Vec::new();
    let herm = max_abs_diff(&m, &m.adjoint());
    if herm > limit {
        violations.push(Violation::NotHermitian { residual: herm });
    }
    let dual = max_abs(&(swap_conjugate(&m) + m.map(|z| z.conj())));
    if dual > limit {
        violations.push(Violation::SelfDualViolation { residual: dual });
    }
    if !violations.is_empty() {
        return Err(Error::InvalidCovariance(violations));
    }
    Ok(CovarianceMatrix {
        n_modes,
        data: hermitian_part(&m),
    })
}

/// Doubled reduced one-particle density operator `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct OneParticleDensity {
    n_modes: usize,
    data: CMatrix,
}

impl OneParticleDensity {
    /// Validates Hermiticity, the spectrum in `[0, 1]` and the pairing `S T̄ S = 1 - T`.
    pub fn new(m: CMatrix, tol: &Tolerances) -> Result<Self> {
        let n_modes = check_shape(&m)?;
        let limit = tol.sym_abs(&m);
        let herm = max_abs_diff(&m, &m.adjoint());
        if herm > limit {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (max residual {herm:.3e})"
            )));
        }
        let id = identity(2 * n_modes);
        let pairing = max_abs(&(swap_conjugate(&m).map(|z| z.conj()) + &m - id));
        if pairing > limit {
            return Err(Error::InvalidDensity(format!(
                "pairing S conj(T) S = 1 - T violated (max residual {pairing:.3e})"
            )));
        }
        let m = hermitian_part(&m);
        let eig = HermitianEigen::new(&m);
        let lo = eig.values[0];
        let hi = eig.values[2 * n_modes - 1];
        if lo < -tol.diag || hi > 1.0 + tol.diag {
            return Err(Error::InvalidDensity(format!(
                "spectrum [{lo:.3e}, {hi:.3e}] leaves [0, 1]"
            )));
        }
        Ok(OneParticleDensity { n_modes, data: m })
    }

    /// `diag(D, 1 - D)` for a particle-number-preserving state with occupations `d`.
    pub fn from_occupations(d: &[f64]) -> Result<Self> {
        let n = d.len();
        if let Some(&bad) = d.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(Error::InvalidDensity(format!("occupation {bad} outside [0, 1]")));
        }
        let data = CMatrix::from_fn(2 * n, 2 * n, |i, j| {
            if i != j {
                ZERO
            } else if i < n {
                d[i].into()
            } else {
                (1.0 - d[i - n]).into()
            }
        });
        Ok(OneParticleDensity { n_modes: n, data })
    }

    pub(crate) fn from_matrix_unchecked(m: CMatrix) -> Self {
        let n_modes = m.nrows() / 2;
        OneParticleDensity {
            n_modes,
            data: hermitian_part(&m),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.data
    }

    pub fn eigen(&self) -> HermitianEigen {
        HermitianEigen::new(&self.data)
    }
}

/// Unitary `𝒰 = (U V; V̄ Ū)` acting on `(Ψ, Ψ†)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BogoliubovTransform {
    n_modes: usize,
    data: CMatrix,
}

impl BogoliubovTransform {
    pub fn new(m: CMatrix, tol: &Tolerances) -> Result<Self> {
        let n_modes = check_shape(&m)?;
        let limit = tol.sym_abs(&m);
        let unit = max_abs(&(&m * m.adjoint() - identity(2 * n_modes)));
        let form = max_abs(&(swap_conjugate(&m) - m.map(|z| z.conj())));
        if unit > limit || form > limit {
            return Err(Error::InvalidDensity(format!(
                "not a Bogoliubov transform (unitarity {unit:.3e}, S U S - conj(U) {form:.3e})"
            )));
        }
        Ok(BogoliubovTransform { n_modes, data: m })
    }

    pub fn identity(n_modes: usize) -> Self {
        BogoliubovTransform {
            n_modes,
            data: identity(2 * n_modes),
        }
    }

    /// `exp(i H)` for a covariance-shaped generator `H`; always a Bogoliubov transform.
    pub fn from_generator(h: &CovarianceMatrix) -> Self {
        let eig = h.eigen();
        let n = eig.values.len();
        let mut scaled = eig.vectors.clone();
        for (j, &x) in eig.values.iter().enumerate() {
            let phase = num_complex::Complex64::from_polar(1.0, x);
            for i in 0..n {
                scaled[(i, j)] *= phase;
            }
        }
        BogoliubovTransform {
            n_modes: h.n_modes(),
            data: &scaled * eig.vectors.adjoint(),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.data
    }

    /// `‖𝒰𝒰* - 1‖_max`.
    pub fn unitarity_residual(&self) -> f64 {
        max_abs(&(&self.data * self.data.adjoint() - identity(2 * self.n_modes)))
    }

    /// `‖S𝒰S - 𝒰̄‖_max`.
    pub fn symmetry_residual(&self) -> f64 {
        max_abs(&(swap_conjugate(&self.data) - self.data.map(|z| z.conj())))
    }

    /// `𝒰 M 𝒰*`.
    pub fn conjugate(&self, m: &CMatrix) -> CMatrix {
        &self.data * m * self.data.adjoint()
    }

    pub fn transform_covariance(&self, c: &CovarianceMatrix) -> CovarianceMatrix {
        CovarianceMatrix::from_matrix_unchecked(hermitian_part(&self.conjugate(c.matrix())))
    }

    pub fn transform_density(&self, t: &OneParticleDensity) -> OneParticleDensity {
        OneParticleDensity::from_matrix_unchecked(self.conjugate(t.matrix()))
    }
}

/// Result of [`bogoliubov_diagonalize`]: `𝒰 𝒞 𝒰⁻¹ = diag(c, -c)`.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub transform: BogoliubovTransform,
    /// Non-negative normal-mode energies, sorted descending.
    pub energies: Vec<f64>,
    /// Perturbation strength used to split a kernel, if there was one.
    pub kernel_perturbation: Option<f64>,
}

/// Diagonalizes `𝒞` by a Bogoliubov transformation.
///
/// Positive eigenvectors `ψ_k` are taken from a Hermitian eigensolver and
/// their negative partners are built as `S ψ̄_k`. A numerical kernel is split
/// by diagonalizing the compression of `λ diag(D, -D̄)`, `D = diag(1..N)`, onto
/// it; the first `λ` in [`KERNEL_PERTURBATION_SCHEDULE`] whose smallest split
/// exceeds `10 τ_diag` is used.
pub fn bogoliubov_diagonalize(c: &CovarianceMatrix, tol: &Tolerances) -> Result<Diagonalization> {
    let n = c.n_modes();
    let eig = c.eigen();
    let kernel_tol = tol.diag;
    // Descending: the k-th largest eigenvalue is values[2n - 1 - k].
    let n_pos = (0..n)
        .take_while(|&k| eig.values[2 * n - 1 - k] > kernel_tol)
        .count();
    let mut psis: Vec<_> = (0..n_pos)
        .map(|k| eig.vectors.column(2 * n - 1 - k).into_owned())
        .collect();

    let m = n - n_pos;
    let mut kernel_perturbation = None;
    if m > 0 {
        let kernel = eig.vectors.columns(n_pos, 2 * m).into_owned();
        let pert = CMatrix::from_fn(2 * n, 2 * n, |i, j| {
            if i != j {
                ZERO
            } else if i < n {
                ((i + 1) as f64).into()
            } else {
                (-((i - n + 1) as f64)).into()
            }
        });
        let compressed = kernel.adjoint() * pert * &kernel;
        let keig = HermitianEigen::new(&compressed);
        let min_split = keig.values.iter().fold(f64::INFINITY, |a, x| a.min(x.abs()));
        let threshold = 10.0 * tol.diag;
        let lambda = KERNEL_PERTURBATION_SCHEDULE
            .iter()
            .copied()
            .find(|&l| l * min_split > threshold)
            .ok_or(Error::DegenerateKernel {
                dim: 2 * m,
                best_split: KERNEL_PERTURBATION_SCHEDULE[2] * min_split,
            })?;
        kernel_perturbation = Some(lambda);
        // Top m eigenvectors of the compressed perturbation, largest first.
        for k in 0..m {
            let coeffs = keig.vectors.column(2 * m - 1 - k);
            psis.push(&kernel * coeffs);
        }
    }

    let mut v = CMatrix::zeros(2 * n, 2 * n);
    for (k, psi) in psis.iter().enumerate() {
        v.set_column(k, psi);
        v.set_column(n + k, &swap_conj_vector(psi));
    }
    // Löwdin orthonormalization V (V*V)^{-1/2}; commutes with the ψ -> Sψ̄ structure.
    let gram = HermitianEigen::new(&(v.adjoint() * &v));
    let v = v * gram.map(|g| 1.0 / g.sqrt());

    let cv = c.matrix() * &v;
    let mut energies: Vec<f64> = (0..n)
        .map(|k| v.column(k).dotc(&cv.column(k)).re.max(0.0))
        .collect();
    for e in energies.iter_mut().skip(n_pos) {
        *e = 0.0;
    }

    Ok(Diagonalization {
        transform: BogoliubovTransform {
            n_modes: n,
            data: v.adjoint(),
        },
        energies,
        kernel_perturbation,
    })
}

/// `T = e^{-𝒞} / (2 cosh 𝒞)`.
pub fn density_from_covariance(c: &CovarianceMatrix) -> OneParticleDensity {
    OneParticleDensity::from_matrix_unchecked(c.eigen().map(fermi))
}

/// `𝒞 = -½ log(T / (1 - T))` with eigenvalues clipped into `[eps, 1 - eps]`.
///
/// In strict mode any eigenvalue that would need clipping is an error.
pub fn covariance_from_density(
    t: &OneParticleDensity,
    eps: f64,
    strict: bool,
) -> Result<CovarianceMatrix> {
    let eig = t.eigen();
    if strict {
        if let Some(&bad) = eig.values.iter().find(|&&x| x <= eps || x >= 1.0 - eps) {
            return Err(Error::SingularOccupation { value: bad });
        }
    }
    let m = eig.map(|x| {
        let x = x.clamp(eps, 1.0 - eps);
        -0.5 * (x.ln() - (-x).ln_1p())
    });
    Ok(CovarianceMatrix::from_matrix_unchecked(hermitian_part(&m)))
}

/// `S(W) = -tr(T log T)` over all `2N` eigenvalues of `T`.
pub fn von_neumann_entropy(t: &OneParticleDensity) -> f64 {
    -neumaier_sum(t.eigen().values.into_iter().map(xlogx))
}

/// `log tr exp(-Q) = Σ_k log(2 cosh c_k) = ½ Σ_{x ∈ σ(𝒞)} log(2 cosh x)`.
pub fn partition_log(c: &CovarianceMatrix) -> f64 {
    0.5 * neumaier_sum(c.eigen().values.into_iter().map(log_2cosh))
}

fn same_modes(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: a,
            got: b,
        });
    }
    Ok(())
}

/// `S(W‖W0) = tr{T(log T - log T0)} - tr{(T - T0) log(2 cosh 𝒞0)}`.
///
/// When `c0` is `None` the second trace is evaluated on the eigenbasis of
/// `T0` using `log(2 cosh 𝒞0) = -½ log(T0 (1 - T0))`, which stays finite for
/// pure reference states. If `T` has weight on a null direction of `T0` the
/// result is [`RelativeEntropy::Infinite`].
pub fn relative_entropy(
    t: &OneParticleDensity,
    t0: &OneParticleDensity,
    c0: Option<&CovarianceMatrix>,
) -> Result<RelativeEntropy> {
    same_modes(t.n_modes(), t0.n_modes())?;
    if let Some(c0) = c0 {
        same_modes(t0.n_modes(), c0.n_modes())?;
    }
    let ent = -von_neumann_entropy(t);
    let ref_eig = t0.eigen();
    let weights = ref_eig.weights(t.matrix());

    let mut terms = vec![ent];
    for (&x0, &w) in ref_eig.values.iter().zip(&weights) {
        let null_low = x0 <= SUPPORT_EIGEN_EPS;
        let null_high = x0 >= 1.0 - SUPPORT_EIGEN_EPS;
        if null_low && w > SUPPORT_WEIGHT_EPS {
            return Ok(RelativeEntropy::Infinite);
        }
        if null_high && 1.0 - w > SUPPORT_WEIGHT_EPS && c0.is_none() {
            return Ok(RelativeEntropy::Infinite);
        }
        if !null_low {
            terms.push(-w * x0.ln());
        }
        if c0.is_none() && !null_low && !null_high {
            terms.push(0.5 * (w - x0) * (x0.ln() + (-x0).ln_1p()));
        }
    }
    if let Some(c0) = c0 {
        let log_cosh = c0.eigen().map(log_2cosh);
        let diff = t.matrix() - t0.matrix();
        terms.push(-trace_product(&diff, &log_cosh).re);
    }
    Ok(RelativeEntropy::Finite(neumaier_sum(terms)))
}

/// `S(W‖W0) = -S(W) + S(W0) + tr{(T - T0) 𝒞0}`.
pub fn relative_entropy_from_entropies(
    t: &OneParticleDensity,
    t0: &OneParticleDensity,
    c0: &CovarianceMatrix,
) -> Result<f64> {
    same_modes(t.n_modes(), t0.n_modes())?;
    same_modes(t0.n_modes(), c0.n_modes())?;
    let diff = t.matrix() - t0.matrix();
    Ok(neumaier_sum([
        -von_neumann_entropy(t),
        von_neumann_entropy(t0),
        trace_product(&diff, c0.matrix()).re,
    ]))
}

/// `S(W‖W0) = tr{(T - T0) 𝒞0}`, valid when `T` and `T0` are unitarily equivalent.
pub fn relative_entropy_unitary(
    t: &OneParticleDensity,
    t0: &OneParticleDensity,
    c0: &CovarianceMatrix,
    tol: &Tolerances,
) -> Result<f64> {
    same_modes(t.n_modes(), t0.n_modes())?;
    same_modes(t0.n_modes(), c0.n_modes())?;
    let a = t.eigen().values;
    let b = t0.eigen().values;
    let mismatch = a
        .iter()
        .zip(&b)
        .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).abs()));
    if mismatch > tol.diag {
        return Err(Error::NotUnitarilyEquivalent { mismatch });
    }
    let diff = t.matrix() - t0.matrix();
    Ok(trace_product(&diff, c0.matrix()).re)
}

/// `𝒰 = -1 + |F⟩⟨F|` with `F = (f, f̄)`, the Bogoliubov matrix of the single-mode
/// excitation `U = Ψ†(f) + Ψ(f̄)` for normalized `f`.
pub fn excitation_bogoliubov(f: &[num_complex::Complex64]) -> Result<BogoliubovTransform> {
    let n = f.len();
    let norm_sq: f64 = f.iter().map(|z| z.norm_sqr()).sum();
    if (norm_sq - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized { norm_sq });
    }
    let big_f = crate::linalg::CVector::from_fn(2 * n, |i, _| {
        if i < n {
            f[i]
        } else {
            f[i - n].conj()
        }
    });
    let data = &big_f * big_f.adjoint() - identity(2 * n);
    Ok(BogoliubovTransform { n_modes: n, data })
}
