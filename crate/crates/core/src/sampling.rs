//! Random valid inputs for property tests and the `verify` runs.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};

use crate::gaussian::{BogoliubovTransform, CovarianceMatrix};
use crate::linalg::{CMatrix, CVector};

fn normal_c<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

fn normal_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            m[(i, j)] = normal_c(rng);
        }
    }
    m
}

/// `(A B; -B̄ -Ā)` with `A` Hermitian and `B` antisymmetric, both from i.i.d.
/// complex normals, rescaled to Frobenius norm `scale`.
pub fn random_covariance<R: Rng + ?Sized>(rng: &mut R, n_modes: usize, scale: f64) -> CovarianceMatrix {
    let g = normal_matrix(rng, n_modes);
    let h = normal_matrix(rng, n_modes);
    let a = (&g + g.adjoint()).scale(0.5);
    let b = (&h - h.transpose()).scale(0.5);
    let n = n_modes;
    let mut m = CMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(&a);
    m.view_mut((0, n), (n, n)).copy_from(&b);
    m.view_mut((n, 0), (n, n)).copy_from(&(-b.conjugate()));
    m.view_mut((n, n), (n, n)).copy_from(&(-a.conjugate()));
    let norm = m.norm();
    if norm > 0.0 {
        m = m.scale(scale / norm);
    }
    CovarianceMatrix::from_matrix_unchecked(m)
}

/// `exp(i H)` with `H` from [`random_covariance`].
pub fn random_bogoliubov<R: Rng + ?Sized>(rng: &mut R, n_modes: usize, scale: f64) -> BogoliubovTransform {
    BogoliubovTransform::from_generator(&random_covariance(rng, n_modes, scale))
}

/// `𝒰* diag(c, -c) 𝒰` with `c_k` uniform in `[0.1, c_max]` except for the
/// first `n_zero` entries, which are exactly zero.
pub fn rank_deficient_covariance<R: Rng + ?Sized>(
    rng: &mut R,
    n_modes: usize,
    n_zero: usize,
    c_max: f64,
) -> CovarianceMatrix {
    let dist = Uniform::new_inclusive(0.1, c_max.max(0.1)).expect("valid range");
    let c: Vec<f64> = (0..n_modes)
        .map(|k| if k < n_zero { 0.0 } else { dist.sample(rng) })
        .collect();
    let u = random_bogoliubov(rng, n_modes, 3.0);
    let canon = CovarianceMatrix::canonical(&c);
    let m = u.matrix().adjoint() * canon.matrix() * u.matrix();
    CovarianceMatrix::from_matrix_unchecked(crate::linalg::hermitian_part(&m))
}

/// Uniformly distributed unit vector in `ℂ^n`.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    let v = CVector::from_fn(n, |_, _| normal_c(rng));
    let norm = v.norm();
    v.iter().map(|z| z / norm).collect()
}

/// Occupations uniform in `[lo, 1 - lo]`.
pub fn random_occupations<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: f64) -> Vec<f64> {
    let dist = Uniform::new_inclusive(lo, 1.0 - lo).expect("valid range");
    (0..n).map(|_| dist.sample(rng)).collect()
}
