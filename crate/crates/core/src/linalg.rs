//! Dense Hermitian helpers shared by the Gaussian calculus and the Fock oracle.
//!
//! Every matrix function in this crate goes through [`HermitianEigen`]: the
//! input is diagonalized once and a scalar map is applied to the spectrum.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Eigendecomposition of a Hermitian matrix with eigenvalues in ascending order.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Columns are the orthonormal eigenvectors, matching `values`.
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn new(m: &CMatrix) -> Self {
        let n = m.nrows();
        let sym = hermitian_part(m);
        let eig = SymmetricEigen::new(sym);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let mut vectors = CMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            vectors.set_column(dst, &eig.eigenvectors.column(src));
        }
        HermitianEigen { values, vectors }
    }

    /// `V diag(f(x)) V*`.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> CMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (j, &x) in self.values.iter().enumerate() {
            let fx = f(x);
            for i in 0..n {
                scaled[(i, j)] *= fx;
            }
        }
        &scaled * self.vectors.adjoint()
    }

    /// Diagonal of `V* A V`, i.e. the weights `<v_i, A v_i>` of `A` on each eigenvector.
    pub fn weights(&self, a: &CMatrix) -> Vec<f64> {
        let av = a * &self.vectors;
        (0..self.values.len())
            .map(|j| self.vectors.column(j).dotc(&av.column(j)).re)
            .collect()
    }
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs(&(a - b))
}

/// The block swap `S = (0 1; 1 0)` applied on both sides: `S M S`.
pub fn swap_conjugate(m: &CMatrix) -> CMatrix {
    let n2 = m.nrows();
    let n = n2 / 2;
    CMatrix::from_fn(n2, n2, |i, j| m[((i + n) % n2, (j + n) % n2)])
}

/// `S conj(v)` for a doubled vector: swaps halves and conjugates.
pub fn swap_conj_vector(v: &CVector) -> CVector {
    let n2 = v.len();
    let n = n2 / 2;
    CVector::from_fn(n2, |i, _| v[(i + n) % n2].conj())
}

pub fn trace_re(m: &CMatrix) -> f64 {
    m.trace().re
}

/// `tr(A B)` without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = ZERO;
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// `x log x` with the convention `0 log 0 = 0`; negative round-off is clamped to zero.
pub fn xlogx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// `log(2 cosh x)` without overflow.
pub fn log_2cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p()
}

/// Logistic occupation `1/(1+e^{2x}) = e^{-x}/(2 cosh x)`.
pub fn fermi(x: f64) -> f64 {
    let y = 2.0 * x;
    if y > 0.0 {
        let e = (-y).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + y.exp())
    }
}

/// Compensated (Neumaier) summation.
pub fn neumaier_sum<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    let mut sum = 0.0_f64;
    let mut c = 0.0_f64;
    for x in it {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    sum + c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_sorted_and_reconstructs() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(2.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(2.0, 0.0),
            ],
        );
        let e = HermitianEigen::new(&m);
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] - 3.0).abs() < 1e-14);
        assert!(max_abs_diff(&e.map(|x| x), &m) < 1e-14);
    }

    #[test]
    fn scalar_maps() {
        assert_eq!(xlogx(0.0), 0.0);
        assert!((log_2cosh(0.0) - 2f64.ln()).abs() < 1e-15);
        assert!((log_2cosh(800.0) - 800.0).abs() < 1e-12);
        assert!((fermi(0.0) - 0.5).abs() < 1e-16);
        assert!(fermi(-400.0) == 1.0 && fermi(400.0) >= 0.0);
        let x: f64 = 0.37;
        assert!((fermi(x) - (-x).exp() / (2.0 * x.cosh())).abs() < 1e-15);
    }

    #[test]
    fn compensated_sum() {
        let v = [1e16, 1.0, -1e16];
        assert_eq!(neumaier_sum(v), 1.0);
    }
}
