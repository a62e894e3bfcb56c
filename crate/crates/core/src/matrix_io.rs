//! JSON matrix files: `{"n_modes": N, "re": [[...]], "im": [[...]]}` holding a
//! `2N × 2N` complex matrix row by row.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{validate_covariance, CovarianceMatrix, OneParticleDensity, Tolerances};
use crate::linalg::CMatrix;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n_modes: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let rows = |f: fn(&Complex64) -> f64| {
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect())
                .collect()
        };
        MatrixFile {
            n_modes: m.nrows() / 2,
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    /// Checks the declared size against both arrays and that every entry is finite.
    pub fn to_matrix(&self) -> Result<CMatrix> {
        let dim = 2 * self.n_modes;
        if self.n_modes == 0 {
            return Err(Error::MatrixFormat("n_modes must be positive".into()));
        }
        for (name, rows) in [("re", &self.re), ("im", &self.im)] {
            if rows.len() != dim {
                return Err(Error::MatrixFormat(format!(
                    "\"{name}\" has {} rows, expected {dim}",
                    rows.len()
                )));
            }
            if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != dim) {
                return Err(Error::MatrixFormat(format!(
                    "\"{name}\" row {i} has {} entries, expected {dim}",
                    r.len()
                )));
            }
            if rows.iter().flatten().any(|x| !x.is_finite()) {
                return Err(Error::MatrixFormat(format!("\"{name}\" has a non-finite entry")));
            }
        }
        Ok(CMatrix::from_fn(dim, dim, |i, j| {
            Complex64::new(self.re[i][j], self.im[i][j])
        }))
    }
}

pub fn matrix_to_json(m: &CMatrix) -> Result<String> {
    Ok(serde_json::to_string_pretty(&MatrixFile::from_matrix(m))?)
}

pub fn matrix_from_json(s: &str) -> Result<CMatrix> {
    serde_json::from_str::<MatrixFile>(s)?.to_matrix()
}

pub fn write_matrix(path: &Path, m: &CMatrix) -> Result<()> {
    let mut s = matrix_to_json(m)?;
    s.push('\n');
    fs::write(path, s)?;
    Ok(())
}

pub fn read_matrix(path: &Path) -> Result<CMatrix> {
    matrix_from_json(&fs::read_to_string(path)?)
}

pub fn read_covariance(path: &Path, tol: &Tolerances) -> Result<CovarianceMatrix> {
    validate_covariance(read_matrix(path)?, tol)
}

pub fn read_density(path: &Path, tol: &Tolerances) -> Result<OneParticleDensity> {
    OneParticleDensity::new(read_matrix(path)?, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let m = CMatrix::from_fn(4, 4, |i, j| Complex64::new(0.1 * i as f64 - 1.0 / 3.0, j as f64 / 7.0));
        let s = matrix_to_json(&m).unwrap();
        let back = matrix_from_json(&s).unwrap();
        assert_eq!(back, m);
        assert_eq!(matrix_to_json(&back).unwrap(), s);
    }

    #[test]
    fn rejects_bad_shapes() {
        let bad = r#"{"n_modes": 1, "re": [[0, 0]], "im": [[0, 0], [0, 0]]}"#;
        assert!(matches!(matrix_from_json(bad), Err(Error::MatrixFormat(_))));
        let ragged = r#"{"n_modes": 1, "re": [[0, 0], [0]], "im": [[0, 0], [0, 0]]}"#;
        assert!(matches!(matrix_from_json(ragged), Err(Error::MatrixFormat(_))));
        let extra = r#"{"n_modes": 1, "re": [[0, 0], [0, 0]], "im": [[0, 0], [0, 0]], "x": 1}"#;
        assert!(matches!(matrix_from_json(extra), Err(Error::Json(_))));
    }
}
