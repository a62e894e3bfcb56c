//! Closed-form relative entropies of excited states over a
//! particle-number-preserving vacuum `W0 ∝ exp(-Σ s_k Ψ†_k Ψ_k)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gaussian::RelativeEntropy;
use crate::linalg::neumaier_sum;

const NORM_TOL: f64 = 1e-12;

/// Occupations `d_k` of the vacuum, with `s_k = log((1 - d_k)/d_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VacuumSpectrum {
    d: Vec<f64>,
}

impl VacuumSpectrum {
    pub fn new(d: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = d.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(Error::InvalidOccupation { value: bad });
        }
        Ok(VacuumSpectrum { d })
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    pub fn occupations(&self) -> &[f64] {
        &self.d
    }

    /// `s_k`, infinite for `d_k ∈ {0, 1}`.
    pub fn s(&self) -> Vec<f64> {
        self.d.iter().map(|&d| s_of(d)).collect()
    }
}

fn s_of(d: f64) -> f64 {
    if d == 0.0 {
        f64::INFINITY
    } else if d == 1.0 {
        f64::NEG_INFINITY
    } else {
        (-d).ln_1p() - d.ln()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExcitationProfile {
    f: Vec<Complex64>,
    norm_sq: f64,
}

impl ExcitationProfile {
    pub fn new(f: Vec<Complex64>) -> Self {
        let norm_sq = neumaier_sum(f.iter().map(|z| z.norm_sqr()));
        ExcitationProfile { f, norm_sq }
    }

    pub fn from_real(f: &[f64]) -> Self {
        Self::new(f.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn values(&self) -> &[Complex64] {
        &self.f
    }

    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }
}

/// `S(U W0 U* ‖ W0) = Σ_k |f_k|² s_k (1 - 2 d_k)` for `U = Ψ†(f) + Ψ(f̄)`.
///
/// Modes with `f_k = 0` contribute nothing even if `s_k` is infinite; a pure
/// mode that is actually excited makes the entropy infinite.
pub fn excite_relative_entropy(vac: &VacuumSpectrum, f: &ExcitationProfile) -> Result<RelativeEntropy> {
    if vac.len() != f.values().len() {
        return Err(Error::DimensionMismatch {
            expected: vac.len(),
            got: f.values().len(),
        });
    }
    if (f.norm_sq() - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm_sq: f.norm_sq() });
    }
    let mut terms = Vec::with_capacity(vac.len());
    for (&d, z) in vac.occupations().iter().zip(f.values()) {
        let w = z.norm_sqr();
        if w == 0.0 {
            continue;
        }
        let s = s_of(d);
        if !s.is_finite() {
            return Ok(RelativeEntropy::Infinite);
        }
        terms.push(w * s * (1.0 - 2.0 * d));
    }
    Ok(RelativeEntropy::Finite(neumaier_sum(terms)))
}

/// Diagonals of `T` and `T0` on the invariant subspace `span{F, SF̄}` of a
/// non-unitary excitation `(1 + Ψ†(f) + Ψ(f̄)) / √(1 + |f|²)` where `f` is an
/// eigenvector of `D0` with eigenvalue `λ`.
///
/// These are diagonal only in that basis; in a general mode basis the same
/// operators carry off-diagonal entries.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NonunitaryPair {
    pub t: [f64; 2],
    pub t0: [f64; 2],
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidOccupation { value: lambda });
    }
    Ok(())
}

pub fn nonunitary_t_matrices(lambda: f64, f_norm_sq: f64) -> Result<NonunitaryPair> {
    check_lambda(lambda)?;
    if f_norm_sq.is_nan() || f_norm_sq < 0.0 {
        return Err(Error::InvalidProfile(format!("|f|^2 = {f_norm_sq} is negative")));
    }
    let x = f_norm_sq;
    let t = if x.is_infinite() {
        [1.0 - lambda, lambda]
    } else {
        [
            (lambda + (1.0 - lambda) * x) / (1.0 + x),
            (1.0 - lambda + lambda * x) / (1.0 + x),
        ]
    };
    Ok(NonunitaryPair {
        t,
        t0: [lambda, 1.0 - lambda],
    })
}

/// `tr{T (log T - log T0)}` for the pair from [`nonunitary_t_matrices`].
pub fn nonunitary_relative_entropy(lambda: f64, f_norm_sq: f64) -> Result<f64> {
    nonunitary_t_matrices(lambda, f_norm_sq)?;
    let x = f_norm_sq;
    // t_i - t0_i = ±(1 - 2λ) x / (1 + x), kept explicit for accuracy at small x.
    let shift = if x.is_infinite() {
        1.0 - 2.0 * lambda
    } else {
        (1.0 - 2.0 * lambda) * x / (1.0 + x)
    };
    let t0 = [lambda, 1.0 - lambda];
    let delta = [shift, -shift];
    Ok(neumaier_sum((0..2).map(|i| {
        let t = t0[i] + delta[i];
        if t <= 0.0 {
            0.0
        } else {
            t * (delta[i] / t0[i]).ln_1p()
        }
    })))
}

/// `(1 - 2λ) log((1 - λ)/λ)`, the `|f|² → ∞` limit of [`nonunitary_relative_entropy`].
pub fn nonunitary_limit(lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    Ok((1.0 - 2.0 * lambda) * s_of(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_mode_quarter_filling() {
        let vac = VacuumSpectrum::new(vec![0.25]).unwrap();
        let f = ExcitationProfile::from_real(&[1.0]);
        let s = excite_relative_entropy(&vac, &f).unwrap().value();
        assert!((s - 0.5 * 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn half_filling_is_zero() {
        let vac = VacuumSpectrum::new(vec![0.5; 3]).unwrap();
        let f = ExcitationProfile::new(vec![
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.8),
            Complex64::new(0.0, 0.0),
        ]);
        assert_eq!(excite_relative_entropy(&vac, &f).unwrap().value(), 0.0);
    }

    #[test]
    fn pure_modes() {
        let vac = VacuumSpectrum::new(vec![0.0, 0.3]).unwrap();
        assert_eq!(vac.s()[0], f64::INFINITY);
        let off = ExcitationProfile::from_real(&[0.0, 1.0]);
        assert!(excite_relative_entropy(&vac, &off).unwrap().finite().is_some());
        let on = ExcitationProfile::from_real(&[0.6, 0.8]);
        assert!(excite_relative_entropy(&vac, &on).unwrap().is_infinite());
    }

    #[test]
    fn rejects_bad_input() {
        let vac = VacuumSpectrum::new(vec![0.3]).unwrap();
        let f = ExcitationProfile::from_real(&[0.9]);
        assert!(matches!(excite_relative_entropy(&vac, &f), Err(Error::NotNormalized { .. })));
        assert!(VacuumSpectrum::new(vec![1.2]).is_err());
        assert!(nonunitary_relative_entropy(0.0, 1.0).is_err());
        assert!(nonunitary_relative_entropy(0.3, -1.0).is_err());
    }

    #[test]
    fn nonunitary_pairs() {
        let p = nonunitary_t_matrices(0.25, 1.0).unwrap();
        assert_eq!(p.t, [0.5, 0.5]);
        assert_eq!(nonunitary_t_matrices(0.3, 0.0).unwrap().t, [0.3, 0.7]);
        let half = nonunitary_t_matrices(0.5, 4.0).unwrap();
        assert_eq!(half.t, half.t0);
        // KL divergence of (1/2, 1/2) from (1/4, 3/4).
        let want = 0.5 * (2f64.ln() + (2.0 / 3.0f64).ln());
        assert!((nonunitary_relative_entropy(0.25, 1.0).unwrap() - want).abs() < 1e-15);
        assert_eq!(nonunitary_relative_entropy(0.5, 7.0).unwrap(), 0.0);
        let lim = nonunitary_limit(0.1).unwrap();
        assert!((nonunitary_relative_entropy(0.1, f64::INFINITY).unwrap() - lim).abs() < 1e-15);
    }
}
