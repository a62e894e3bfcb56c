//! Rindler-wedge quantities for a free Dirac field in two dimensions, in
//! boost-momentum modes `ψ_ℓ` with `H_R ψ_ℓ = -ℓ ψ_ℓ` and `δ(ℓ - ℓ')`
//! normalization, so nothing depends on the mass.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::excitations::nonunitary_relative_entropy;
use crate::linalg::{fermi, neumaier_sum};
use crate::quadrature::{integrate, integrate_complex, trapezoid, Estimate, QuadratureConfig};

/// Eigenvalue `λ_ℓ = 1/(1 + e^{4πℓ})` of the reduced one-particle density operator.
pub fn lambda_spectrum(l: f64) -> f64 {
    fermi(2.0 * PI * l)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Minkowski,
    Rindler,
}

/// Coefficient of `δ(ℓ - ℓ')` in the Gram matrix of the plane waves `ψ_ℓ`.
pub fn gram_coefficient(region: Region, l: f64) -> f64 {
    match region {
        Region::Minkowski => 8.0 * PI * PI,
        Region::Rindler => 4.0 * PI * PI * (1.0 - (2.0 * PI * l).tanh()),
    }
}

/// Occupation function `η` with `σ_R = η(H_R)`, written in the variable `ℓ`.
#[derive(Clone)]
pub enum OccupationLaw {
    /// `β = 4π`.
    RindlerVacuum,
    Thermal { beta: f64 },
    ZeroTemperature,
    InfiniteTemperature,
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for OccupationLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OccupationLaw::RindlerVacuum => write!(f, "RindlerVacuum"),
            OccupationLaw::Thermal { beta } => write!(f, "Thermal {{ beta: {beta} }}"),
            OccupationLaw::ZeroTemperature => write!(f, "ZeroTemperature"),
            OccupationLaw::InfiniteTemperature => write!(f, "InfiniteTemperature"),
            OccupationLaw::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

impl OccupationLaw {
    pub fn eta(&self, l: f64) -> f64 {
        match self {
            OccupationLaw::RindlerVacuum => lambda_spectrum(l),
            OccupationLaw::Thermal { beta } => fermi(0.5 * beta * l),
            OccupationLaw::ZeroTemperature => {
                if l < 0.0 {
                    1.0
                } else if l > 0.0 {
                    0.0
                } else {
                    0.5
                }
            }
            OccupationLaw::InfiniteTemperature => 0.5,
            OccupationLaw::Custom(eta) => eta(l),
        }
    }
}

pub fn occupation_eta(law: &OccupationLaw, l: f64) -> f64 {
    law.eta(l)
}

/// Relative entropy of a non-unitary excitation `f` sitting in the eigenspace
/// `η(ℓ)` of `σ_R`.
pub fn general_vacuum_excitation_entropy(law: &OccupationLaw, l: f64, f_norm_sq: f64) -> Result<f64> {
    let eta = law.eta(l);
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::InvalidOccupation { value: eta });
    }
    nonunitary_relative_entropy(eta, f_norm_sq)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PvConfig {
    /// Upper end of the folded integral; the neglected tail is below `2 e^{-cutoff}`.
    pub cutoff: f64,
    pub quadrature: QuadratureConfig,
}

impl Default for PvConfig {
    fn default() -> Self {
        PvConfig {
            cutoff: 40.0,
            quadrature: QuadratureConfig {
                abs_tol: 1e-12,
                rel_tol: 0.0,
                max_panels: 4000,
            },
        }
    }
}

/// Principal value `PV ∫ e^{2iℓβ} / (e^β - e^{-β}) dβ` over the real line.
///
/// The integrand is folded onto `β > 0` by pairing `β` with `-β`, which
/// cancels the pole and leaves `(e^{2iℓβ} - e^{-2iℓβ}) / (e^β - e^{-β})`,
/// smooth at the origin with limit `2iℓ`. The reported error adds the
/// quadrature estimate and the tail bound.
pub fn pv_kernel_transform(l: f64, cfg: &PvConfig) -> Result<Estimate<Complex64>> {
    if !l.is_finite() {
        return Err(Error::InvalidProfile(format!("boost momentum {l} is not finite")));
    }
    let folded = |b: f64| {
        if b == 0.0 {
            return Complex64::new(0.0, 2.0 * l);
        }
        let num = Complex64::from_polar(1.0, 2.0 * l * b) - Complex64::from_polar(1.0, -2.0 * l * b);
        num / (2.0 * b.sinh())
    };
    let e = integrate_complex(folded, 0.0, cfg.cutoff, &cfg.quadrature)?;
    Ok(Estimate {
        value: e.value,
        error: e.error + 2.0 * (-cfg.cutoff).exp(),
        panels: e.panels,
    })
}

/// Exact value of [`pv_kernel_transform`]: `(iπ/2) tanh(πℓ)`.
pub fn pv_kernel_closed_form(l: f64) -> Complex64 {
    Complex64::new(0.0, 0.5 * PI * (PI * l).tanh())
}

/// Samples `f(θ_0 + j Δθ)` of a one-particle vector in rapidity space.
#[derive(Clone, Debug, PartialEq)]
pub struct RapidityProfile {
    theta0: f64,
    dtheta: f64,
    values: Vec<Complex64>,
}

/// Endpoint samples must be below this fraction of the largest sample.
pub const SUPPORT_REL: f64 = 1e-12;

impl RapidityProfile {
    pub fn new(theta0: f64, dtheta: f64, values: Vec<Complex64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidProfile("need at least two rapidity samples".into()));
        }
        if !(dtheta > 0.0 && dtheta.is_finite() && theta0.is_finite()) {
            return Err(Error::InvalidProfile(format!("bad rapidity grid ({theta0}, {dtheta})")));
        }
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidProfile("non-finite rapidity sample".into()));
        }
        let peak = values.iter().fold(0.0_f64, |m, z| m.max(z.norm()));
        let edge = values[0].norm().max(values[values.len() - 1].norm());
        if edge > SUPPORT_REL * peak {
            return Err(Error::InvalidProfile(format!(
                "profile does not decay inside the grid (edge/peak = {:.3e})",
                edge / peak
            )));
        }
        Ok(RapidityProfile { theta0, dtheta, values })
    }

    /// Samples `f` at `n` uniform points spanning `[lo, hi]`.
    pub fn from_fn<F: Fn(f64) -> Complex64>(lo: f64, hi: f64, n: usize, f: F) -> Result<Self> {
        if n < 2 || hi.is_nan() || lo.is_nan() || hi <= lo {
            return Err(Error::InvalidProfile(format!("bad rapidity range [{lo}, {hi}] with {n} points")));
        }
        let d = (hi - lo) / (n - 1) as f64;
        Self::new(lo, d, (0..n).map(|j| f(lo + j as f64 * d)).collect())
    }

    pub fn thetas(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(move |j| self.theta0 + j as f64 * self.dtheta)
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn dtheta(&self) -> f64 {
        self.dtheta
    }

    /// Largest `|ℓ|` the grid resolves, `π / Δθ`.
    pub fn nyquist(&self) -> f64 {
        PI / self.dtheta
    }

    /// `∫ |f|² dθ` by the trapezoid rule.
    pub fn norm_sq(&self) -> f64 {
        let n = self.values.len();
        self.dtheta
            * neumaier_sum(self.values.iter().enumerate().map(|(j, z)| {
                let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
                w * z.norm_sqr()
            }))
    }
}

/// Boost-momentum amplitudes `f̃(ℓ)` on a strictly increasing grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledProfile {
    l: Vec<f64>,
    values: Vec<Complex64>,
}

impl SampledProfile {
    pub fn new(l: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if l.is_empty() {
            return Err(Error::InvalidProfile("empty profile".into()));
        }
        if l.len() != values.len() {
            return Err(Error::InvalidProfile(format!(
                "{} grid points but {} values",
                l.len(),
                values.len()
            )));
        }
        if l.len() < 2 {
            return Err(Error::InvalidProfile("need at least two samples".into()));
        }
        if l.iter().any(|x| !x.is_finite()) || values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidProfile("non-finite sample".into()));
        }
        if let Some(i) = l.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::InvalidProfile(format!(
                "grid not strictly increasing at index {}",
                i + 1
            )));
        }
        Ok(SampledProfile { l, values })
    }

    pub fn grid(&self) -> &[f64] {
        &self.l
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `∫ |f̃|² dℓ` by the trapezoid rule.
    pub fn norm_sq(&self) -> f64 {
        let y: Vec<f64> = self.values.iter().map(|z| z.norm_sqr()).collect();
        trapezoid(&self.l, &y)
    }
}

/// `f̃(ℓ) = A (2π w²)^{-1/4} exp(-(ℓ - ℓ_0)² / (4 w²))`, so `∫ |f̃|² dℓ = |A|²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianProfile {
    pub center: f64,
    pub width: f64,
    pub amplitude: Complex64,
}

impl GaussianProfile {
    pub fn new(center: f64, width: f64, amplitude: Complex64) -> Result<Self> {
        if !(width > 0.0 && width.is_finite() && center.is_finite()) {
            return Err(Error::InvalidProfile(format!("bad Gaussian (center {center}, width {width})")));
        }
        Ok(GaussianProfile {
            center,
            width,
            amplitude,
        })
    }

    pub fn normalized(center: f64, width: f64) -> Result<Self> {
        Self::new(center, width, Complex64::new(1.0, 0.0))
    }

    pub fn value(&self, l: f64) -> Complex64 {
        let w = self.width;
        let z = (l - self.center) / w;
        self.amplitude * ((2.0 * PI * w * w).powf(-0.25) * (-0.25 * z * z).exp())
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitude.norm_sqr()
    }

    /// The rapidity-space vector whose transform is this profile:
    /// `f(θ) = C exp(-w² θ²) e^{-iℓ_0 θ}` with `C = 2√π w A (2π w²)^{-1/4}`,
    /// sampled with step `dtheta` out to where `|f|` drops below [`SUPPORT_REL`] of its peak.
    pub fn rapidity_profile(&self, dtheta: f64) -> Result<RapidityProfile> {
        let w = self.width;
        let c = self.amplitude * (2.0 * PI.sqrt() * w * (2.0 * PI * w * w).powf(-0.25));
        // |f| = |C| e^{-w²θ²}: below SUPPORT_REL·|C| once w²θ² > -ln(SUPPORT_REL).
        let half = (-(SUPPORT_REL.ln()) + 1.0).sqrt() / w;
        let steps = (half / dtheta).ceil() as usize;
        let n = 2 * steps + 1;
        let theta0 = -(steps as f64) * dtheta;
        let values = (0..n)
            .map(|j| {
                let t = theta0 + j as f64 * dtheta;
                c * Complex64::from_polar((-w * w * t * t).exp(), -self.center * t)
            })
            .collect();
        RapidityProfile::new(theta0, dtheta, values)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BoostModeProfile {
    Sampled(SampledProfile),
    Gaussian(GaussianProfile),
}

impl BoostModeProfile {
    pub fn norm_sq(&self) -> f64 {
        match self {
            BoostModeProfile::Sampled(s) => s.norm_sq(),
            BoostModeProfile::Gaussian(g) => g.norm_sq(),
        }
    }

    /// Multiplies every amplitude by `c`.
    pub fn scaled(&self, c: Complex64) -> Self {
        match self {
            BoostModeProfile::Sampled(s) => BoostModeProfile::Sampled(SampledProfile {
                l: s.l.clone(),
                values: s.values.iter().map(|z| z * c).collect(),
            }),
            BoostModeProfile::Gaussian(g) => BoostModeProfile::Gaussian(GaussianProfile {
                amplitude: g.amplitude * c,
                ..*g
            }),
        }
    }
}

/// `f̃(ℓ) = (1/2π) ∫ e^{iℓθ} f(θ) dθ` by the trapezoid rule on the rapidity grid.
pub fn rapidity_to_boost(f: &RapidityProfile, l_grid: &[f64]) -> Result<BoostModeProfile> {
    let requested = l_grid.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if requested > f.nyquist() {
        return Err(Error::GridTooCoarse {
            nyquist: f.nyquist(),
            requested,
        });
    }
    let n = f.values.len();
    let scale = f.dtheta / (2.0 * PI);
    let values = l_grid
        .iter()
        .map(|&l| {
            let terms = f.thetas().zip(&f.values).enumerate().map(|(j, (t, v))| {
                let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
                Complex64::from_polar(w, l * t) * v
            });
            let (re, im): (Vec<f64>, Vec<f64>) = terms.map(|z| (z.re, z.im)).unzip();
            Complex64::new(neumaier_sum(re), neumaier_sum(im)) * scale
        })
        .collect();
    Ok(BoostModeProfile::Sampled(SampledProfile::new(l_grid.to_vec(), values)?))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyConfig {
    pub quadrature: QuadratureConfig,
    /// Closed-form profiles are truncated where `|f̃|²` falls below this fraction of its peak.
    pub tail_rel: f64,
}

impl Default for EntropyConfig {
    fn default() -> Self {
        EntropyConfig {
            quadrature: QuadratureConfig::default(),
            tail_rel: 1e-14,
        }
    }
}

/// Result of [`rindler_relative_entropy`] with its error budget.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RindlerEntropy {
    pub value: f64,
    /// Quadrature error estimate on `[lower, upper]`.
    pub error: f64,
    pub lower: f64,
    pub upper: f64,
    /// Estimate of the contribution from outside `[lower, upper]`.
    pub tail: f64,
    /// Panels for adaptive quadrature, grid points for sampled profiles.
    pub nodes: usize,
}

fn entropy_density(l: f64) -> f64 {
    4.0 * PI * l * (2.0 * PI * l).tanh()
}

/// `S = 4π ∫ ℓ tanh(2πℓ) |f̃(ℓ)|² dℓ`.
///
/// Gaussian profiles use adaptive quadrature on `ℓ_0 ± K w`, with `K` set by
/// `tail_rel` and the tail bounded analytically. Sampled profiles use the
/// trapezoid rule; the error is the Richardson estimate against the grid with
/// every other point dropped, and the tail is the last panel's weight on each side.
pub fn rindler_relative_entropy(profile: &BoostModeProfile, cfg: &EntropyConfig) -> Result<RindlerEntropy> {
    match profile {
        BoostModeProfile::Gaussian(g) => {
            let k = (-2.0 * cfg.tail_rel.ln()).sqrt();
            let (lower, upper) = (g.center - k * g.width, g.center + k * g.width);
            let e = integrate(
                |l| entropy_density(l) * g.value(l).norm_sqr(),
                lower,
                upper,
                &cfg.quadrature,
            )?;
            // |ℓ tanh| ≤ |ℓ_0| + w|z| and |f̃|² is a normal density in z = (ℓ - ℓ_0)/w.
            let phi = (-0.5 * k * k).exp() / (2.0 * PI).sqrt();
            let tail = 4.0 * PI * g.norm_sq() * (g.center.abs() * 2.0 * phi / k + g.width * 2.0 * phi);
            Ok(RindlerEntropy {
                value: e.value,
                error: e.error,
                lower,
                upper,
                tail,
                nodes: e.panels,
            })
        }
        BoostModeProfile::Sampled(s) => {
            let y: Vec<f64> = s
                .l
                .iter()
                .zip(&s.values)
                .map(|(&l, z)| entropy_density(l) * z.norm_sqr())
                .collect();
            let value = trapezoid(&s.l, &y);
            let n = y.len();
            let error = if n >= 3 {
                let mut idx: Vec<usize> = (0..n).step_by(2).collect();
                if idx[idx.len() - 1] != n - 1 {
                    idx.push(n - 1);
                }
                let xc: Vec<f64> = idx.iter().map(|&i| s.l[i]).collect();
                let yc: Vec<f64> = idx.iter().map(|&i| y[i]).collect();
                (value - trapezoid(&xc, &yc)).abs() / 3.0
            } else {
                value.abs()
            };
            let tail = 0.5 * (y[0] * (s.l[1] - s.l[0]) + y[n - 1] * (s.l[n - 1] - s.l[n - 2]));
            Ok(RindlerEntropy {
                value,
                error,
                lower: s.l[0],
                upper: s.l[n - 1],
                tail,
                nodes: n,
            })
        }
    }
}

/// `4π Σ_k |f_k|² ℓ_k tanh(2πℓ_k)` for an excitation spread over discrete boost modes.
pub fn rindler_mode_sum(l: &[f64], f: &[Complex64]) -> Result<f64> {
    if l.len() != f.len() {
        return Err(Error::DimensionMismatch {
            expected: l.len(),
            got: f.len(),
        });
    }
    Ok(neumaier_sum(
        l.iter().zip(f).map(|(&l, z)| entropy_density(l) * z.norm_sqr()),
    ))
}
