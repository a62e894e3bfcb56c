//! Globally adaptive Gauss–Kronrod (7/15) integration on finite intervals.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate meets the tolerance. The final sum runs over the panels in order of
//! their left endpoint with compensated summation, so a fixed panel
//! decomposition always gives the same bits.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::neumaier_sum;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-9,
            rel_tol: 0.0,
            max_panels: 4000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: f64,
    pub panels: usize,
}

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

fn kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let dx = h * XGK[i];
        let pair = f(c - dx) + f(c + dx);
        k += pair * WGK[i];
        if i % 2 == 1 {
            g += pair * WG[i / 2];
        }
    }
    let value = k * h;
    let error = ((k - g) * h).norm();
    Panel { a, b, value, error }
}

/// `∫_a^b f` for complex-valued `f`.
pub fn integrate_complex<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate<Complex64>> {
    if a == b {
        return Ok(Estimate {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            panels: 0,
        });
    }
    let mut panels = vec![kronrod(&f, a, b)];
    loop {
        let value = sum_panels(&panels);
        let error = neumaier_sum(panels.iter().map(|p| p.error));
        let target = cfg.abs_tol.max(cfg.rel_tol * value.norm());
        if error <= target {
            return Ok(Estimate {
                value,
                error,
                panels: panels.len(),
            });
        }
        if panels.len() >= cfg.max_panels {
            return Err(Error::QuadratureNotConverged {
                estimate: error,
                requested: target,
            });
        }
        let worst = (0..panels.len())
            .max_by(|&i, &j| panels[i].error.total_cmp(&panels[j].error))
            .expect("at least one panel");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            return Err(Error::QuadratureNotConverged {
                estimate: error,
                requested: target,
            });
        }
        panels.push(kronrod(&f, p.a, mid));
        panels.push(kronrod(&f, mid, p.b));
    }
}

fn sum_panels(panels: &[Panel]) -> Complex64 {
    let mut order: Vec<&Panel> = panels.iter().collect();
    order.sort_by(|p, q| p.a.total_cmp(&q.a));
    Complex64::new(
        neumaier_sum(order.iter().map(|p| p.value.re)),
        neumaier_sum(order.iter().map(|p| p.value.im)),
    )
}

/// `∫_a^b f` for real-valued `f`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Estimate<f64>> {
    let e = integrate_complex(|x| Complex64::new(f(x), 0.0), a, b, cfg)?;
    Ok(Estimate {
        value: e.value.re,
        error: e.error,
        panels: e.panels,
    })
}

/// Composite trapezoid rule on a strictly increasing, possibly non-uniform grid.
pub fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    neumaier_sum(
        x.windows(2)
            .zip(y.windows(2))
            .map(|(xs, ys)| 0.5 * (xs[1] - xs[0]) * (ys[0] + ys[1])),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let cfg = QuadratureConfig::default();
        let e = integrate(|x| x.powi(12), -1.0, 1.0, &cfg).unwrap();
        assert!((e.value - 2.0 / 13.0).abs() < 1e-15);
        assert_eq!(e.panels, 1);
        let e = integrate(|x| x.powi(20), -1.0, 1.0, &cfg).unwrap();
        assert!((e.value - 2.0 / 21.0).abs() < 1e-15);
    }

    #[test]
    fn oscillatory_and_peaked() {
        let cfg = QuadratureConfig {
            abs_tol: 1e-12,
            ..Default::default()
        };
        let e = integrate(|x| (30.0 * x).cos(), 0.0, 2.0, &cfg).unwrap();
        assert!((e.value - (60f64).sin() / 30.0).abs() < 1e-12);
        let g = integrate(|x| (-x * x / 2e-6).exp(), -1.0, 1.0, &cfg).unwrap();
        assert!((g.value - (2e-6 * std::f64::consts::PI).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn reports_failure() {
        let cfg = QuadratureConfig {
            abs_tol: 1e-14,
            rel_tol: 0.0,
            max_panels: 3,
        };
        let r = integrate(|x| x.abs().sqrt().recip(), -1.0, 1.0, &cfg);
        assert!(matches!(r, Err(Error::QuadratureNotConverged { .. })));
    }

    #[test]
    fn trapezoid_linear() {
        let x = [0.0, 0.5, 2.0];
        let y = [1.0, 2.0, 5.0];
        assert_eq!(trapezoid(&x, &y), 6.0);
    }
}
