use std::f64::consts::PI;

use fermigauss::excitations::{
    excite_relative_entropy, nonunitary_limit, nonunitary_relative_entropy, ExcitationProfile,
    VacuumSpectrum,
};
use fermigauss::gaussian::{
    covariance_from_density, density_from_covariance, partition_log, relative_entropy,
    von_neumann_entropy, CovarianceMatrix, DEFAULT_EIGEN_CLIP,
};
use fermigauss::linalg::{identity, max_abs_diff, swap_conjugate};
use fermigauss::rindler::{
    lambda_spectrum, pv_kernel_transform, rindler_relative_entropy, BoostModeProfile,
    EntropyConfig, GaussianProfile, PvConfig, SampledProfile,
};
use fermigauss::sampling::{random_bogoliubov, random_covariance, random_occupations, random_unit_vector};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn covariance(seed: u64, n: usize, scale: f64) -> CovarianceMatrix {
    random_covariance(&mut ChaCha8Rng::seed_from_u64(seed), n, scale)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn density_is_a_valid_two_point_function(seed in any::<u64>(), n in 1usize..5, scale in 0.05f64..4.0) {
        let t = density_from_covariance(&covariance(seed, n, scale));
        let m = t.matrix();
        prop_assert!(max_abs_diff(m, &m.adjoint()) < 1e-13);
        let dual = identity(2 * n) - m.map(|z| z.conj());
        prop_assert!(max_abs_diff(&swap_conjugate(m), &dual) < 1e-13);
        let v = t.eigen().values;
        for k in 0..2 * n {
            prop_assert!((-1e-14..=1.0 + 1e-14).contains(&v[k]));
            prop_assert!((v[k] + v[2 * n - 1 - k] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn covariance_round_trip(seed in any::<u64>(), n in 1usize..5, scale in 0.05f64..4.0) {
        let c = covariance(seed, n, scale);
        let back = covariance_from_density(&density_from_covariance(&c), DEFAULT_EIGEN_CLIP, true).unwrap();
        prop_assert!(max_abs_diff(c.matrix(), back.matrix()) < 1e-9);
    }

    #[test]
    fn bogoliubov_invariance(seed in any::<u64>(), n in 1usize..5, scale in 0.05f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_covariance(&mut rng, n, scale);
        let u = random_bogoliubov(&mut rng, n, 2.0);
        let cu = u.transform_covariance(&c);
        prop_assert!((partition_log(&c) - partition_log(&cu)).abs() < 1e-12);
        let s = von_neumann_entropy(&density_from_covariance(&c));
        let su = von_neumann_entropy(&density_from_covariance(&cu));
        prop_assert!((s - su).abs() < 1e-12);
        let direct = density_from_covariance(&cu);
        let moved = u.transform_density(&density_from_covariance(&c));
        prop_assert!(max_abs_diff(direct.matrix(), moved.matrix()) < 1e-12);
    }

    #[test]
    fn relative_entropy_nonnegative(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_covariance(&mut rng, n, 1.5);
        let c0 = random_covariance(&mut rng, n, 1.5);
        let t = density_from_covariance(&c);
        let t0 = density_from_covariance(&c0);
        prop_assert!(relative_entropy(&t, &t0, None).unwrap().value() >= -1e-12);
        prop_assert!(relative_entropy(&t0, &t0, Some(&c0)).unwrap().value().abs() < 1e-12);
    }

    #[test]
    fn excitation_symmetries(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_occupations(&mut rng, n, 1e-3);
        let f = random_unit_vector(&mut rng, n);
        let s = excite_relative_entropy(&VacuumSpectrum::new(d.clone()).unwrap(), &ExcitationProfile::new(f.clone()))
            .unwrap()
            .value();
        prop_assert!(s >= 0.0);
        let mut order: Vec<usize> = (0..n).collect();
        order.rotate_left((seed % n as u64) as usize);
        order.reverse();
        let dp: Vec<f64> = order.iter().map(|&i| d[i]).collect();
        let fp: Vec<Complex64> = order.iter().map(|&i| f[i]).collect();
        let sp = excite_relative_entropy(&VacuumSpectrum::new(dp).unwrap(), &ExcitationProfile::new(fp))
            .unwrap()
            .value();
        prop_assert!((s - sp).abs() < 1e-12 * s.max(1.0));
        let flipped: Vec<f64> = d.iter().map(|x| 1.0 - x).collect();
        let sf = excite_relative_entropy(&VacuumSpectrum::new(flipped).unwrap(), &ExcitationProfile::new(f))
            .unwrap()
            .value();
        prop_assert!((s - sf).abs() < 1e-12 * s.max(1.0));
    }

    #[test]
    fn nonunitary_monotone(lambda in 0.001f64..0.999) {
        prop_assume!((lambda - 0.5).abs() > 1e-6);
        let grid = [0.0, 0.5, 1.0, 2.0, 10.0, 100.0];
        let vals: Vec<f64> = grid.iter().map(|&x| nonunitary_relative_entropy(lambda, x).unwrap()).collect();
        prop_assert_eq!(vals[0], 0.0);
        for w in vals.windows(2) {
            prop_assert!(w[1] >= w[0]);
        }
        prop_assert!(vals[5] <= nonunitary_limit(lambda).unwrap() + 1e-14);
    }

    #[test]
    fn spectrum_pairs_and_decreases(l in -20.0f64..20.0, dl in 1e-3f64..1.0) {
        prop_assert!((lambda_spectrum(l) + lambda_spectrum(-l) - 1.0).abs() <= f64::EPSILON);
        prop_assert!(lambda_spectrum(l + dl) <= lambda_spectrum(l));
    }

    #[test]
    fn pv_kernel_odd(l in -6.0f64..6.0) {
        let cfg = PvConfig::default();
        let a = pv_kernel_transform(l, &cfg).unwrap().value;
        let b = pv_kernel_transform(-l, &cfg).unwrap().value;
        prop_assert!((a + b).norm() < 1e-8);
    }

    #[test]
    fn rindler_entropy_phase_and_scale(center in -2.0f64..2.0, width in 0.02f64..0.5, alpha in 0.0f64..6.3, c in 0.1f64..3.0) {
        let cfg = EntropyConfig::default();
        let g = BoostModeProfile::Gaussian(GaussianProfile::normalized(center, width).unwrap());
        let s = rindler_relative_entropy(&g, &cfg).unwrap().value;
        prop_assert!(s >= 0.0);
        let rotated = rindler_relative_entropy(&g.scaled(Complex64::from_polar(1.0, alpha)), &cfg).unwrap().value;
        prop_assert!((rotated - s).abs() < 1e-8);
        let scaled = rindler_relative_entropy(&g.scaled(Complex64::new(c, 0.0)), &cfg).unwrap().value;
        prop_assert!((scaled - c * c * s).abs() < 1e-8 * c * c);
    }

    #[test]
    fn rindler_entropy_symmetric_fold(width in 0.05f64..1.0, center in 0.0f64..1.5) {
        // |f̃(ℓ)| = |f̃(-ℓ)| for a pair of mirrored Gaussians.
        let g = GaussianProfile::normalized(center, width).unwrap();
        let grid: Vec<f64> = (0..=4000).map(|i| -12.0 + i as f64 * 0.006).collect();
        let amp = |l: f64| (g.value(l) + g.value(-l)) * 0.5;
        let values: Vec<Complex64> = grid.iter().map(|&l| amp(l)).collect();
        let full = rindler_relative_entropy(
            &BoostModeProfile::Sampled(SampledProfile::new(grid.clone(), values).unwrap()),
            &EntropyConfig::default(),
        )
        .unwrap()
        .value;
        let half: Vec<f64> = grid.iter().copied().filter(|&l| l >= 0.0).collect();
        let y: Vec<f64> = half.iter().map(|&l| 8.0 * PI * l * (2.0 * PI * l).tanh() * amp(l).norm_sqr()).collect();
        let folded = fermigauss::quadrature::trapezoid(&half, &y);
        prop_assert!((full - folded).abs() < 1e-10);
    }
}
