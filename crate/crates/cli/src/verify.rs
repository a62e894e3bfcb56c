//! Randomized cross-checks of the one-particle formulas against the Fock oracle.
//!
//! Trial `k` draws from ChaCha8 stream `k` under the given seed, so trials are
//! independent of each other and of the thread count.

use fermigauss::excitations::{
    excite_relative_entropy, nonunitary_relative_entropy, ExcitationProfile, VacuumSpectrum,
};
use fermigauss::fock::{
    excitation_unitary, fock_partition_log, gaussian_density_matrix, jordan_wigner_field_ops,
    nonunitary_excited_density, oracle_reduced_density, oracle_relative_entropy,
    oracle_von_neumann, parity_even_part, DensityMatrix,
};
use fermigauss::gaussian::{
    bogoliubov_diagonalize, density_from_covariance, partition_log, relative_entropy,
    relative_entropy_from_entropies, relative_entropy_unitary, von_neumann_entropy, Tolerances,
};
use fermigauss::linalg::max_abs_diff;
use fermigauss::sampling::{
    random_bogoliubov, random_covariance, random_occupations, random_unit_vector,
    rank_deficient_covariance,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::CliError;
use crate::table::Table;

pub const CHECKS: [&str; 8] = [
    "entropy",
    "partition_log",
    "reduced_density",
    "relative_entropy",
    "relative_entropy_forms",
    "unitary_excitation",
    "nonunitary_excitation",
    "bogoliubov",
];

pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
    pub max_modes: usize,
    pub tol: f64,
}

pub struct Report {
    pub table: Table,
    pub passed: bool,
}

fn trial(seed: u64, index: usize, max_modes: usize) -> Result<[f64; 8], fermigauss::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let n = 1 + index % max_modes;
    let tol = Tolerances::default();

    let scale = rng.random_range(0.2..3.0);
    let c = random_covariance(&mut rng, n, scale);
    let scale = rng.random_range(0.2..3.0);
    let c0 = random_covariance(&mut rng, n, scale);
    let t = density_from_covariance(&c);
    let t0 = density_from_covariance(&c0);
    let w = gaussian_density_matrix(&c)?;
    let w0 = gaussian_density_matrix(&c0)?;
    let entropy = (von_neumann_entropy(&t) - oracle_von_neumann(&w)).abs();
    let partition = (partition_log(&c) - fock_partition_log(&c)?).abs();
    let density = max_abs_diff(t.matrix(), oracle_reduced_density(&w)?.matrix());
    let relative = (relative_entropy(&t, &t0, None)?.value() - oracle_relative_entropy(&w, &w0)?.value()).abs();

    let scale = rng.random_range(0.5..4.0);
    let u = random_bogoliubov(&mut rng, n, scale);
    let cu = u.transform_covariance(&c0);
    let tu = density_from_covariance(&cu);
    let s0 = relative_entropy(&tu, &t0, Some(&c0))?.value();
    let s1 = relative_entropy_from_entropies(&tu, &t0, &c0)?;
    let s2 = relative_entropy_unitary(&tu, &t0, &c0, &tol)?;
    let forms = (s0 - s1).abs().max((s1 - s2).abs()).max((s0 - s2).abs());

    let d = random_occupations(&mut rng, n, 0.02);
    let f = random_unit_vector(&mut rng, n);
    let closed = excite_relative_entropy(&VacuumSpectrum::new(d.clone())?, &ExcitationProfile::new(f.clone()))?;
    let vac = DensityMatrix::product_vacuum(&d)?;
    let excited = vac.conjugated(&excitation_unitary(&f)?)?;
    let unitary = (closed.value() - oracle_relative_entropy(&excited, &vac)?.value()).abs();

    let lambda = rng.random_range(0.02..0.98);
    let x: f64 = rng.random_range(0.0..20.0);
    let g: Vec<Complex64> = random_unit_vector(&mut rng, n).iter().map(|z| z * x.sqrt()).collect();
    let flat = DensityMatrix::product_vacuum(&vec![lambda; n])?;
    let dressed = parity_even_part(&nonunitary_excited_density(&flat, &g)?);
    let nonunitary =
        (nonunitary_relative_entropy(lambda, x)? - oracle_relative_entropy(&dressed, &flat)?.value()).abs();

    let target = if index % 4 == 3 {
        let zeros = rng.random_range(1..=n);
        rank_deficient_covariance(&mut rng, n, zeros, 2.0)
    } else {
        c.clone()
    };
    let dg = bogoliubov_diagonalize(&target, &tol)?;
    let canon = fermigauss::gaussian::CovarianceMatrix::canonical(&dg.energies);
    let bogoliubov = dg
        .transform
        .unitarity_residual()
        .max(dg.transform.symmetry_residual())
        .max(max_abs_diff(&dg.transform.conjugate(target.matrix()), canon.matrix()));

    Ok([entropy, partition, density, relative, forms, unitary, nonunitary, bogoliubov])
}

pub fn run(cfg: &VerifyConfig) -> Result<Report, CliError> {
    jordan_wigner_field_ops(cfg.max_modes)?;
    if cfg.trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    let results: Vec<[f64; 8]> = (0..cfg.trials)
        .into_par_iter()
        .map(|k| trial(cfg.seed, k, cfg.max_modes))
        .collect::<Result<_, _>>()?;

    let mut table = Table::new(["check", "trials", "max_discrepancy", "worst_trial", "tolerance", "status"]);
    let mut passed = true;
    for (j, name) in CHECKS.iter().enumerate() {
        let (worst_trial, worst) = results
            .iter()
            .enumerate()
            .map(|(k, r)| (k, r[j]))
            .fold((0, f64::NEG_INFINITY), |acc, x| if x.1.is_nan() || x.1 > acc.1 { x } else { acc });
        let ok = worst <= cfg.tol;
        passed &= ok;
        table.push(vec![
            (*name).into(),
            cfg.trials.into(),
            worst.into(),
            worst_trial.into(),
            cfg.tol.into(),
            if ok { "PASS" } else { "FAIL" }.into(),
        ]);
    }
    Ok(Report { table, passed })
}
