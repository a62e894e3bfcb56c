//! Library half of the `fermigauss` command-line tool.

pub mod config;
pub mod error;
pub mod profile;
pub mod table;
pub mod verify;

use std::path::PathBuf;

use fermigauss::excitations::{
    excite_relative_entropy, nonunitary_limit, nonunitary_relative_entropy, nonunitary_t_matrices,
    ExcitationProfile, VacuumSpectrum,
};
use fermigauss::gaussian::{
    density_from_covariance, partition_log, relative_entropy, relative_entropy_from_entropies,
    relative_entropy_unitary, von_neumann_entropy, RelativeEntropy, Tolerances,
};
use fermigauss::matrix_io::{read_covariance, write_matrix};
use fermigauss::rindler::{
    lambda_spectrum, rapidity_to_boost, rindler_relative_entropy, BoostModeProfile, EntropyConfig,
    GaussianProfile, OccupationLaw,
};
use num_complex::Complex64;

use config::{Cli, Command, FileConfig, LawName};
use error::{usage, CliError};
use profile::{read_profile_csv, ProfileInput};
use table::{Cell, Format, Table};

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_MODES: usize = 3;
const DEFAULT_RAPIDITY_STEPS: usize = 4001;

/// A rendered result and the exit status it implies.
pub struct Output {
    pub text: String,
    pub out: Option<PathBuf>,
    pub status: u8,
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing --{flag}")))
}

/// `steps` points from `lo` to `hi` inclusive, with both endpoints exact and
/// mirror-symmetric points when the range is symmetric.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) || steps < 2 {
        return usage(format!("invalid range: [{lo}, {hi}] with {steps} steps (need l_min < l_max and steps >= 2)"));
    }
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let m = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == steps - 1 {
                hi
            } else {
                mid + half * ((2 * i) as f64 - m) / m
            }
        })
        .collect())
}

fn entropy_cell(s: RelativeEntropy) -> Cell {
    match s {
        RelativeEntropy::Finite(x) => Cell::Num(x),
        RelativeEntropy::Infinite => Cell::Num(f64::INFINITY),
    }
}

pub fn run(cli: Cli) -> Result<Output, CliError> {
    let cfg = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let format = cli.format.or(cfg.format).unwrap_or(Format::Csv);
    let out = cli.out.clone().or(cfg.out.clone());
    let tol = cli.tol.or(cfg.tol);
    if let Some(t) = tol {
        if !(t > 0.0 && t.is_finite()) {
            return usage(format!("--tol must be positive, got {t}"));
        }
    }
    let mut status = 0;

    let table = match cli.command {
        Command::Spectrum(a) => {
            let grid = linspace(
                need(a.l_min.or(cfg.l_min), "l-min")?,
                need(a.l_max.or(cfg.l_max), "l-max")?,
                need(a.steps.or(cfg.steps), "steps")?,
            )?;
            let mut t = Table::new(["l", "lambda"]);
            for l in grid {
                t.push(vec![l.into(), lambda_spectrum(l).into()]);
            }
            t
        }
        Command::EntropyGaussian(a) => {
            let mtol = Tolerances::default();
            let c = read_covariance(&need(a.cov.or(cfg.cov), "cov")?, &mtol)?;
            let t = density_from_covariance(&c);
            if let Some(p) = a.density_out.or(cfg.density_out) {
                write_matrix(&p, t.matrix())?;
            }
            let mut table = Table::new(["quantity", "value"]);
            table.push(vec!["n_modes".into(), c.n_modes().into()]);
            table.push(vec!["entropy".into(), von_neumann_entropy(&t).into()]);
            table.push(vec!["partition_log".into(), partition_log(&c).into()]);
            if let Some(p) = a.reference.or(cfg.reference) {
                let c0 = read_covariance(&p, &mtol)?;
                let t0 = density_from_covariance(&c0);
                let s = relative_entropy(&t, &t0, Some(&c0))?;
                table.push(vec!["relative_entropy".into(), entropy_cell(s)]);
                let s1 = relative_entropy_from_entropies(&t, &t0, &c0)?;
                table.push(vec!["relative_entropy_via_entropies".into(), s1.into()]);
                match relative_entropy_unitary(&t, &t0, &c0, &mtol) {
                    Ok(s2) => table.push(vec!["relative_entropy_unitary".into(), s2.into()]),
                    Err(fermigauss::Error::NotUnitarilyEquivalent { .. }) => {}
                    Err(e) => return Err(e.into()),
                }
            }
            table
        }
        Command::EntropyExcite(a) => {
            let d = need(a.occupations.or(cfg.occupations), "occupations")?;
            let re = need(a.f_re.or(cfg.f_re), "f-re")?;
            let im = a.f_im.or(cfg.f_im).unwrap_or_else(|| vec![0.0; re.len()]);
            if re.len() != im.len() || re.len() != d.len() {
                return usage(format!(
                    "--occupations, --f-re and --f-im have lengths {}, {}, {}",
                    d.len(),
                    re.len(),
                    im.len()
                ));
            }
            let f: Vec<Complex64> = re.iter().zip(&im).map(|(&a, &b)| Complex64::new(a, b)).collect();
            let vac = VacuumSpectrum::new(d)?;
            let s = excite_relative_entropy(&vac, &ExcitationProfile::new(f))?;
            let mut table = Table::new(["quantity", "value"]);
            table.push(vec!["relative_entropy".into(), entropy_cell(s)]);
            table
        }
        Command::EntropyNonunitary(a) => {
            let xs = need(a.norm_sq.or(cfg.norm_sq), "norm-sq")?;
            match a.law.or(cfg.law) {
                Some(name) => {
                    let law = match name {
                        LawName::Rindler => OccupationLaw::RindlerVacuum,
                        LawName::Thermal => OccupationLaw::Thermal {
                            beta: need(a.beta.or(cfg.beta), "beta")?,
                        },
                        LawName::ZeroTemperature => OccupationLaw::ZeroTemperature,
                        LawName::InfiniteTemperature => OccupationLaw::InfiniteTemperature,
                    };
                    let ls = need(a.l.or(cfg.l), "l")?;
                    let mut t = Table::new(["l", "eta", "norm_sq", "relative_entropy"]);
                    for &l in &ls {
                        let eta = law.eta(l);
                        for &x in &xs {
                            let s = fermigauss::rindler::general_vacuum_excitation_entropy(&law, l, x)?;
                            t.push(vec![l.into(), eta.into(), x.into(), s.into()]);
                        }
                    }
                    t
                }
                None => {
                    let lambdas = need(a.lambda.or(cfg.lambda), "lambda")?;
                    let mut t = Table::new(["lambda", "norm_sq", "t_1", "t_2", "relative_entropy", "limit"]);
                    for &lam in &lambdas {
                        for &x in &xs {
                            let p = nonunitary_t_matrices(lam, x)?;
                            t.push(vec![
                                lam.into(),
                                x.into(),
                                p.t[0].into(),
                                p.t[1].into(),
                                nonunitary_relative_entropy(lam, x)?.into(),
                                nonunitary_limit(lam)?.into(),
                            ]);
                        }
                    }
                    t
                }
            }
        }
        Command::EntropyRindler(a) => {
            let mut ecfg = EntropyConfig::default();
            if let Some(t) = tol {
                ecfg.quadrature.abs_tol = t;
            }
            let mut meta: Vec<(&str, Cell)> = Vec::new();
            let profile = match (a.profile.or(cfg.profile), a.gaussian_center.or(cfg.gaussian_center)) {
                (Some(_), Some(_)) => return usage("give either --profile or a Gaussian descriptor, not both"),
                (None, Some(center)) => {
                    let width = need(a.gaussian_width.or(cfg.gaussian_width), "gaussian-width")?;
                    meta.push(("profile", "gaussian".into()));
                    BoostModeProfile::Gaussian(GaussianProfile::normalized(center, width)?)
                }
                (Some(path), None) => match read_profile_csv(&path)? {
                    ProfileInput::Boost(p) => {
                        meta.push(("profile", "boost".into()));
                        p
                    }
                    ProfileInput::Rapidity(r) => {
                        let reach = r.nyquist().min(10.0);
                        let grid = linspace(
                            a.range.l_min.or(cfg.l_min).unwrap_or(-reach),
                            a.range.l_max.or(cfg.l_max).unwrap_or(reach),
                            a.range.steps.or(cfg.steps).unwrap_or(DEFAULT_RAPIDITY_STEPS),
                        )?;
                        meta.push(("profile", "rapidity".into()));
                        meta.push(("rapidity_points", r.values().len().into()));
                        meta.push(("rapidity_step", r.dtheta().into()));
                        rapidity_to_boost(&r, &grid)?
                    }
                },
                (None, None) => return usage("missing --profile or --gaussian-center"),
            };
            let s = rindler_relative_entropy(&profile, &ecfg)?;
            let mut t = Table::new(["quantity", "value"]);
            t.push(vec!["entropy".into(), s.value.into()]);
            t.push(vec!["error_estimate".into(), s.error.into()]);
            t.push(vec!["tail_estimate".into(), s.tail.into()]);
            t.push(vec!["l_lower".into(), s.lower.into()]);
            t.push(vec!["l_upper".into(), s.upper.into()]);
            t.push(vec!["nodes".into(), s.nodes.into()]);
            t.push(vec!["norm_sq".into(), profile.norm_sq().into()]);
            for (k, v) in meta {
                t.push(vec![k.into(), v]);
            }
            t
        }
        Command::Verify => {
            let modes = cli.modes.or(cfg.modes).unwrap_or(DEFAULT_MODES);
            if modes == 0 {
                return usage("--modes must be positive");
            }
            let report = verify::run(&verify::VerifyConfig {
                seed: cli.seed.or(cfg.seed).unwrap_or(0),
                trials: cli.trials.or(cfg.trials).unwrap_or(DEFAULT_TRIALS),
                max_modes: modes,
                tol: tol.unwrap_or(DEFAULT_TOL),
            })?;
            if !report.passed {
                status = 1;
            }
            report.table
        }
    };

    Ok(Output {
        text: table.render(format),
        out,
        status,
    })
}
