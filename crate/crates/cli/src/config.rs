//! Command-line flags and the JSON config file that mirrors them. A flag given
//! on the command line wins over the same key in the config file.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::error::CliError;
use crate::table::Format;

#[derive(Debug, Parser)]
#[command(
    name = "fermigauss",
    version,
    about = "Entropies of fermionic Gaussian states, excitations and the Rindler wedge"
)]
pub struct Cli {
    /// JSON file with defaults for any flag (keys in snake_case).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Pass threshold for `verify`; absolute quadrature tolerance for `entropy-rindler`.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Largest number of modes used by `verify`.
    #[arg(long, global = true)]
    pub modes: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate λ_ℓ = 1/(1 + e^{4πℓ}).
    Spectrum(RangeArgs),
    /// Entropy, partition function and relative entropy from covariance matrix files.
    EntropyGaussian(GaussianArgs),
    /// Relative entropy of a unitary single-mode excitation of a number-preserving vacuum.
    EntropyExcite(ExciteArgs),
    /// Relative entropy of an excitation of the Rindler vacuum from a boost-momentum profile.
    EntropyRindler(RindlerArgs),
    /// Relative entropy of a non-unitary excitation.
    EntropyNonunitary(NonunitaryArgs),
    /// Compare every closed form with the Fock-space oracle on random inputs.
    Verify,
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub l_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub l_max: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GaussianArgs {
    /// Covariance matrix of the state (matrix JSON).
    #[arg(long)]
    pub cov: Option<PathBuf>,
    /// Covariance matrix of the reference state.
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Also write the doubled one-particle density T of the state (matrix JSON).
    #[arg(long)]
    pub density_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExciteArgs {
    /// Vacuum occupations d_k, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub occupations: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub f_re: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub f_im: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct RindlerArgs {
    /// CSV with columns `l,re,im` (boost momentum) or `theta,re,im` (rapidity).
    #[arg(long)]
    pub profile: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub gaussian_center: Option<f64>,
    #[arg(long)]
    pub gaussian_width: Option<f64>,
    /// Boost-momentum grid for rapidity input.
    #[command(flatten)]
    pub range: RangeArgs,
}

#[derive(Debug, Args)]
pub struct NonunitaryArgs {
    /// Vacuum eigenvalues λ, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub lambda: Option<Vec<f64>>,
    /// Values of |f|², comma separated.
    #[arg(long, value_delimiter = ',')]
    pub norm_sq: Option<Vec<f64>>,
    /// Take λ = η(ℓ) from an occupation law instead of `--lambda`.
    #[arg(long, value_enum)]
    pub law: Option<LawName>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub l: Option<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawName {
    Rindler,
    Thermal,
    ZeroTemperature,
    InfiniteTemperature,
}

/// Every flag as an optional key.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub modes: Option<usize>,
    pub l_min: Option<f64>,
    pub l_max: Option<f64>,
    pub steps: Option<usize>,
    pub cov: Option<PathBuf>,
    pub reference: Option<PathBuf>,
    pub density_out: Option<PathBuf>,
    pub occupations: Option<Vec<f64>>,
    pub f_re: Option<Vec<f64>>,
    pub f_im: Option<Vec<f64>>,
    pub profile: Option<PathBuf>,
    pub gaussian_center: Option<f64>,
    pub gaussian_width: Option<f64>,
    pub lambda: Option<Vec<f64>>,
    pub norm_sq: Option<Vec<f64>>,
    pub law: Option<LawName>,
    pub beta: Option<f64>,
    pub l: Option<Vec<f64>>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}
