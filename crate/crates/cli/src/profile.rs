//! Excitation profiles from CSV: a header naming the grid column (`l` for
//! boost momentum, `theta` for rapidity) followed by `re` and `im`.

use std::path::Path;

use fermigauss::rindler::{BoostModeProfile, RapidityProfile, SampledProfile};
use num_complex::Complex64;

use crate::error::{usage, CliError};

pub enum ProfileInput {
    Boost(BoostModeProfile),
    Rapidity(RapidityProfile),
}

const UNIFORM_TOL: f64 = 1e-9;

pub fn read_profile_csv(path: &Path) -> Result<ProfileInput, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    parse_profile_csv(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn parse_profile_csv(text: &str) -> Result<ProfileInput, CliError> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = r.headers().map_err(|e| CliError::Usage(e.to_string()))?.clone();
    let names: Vec<&str> = headers.iter().collect();
    let rapidity = match names.as_slice() {
        ["l", "re", "im"] | ["ell", "re", "im"] => false,
        ["theta", "re", "im"] => true,
        _ => {
            return usage(format!(
                "line 1: expected header \"l,re,im\" or \"theta,re,im\", found \"{}\"",
                names.join(",")
            ))
        }
    };
    let mut grid = Vec::new();
    let mut values = Vec::new();
    let mut lines = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| CliError::Usage(e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        let field = |i: usize| -> Result<f64, CliError> {
            let s = rec.get(i).unwrap_or("");
            s.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::Usage(format!("line {line}: \"{s}\" is not a finite number")))
        };
        grid.push(field(0)?);
        values.push(Complex64::new(field(1)?, field(2)?));
        lines.push(line);
    }
    if grid.is_empty() {
        return usage("empty profile");
    }
    if let Some(i) = grid.windows(2).position(|w| w[1] <= w[0]) {
        return usage(format!("line {}: grid is not strictly increasing", lines[i + 1]));
    }
    if !rapidity {
        return Ok(ProfileInput::Boost(BoostModeProfile::Sampled(SampledProfile::new(grid, values)?)));
    }
    let n = grid.len();
    if n < 2 {
        return usage("rapidity profile needs at least two samples");
    }
    let step = (grid[n - 1] - grid[0]) / (n - 1) as f64;
    for j in 1..n {
        let expected = grid[0] + j as f64 * step;
        if (grid[j] - expected).abs() > UNIFORM_TOL * step.max(1.0) * j as f64 {
            return usage(format!("line {}: rapidity grid is not uniform", lines[j]));
        }
    }
    Ok(ProfileInput::Rapidity(RapidityProfile::new(grid[0], step, values)?))
}
