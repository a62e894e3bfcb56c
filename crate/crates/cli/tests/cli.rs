use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use fermigauss::linalg::CMatrix;
use fermigauss::matrix_io::{read_matrix, write_matrix};
use fermigauss::rindler::{rapidity_to_boost, BoostModeProfile, GaussianProfile};
use fermigauss_cli::linspace;
use fermigauss_cli::table::{Cell, Table};
use num_complex::Complex64;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fermigauss"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn num(c: &Cell) -> f64 {
    match c {
        Cell::Num(x) => *x,
        Cell::Text(s) => panic!("expected a number, got {s}"),
    }
}

fn value(t: &Table, key: &str) -> f64 {
    let row = t
        .rows
        .iter()
        .find(|r| r[0] == Cell::Text(key.into()))
        .unwrap_or_else(|| panic!("no row {key}"));
    num(&row[1])
}

#[test]
fn spectrum_three_points() {
    let o = run(&["spectrum", "--l-min", "-1", "--l-max", "1", "--steps", "3"]);
    assert!(o.status.success());
    let t = Table::from_csv(&stdout(&o)).unwrap();
    let ls: Vec<f64> = t.rows.iter().map(|r| num(&r[0])).collect();
    assert_eq!(ls, [-1.0, 0.0, 1.0]);
    assert_eq!(num(&t.rows[1][1]), 0.5);
    assert_eq!(num(&t.rows[2][1]), fermigauss::rindler::lambda_spectrum(1.0));
}

#[test]
fn spectrum_degenerate_range() {
    let o = run(&["spectrum", "--l-min", "0", "--l-max", "0", "--steps", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid range"));
}

#[test]
fn spectrum_pairing_in_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lambda.csv");
    let o = run(&["spectrum", "--l-min", "-2", "--l-max", "2", "--steps", "401", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let t = Table::from_csv(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(t.rows.len(), 401);
    let lam: Vec<f64> = t.rows.iter().map(|r| num(&r[1])).collect();
    assert!(lam.windows(2).all(|w| w[1] < w[0]));
    for i in 0..401 {
        assert_eq!(num(&t.rows[i][0]), -num(&t.rows[400 - i][0]));
        assert!((lam[i] + lam[400 - i] - 1.0).abs() <= f64::EPSILON);
    }
}

#[test]
fn verify_passes_and_is_reproducible() {
    let args = ["verify", "--seed", "42", "--trials", "100", "--modes", "3"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let t = Table::from_csv(&stdout(&a)).unwrap();
    assert_eq!(t.rows.len(), 8);
    for r in &t.rows {
        assert_eq!(r[5], Cell::Text("PASS".into()));
        assert!(num(&r[2]) < 1e-8);
    }
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_reports_discrepancy_with_exit_one() {
    let o = run(&["verify", "--seed", "1", "--trials", "4", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn verify_rejects_too_many_modes() {
    let o = run(&["verify", "--modes", "99"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("99 modes exceed"));
}

#[test]
fn config_file_mirrors_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"seed": 42, "trials": 12, "modes": 2, "format": "json"}"#).unwrap();
    let from_file = run(&["verify", "--config", cfg.to_str().unwrap()]);
    let from_flags = run(&["verify", "--seed", "42", "--trials", "12", "--modes", "2", "--format", "json"]);
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, from_flags.stdout);
    // Flags win over the file.
    let over = run(&["verify", "--config", cfg.to_str().unwrap(), "--format", "csv"]);
    assert!(stdout(&over).starts_with("check,trials"));
    fs::write(&cfg, r#"{"seeds": 1}"#).unwrap();
    assert_eq!(run(&["verify", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["spectrum", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["entropy-excite", "--occupations", "0.3"]).status.code(), Some(2));
    let o = run(&["entropy-excite", "--occupations", "0.3", "--f-re", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not normalized"));
}

#[test]
fn outputs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for fmt in ["csv", "json"] {
        let path = dir.path().join(format!("out.{fmt}"));
        let o = run(&[
            "entropy-nonunitary",
            "--lambda",
            "0.1,0.25,0.75",
            "--norm-sq",
            "0,0.5,1,10,1e6",
            "--format",
            fmt,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        let text = fs::read_to_string(&path).unwrap();
        let t = if fmt == "csv" {
            Table::from_csv(&text).unwrap()
        } else {
            Table::from_json(&text).unwrap()
        };
        let again = if fmt == "csv" { t.to_csv() } else { t.to_json() };
        assert_eq!(again, text);
    }
}

#[test]
fn excite_spot_value() {
    let o = run(&["entropy-excite", "--occupations", "0.25,0.75", "--f-re", "0.7071067811865476,0.7071067811865476"]);
    let t = Table::from_csv(&stdout(&o)).unwrap();
    assert!((value(&t, "relative_entropy") - 0.5 * 3f64.ln()).abs() < 1e-12);
}

#[test]
fn gaussian_entropies_from_matrix_files() {
    let dir = tempfile::tempdir().unwrap();
    let cov = dir.path().join("c.json");
    let reference = dir.path().join("c0.json");
    let dens = dir.path().join("t.json");
    let canon = |c: &[f64]| fermigauss::gaussian::CovarianceMatrix::canonical(c).into_matrix();
    write_matrix(&cov, &canon(&[1.0, 0.3])).unwrap();
    write_matrix(&reference, &canon(&[0.3, 1.0])).unwrap();
    let o = run(&[
        "entropy-gaussian",
        "--cov",
        cov.to_str().unwrap(),
        "--reference",
        reference.to_str().unwrap(),
        "--density-out",
        dens.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let t = Table::from_csv(&stdout(&o)).unwrap();
    let want_z = (2.0 * 1f64.cosh()).ln() + (2.0 * 0.3f64.cosh()).ln();
    assert!((value(&t, "partition_log") - want_z).abs() < 1e-14);
    let s0 = value(&t, "relative_entropy");
    assert!((s0 - value(&t, "relative_entropy_via_entropies")).abs() < 1e-12);
    assert!((s0 - value(&t, "relative_entropy_unitary")).abs() < 1e-12);
    let tm: CMatrix = read_matrix(&dens).unwrap();
    assert!((tm[(0, 0)].re - 1.0 / (1.0 + 2f64.exp())).abs() < 1e-15);

    fs::write(&cov, r#"{"n_modes": 1, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}"#).unwrap();
    let bad = run(&["entropy-gaussian", "--cov", cov.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("self-dual"));
}

#[test]
fn rindler_gaussian_descriptor() {
    let o = run(&["entropy-rindler", "--gaussian-center", "1", "--gaussian-width", "0.01"]);
    assert!(o.status.success());
    let t = Table::from_csv(&stdout(&o)).unwrap();
    assert!((value(&t, "entropy") - 4.0 * PI * (2.0 * PI).tanh()).abs() < 1e-3);
    assert!(value(&t, "error_estimate") < 1e-8);
}

#[test]
fn rindler_empty_profile() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("empty.csv");
    fs::write(&p, "l,re,im\n").unwrap();
    let o = run(&["entropy-rindler", "--profile", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("empty profile"));
}

fn write_profile(path: &Path, head: &str, xs: impl Iterator<Item = f64>, vs: &[Complex64]) {
    let mut s = format!("{head},re,im\n");
    for (x, v) in xs.zip(vs) {
        s.push_str(&format!("{x},{},{}\n", v.re, v.im));
    }
    fs::write(path, s).unwrap();
}

#[test]
fn rapidity_input_matches_its_transform() {
    let dir = tempfile::tempdir().unwrap();
    let g = GaussianProfile::normalized(0.8, 0.05).unwrap();
    let theta = g.rapidity_profile(0.2).unwrap();
    let tpath = dir.path().join("theta.csv");
    write_profile(&tpath, "theta", theta.thetas(), theta.values());

    let args = ["--l-min", "0.3", "--l-max", "1.3", "--steps", "1001"];
    let mut a = vec!["entropy-rindler", "--profile", tpath.to_str().unwrap()];
    a.extend(args);
    let o = run(&a);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let via_theta = value(&Table::from_csv(&stdout(&o)).unwrap(), "entropy");

    // Transform in-process from the same rounded samples the CLI reads back.
    let parsed = match fermigauss_cli::profile::read_profile_csv(&tpath).unwrap() {
        fermigauss_cli::profile::ProfileInput::Rapidity(r) => r,
        _ => unreachable!(),
    };
    let grid = linspace(0.3, 1.3, 1001).unwrap();
    let BoostModeProfile::Sampled(s) = rapidity_to_boost(&parsed, &grid).unwrap() else {
        unreachable!()
    };
    let lpath = dir.path().join("l.csv");
    write_profile(&lpath, "l", s.grid().iter().copied(), s.values());
    let o = run(&["entropy-rindler", "--profile", lpath.to_str().unwrap()]);
    assert!(o.status.success());
    let direct = value(&Table::from_csv(&stdout(&o)).unwrap(), "entropy");
    assert!((via_theta - direct).abs() < 1e-6);

    let o = run(&["entropy-rindler", "--gaussian-center", "0.8", "--gaussian-width", "0.05"]);
    let analytic = value(&Table::from_csv(&stdout(&o)).unwrap(), "entropy");
    assert!((via_theta - analytic).abs() < 1e-6);
}
