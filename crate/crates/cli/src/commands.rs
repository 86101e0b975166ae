//! One function per subcommand; each returns the table it emits.

use vdw_core::action::{fit_variance, sample_action, PathConfig, VariancePoint};
use vdw_core::crossover::{
    cp_coefficient, crossover_scan, log_grid, regime_energy, vdw_coefficient, RegimeConstants, RegimeInputs,
};
use vdw_core::kernels::selftest::run_all;
use vdw_core::kernels::{ProfileFamily, SmearingProfile};
use vdw_core::spectral::{build_dipole_spectrum, DipoleSpectrum};
use vdw_core::vacuum::{a0, a0_monte_carlo, a0_with, A0Quadrature, TwoPhotonExponent};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::table::{Cell, Table};

const SIGN_NOTE: &str = "sign: negative energies are attractive; every branch with gamma > 1 is attractive";
const FOURIER_NOTE: &str =
    "convention: phi_hat(k) = (2 pi)^(-3/2) int phi(x) e^(-ik.x) dx, rho_hat(k) = |phi_hat(k)|^2, Q(k) = 1 - k k^T/|k|^2";
const DISCRETIZATION_NOTE: &str = "discretization: left-point Ito sum 4 pi alpha sum_{j<i} dq_i . W_1(q_i - q_j, (i-j) dt) dq_j, \
     diagonal excluded; the variance bias shrinks with dt";

/// Result of a command: the table, plus a failure to report after it is written.
pub struct Outcome {
    pub table: Table,
    pub failure: Option<CliError>,
}

impl From<Table> for Outcome {
    fn from(table: Table) -> Self {
        Self { table, failure: None }
    }
}

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn profile_note(p: &SmearingProfile) -> String {
    let family = match p.family() {
        ProfileFamily::Bump => "bump (1 - (r/R)^2)^3, R",
        ProfileFamily::Gaussian => "gaussian exp(-r^2/2w^2), w",
    };
    format!("profile: {} = {} {}", p.name(), family, real(p.scale()))
}

fn gaussian_warning(table: &mut Table, p: &SmearingProfile) {
    if !p.is_compact() {
        table.note("warning: this profile is not compactly supported, which the smeared-field estimates assume");
    }
}

fn spectrum(config: &RunConfig) -> Result<DipoleSpectrum, CliError> {
    Ok(build_dipole_spectrum(&config.basis)?)
}

fn basis_note(config: &RunConfig) -> String {
    format!("basis: Sturmian, N = {}, lambda = {}", config.basis.size, real(config.basis.length_scale))
}

pub fn spectrum_table(config: &RunConfig) -> Result<Outcome, CliError> {
    let spec = spectrum(config)?;
    let mut t = Table::new(
        "l=1 pseudostate spectrum: E_n = epsilon_n + 1/2, s_n = |<psi_n|x_1|psi_0>|^2",
        &["n", "excitation_energy", "strength"],
    );
    t.note(basis_note(config));
    t.note(format!("closure sum s_n = {} (exact 1)", real(spec.closure_sum())));
    t.note(format!("sum s_n E_n = {} (exact 1/2)", real(spec.energy_weighted_sum())));
    for (n, (e, s)) in spec.pairs().enumerate() {
        t.push(vec![n.into(), e.into(), s.into()]);
    }
    Ok(t.into())
}

/// `a,b,c`, `lin:start:stop:points` or `log:start:stop:points`.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let usage = || CliError::Usage(format!("cannot parse grid '{text}'"));
    let number = |s: &str| s.trim().parse::<f64>().map_err(|_| usage());
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [kind @ ("lin" | "log"), a, b, n] => {
            let (a, b) = (number(a)?, number(b)?);
            let n: usize = n.trim().parse().map_err(|_| usage())?;
            if *kind == "log" {
                return log_grid(a, b, n).map_err(|_| usage());
            }
            Ok(match n {
                0 => Vec::new(),
                1 => vec![a],
                _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
            })
        }
        [list] => list.split(',').filter(|s| !s.trim().is_empty()).map(number).collect(),
        _ => Err(usage()),
    }
}

pub fn polarizability_table(config: &RunConfig, grid: &[f64]) -> Result<Outcome, CliError> {
    if grid.iter().any(|u| !(*u >= 0.0 && u.is_finite())) {
        return Err(CliError::Usage("u grid values must be finite and nonnegative".into()));
    }
    let spec = spectrum(config)?;
    let mut t = Table::new(
        "f(u) = sum_n s_n E_n / (E_n^2 + u^2/4); alpha(iu) = 2 sum_n s_n E_n / (E_n^2 + u^2)",
        &["u", "f", "alpha_iu"],
    );
    t.note(basis_note(config));
    t.note(format!("alpha_hy = 2 f(0) = {}", real(spec.static_polarizability())));
    for &u in grid {
        t.push(vec![u.into(), spec.reduced_polarizability(u).into(), spec.polarizability_imaginary(u).into()]);
    }
    Ok(t.into())
}

pub fn coefficients_table(config: &RunConfig) -> Result<Outcome, CliError> {
    let spec = spectrum(config)?;
    let vdw = vdw_coefficient(&spec)?;
    let a_cp = cp_coefficient(&spec);
    let mut t = Table::new("dispersion coefficients of two ground-state hydrogen atoms", &["quantity", "value", "formula"]);
    t.note(basis_note(config));
    t.note("E(R) ~ -a_VW R^-6 at short range, -a_CP R^-7 at long range (atomic units)");
    t.push(vec!["alpha_hy".into(), spec.static_polarizability().into(), "2 sum_n s_n / E_n".into()]);
    t.push(vec!["a_VW".into(), vdw.closed_form.into(), "6 sum_nm s_n s_m / (E_n + E_m)".into()]);
    t.push(vec!["a_VW_time_domain".into(), vdw.time_domain.into(), "6 int_0^inf C(t)^2 dt, C(t) = sum_n s_n e^(-E_n t)".into()]);
    t.push(vec!["a_CP".into(), a_cp.into(), "(23 / 4 pi) alpha_hy^2".into()]);
    t.push(vec!["R_star".into(), (a_cp / vdw.value()).into(), "a_CP / a_VW".into()]);
    Ok(t.into())
}

pub fn crossover_table(config: &RunConfig, r_min: f64, r_max: f64, points: usize) -> Result<Outcome, CliError> {
    let spec = spectrum(config)?;
    let grid = if points == 0 || r_max < r_min { Vec::new() } else { log_grid(r_min, r_max, points)? };
    let curve = crossover_scan(&spec, &grid, &config.quadrature)?;
    let mut t = Table::new(
        "h_co(R) = (1/pi) int_0^inf f(u)^2 e^(-Ru) R^-6 w(Ru) du, w(s) = s^4/8 + s^3/2 + 5s^2/2 + 6s + 6",
        &["R", "h", "h_R6", "h_R7"],
    );
    t.note(basis_note(config));
    t.note(format!("a_VW = {} (limit of h R^6 as R -> 0)", real(curve.a_vw)));
    t.note(format!("a_CP = {} (limit of h R^7 as R -> inf)", real(curve.a_cp)));
    t.note(format!("R_star = a_CP / a_VW = {}", real(curve.crossover_scale())));
    t.note("sign: h_co > 0; the gamma = 2 energy is -alpha^8 h_co (attractive)");
    for row in &curve.rows {
        t.push(vec![row.r.into(), row.h.into(), row.h_r6.into(), row.h_r7.into()]);
    }
    Ok(t.into())
}

pub fn regime_table(config: &RunConfig, alpha: f64, gamma: f64, r: f64) -> Result<Outcome, CliError> {
    let spec = spectrum(config)?;
    let profile = config.selected_profile()?;
    let mut constants: RegimeConstants = config.regime.clone();
    let a0_source = if constants.a0.is_some() {
        "a0: from configuration".to_string()
    } else {
        let value = a0(&profile, &A0Quadrature::default())?.value;
        constants.a0 = Some(value);
        format!("a0: computed for profile {} = {}", profile.name(), real(value))
    };
    let inputs = RegimeInputs { spectrum: &spec, constants: &constants, profile: &profile, quadrature: &config.quadrature };
    let e = regime_energy(alpha, gamma, r, &inputs)?;
    let mut t = Table::new(
        "leading-order two-atom energy E_alpha(alpha^-gamma R) by regime",
        &["alpha", "gamma", "R", "branch", "energy", "formula"],
    );
    t.note(basis_note(config));
    t.note(profile_note(&profile));
    t.note(a0_source);
    t.note(SIGN_NOTE);
    t.push(vec![alpha.into(), gamma.into(), r.into(), e.branch.label().into(), e.value.into(), e.branch.formula().into()]);
    Ok(t.into())
}

pub fn a0_table(config: &RunConfig, mc_samples: Option<usize>, seed: u64) -> Result<Outcome, CliError> {
    let profile = config.selected_profile()?;
    let q = A0Quadrature::default();
    let mut t = Table::new(
        "2 a0 = int dk1 dk2 rho_hat(k1) rho_hat(k2) (4|k1||k2|)^-1 (4 pi)^2 Tr(Q(k1) Q(k2)) / D(k1, k2)",
        &["exponent", "method", "value", "error", "samples"],
    );
    t.note(profile_note(&profile));
    t.note(FOURIER_NOTE);
    t.note("canonical: resolvent D = (k1+k2)^2/2 + |k1| + |k2|; halved variant shown for comparison");
    t.note("error: quadrature error estimate, or Monte Carlo standard error");
    gaussian_warning(&mut t, &profile);
    for exponent in [TwoPhotonExponent::Resolvent, TwoPhotonExponent::HalvedField] {
        let r = a0_with(&profile, exponent, &q)?;
        t.push(vec![exponent.label().into(), "reduced 3D quadrature".into(), r.value.into(), r.error.into(), Cell::Empty]);
    }
    if let Some(n) = mc_samples {
        for exponent in [TwoPhotonExponent::Resolvent, TwoPhotonExponent::HalvedField] {
            let m = a0_monte_carlo(&profile, exponent, n, seed)?;
            t.push(vec![exponent.label().into(), "6D Monte Carlo".into(), m.mean.into(), m.stderr.into(), n.into()]);
        }
    }
    Ok(t.into())
}

fn path_notes(t: &mut Table, c: &PathConfig, profile: &SmearingProfile) {
    t.note(profile_note(profile));
    t.note(format!("tau = {}, alpha = {}, dt = {}, paths = {}, seed = {}", real(c.tau), real(c.alpha), real(c.step()), c.paths, c.seed));
    if let Some(cut) = c.lag_cutoff {
        t.note(format!("lag cutoff: pairs with t - s > {} skipped", real(cut)));
    }
    t.note(DISCRETIZATION_NOTE);
}

pub fn mc_action_table(config: &RunConfig, path: &PathConfig) -> Result<Outcome, CliError> {
    let profile = config.selected_profile()?;
    let a0_value = a0(&profile, &A0Quadrature::default())?.value;
    let s = sample_action(path, &profile)?;
    let mut t = Table::new(
        "path action A_1 = 4 pi alpha int int_{s<t} dq_t . W_1(q_t - q_s, t - s) dq_s: sample moments",
        &["quantity", "value", "stderr", "limit"],
    );
    path_notes(&mut t, path, &profile);
    t.note(format!("steps = {}", s.steps));
    t.note("limit: alpha -> 0 values; variance 2 a0 tau");
    t.push(vec!["mean".into(), s.mean.into(), s.mean_stderr.into(), 0.0.into()]);
    t.push(vec!["variance".into(), s.variance.into(), s.variance_stderr.into(), (2.0 * a0_value * path.tau).into()]);
    for c in 0..3 {
        t.push(vec![format!("cov_q{}", c + 1).into(), s.covariance[c].into(), s.covariance_stderr[c].into(), 0.0.into()]);
    }
    Ok(t.into())
}

pub fn mc_extrapolate_table(config: &RunConfig, base: &PathConfig, alphas: &[f64]) -> Result<Outcome, CliError> {
    let profile = config.selected_profile()?;
    let a0_value = a0(&profile, &A0Quadrature::default())?.value;
    let mut t = Table::new(
        "variance of A_1 against alpha, linear fit extrapolated to alpha -> 0",
        &["kind", "alpha", "steps", "variance", "variance_stderr", "mean", "mean_stderr"],
    );
    path_notes(&mut t, base, &profile);
    t.note("seeds: seed + index of alpha in the list");
    let mut points = Vec::new();
    for (i, &alpha) in alphas.iter().enumerate() {
        let c = PathConfig { alpha, seed: base.seed.wrapping_add(i as u64), ..base.clone() };
        let s = sample_action(&c, &profile)?;
        points.push(VariancePoint { alpha, variance: s.variance, stderr: s.variance_stderr });
        t.push(vec![
            "sample".into(),
            alpha.into(),
            s.steps.into(),
            s.variance.into(),
            s.variance_stderr.into(),
            s.mean.into(),
            s.mean_stderr.into(),
        ]);
    }
    let fit = fit_variance(&points)?;
    t.note(format!("fit: slope = {} +- {}, chi2/dof = {}", real(fit.slope), real(fit.slope_stderr), real(fit.reduced_chi2)));
    t.note(format!("limit: 2 a0 tau = {}", real(2.0 * a0_value * base.tau)));
    t.push(vec![
        "intercept".into(),
        0.0.into(),
        Cell::Empty,
        fit.intercept.into(),
        fit.intercept_stderr.into(),
        Cell::Empty,
        Cell::Empty,
    ]);
    Ok(t.into())
}

pub fn selftest_table(config: &RunConfig, seed: u64) -> Result<Outcome, CliError> {
    let profile = config.selected_profile()?;
    let checks = run_all(&profile, seed)?;
    let mut t = Table::new(
        "closed-form kernels against brute-force oracles",
        &["check", "cases", "max_deviation", "tolerance", "passed"],
    );
    t.note(profile_note(&profile));
    t.note(FOURIER_NOTE);
    let mut failed = 0;
    for c in &checks {
        failed += usize::from(!c.passed());
        t.push(vec![c.name.into(), c.cases.into(), c.max_deviation.into(), c.tolerance.into(), c.passed().into()]);
    }
    Ok(Outcome { table: t, failure: (failed > 0).then_some(CliError::SelfTest(failed)) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0, 1.5,2").unwrap(), vec![0.0, 1.5, 2.0]);
        assert_eq!(parse_grid("lin:0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        let g = parse_grid("log:1e-2:1e2:5").unwrap();
        assert_eq!(g.len(), 5);
        assert!((g[2] - 1.0).abs() < 1e-15);
        assert!(parse_grid("lin:0:1").is_err());
        assert!(parse_grid("x").is_err());
        assert!(parse_grid("").unwrap().is_empty());
    }

    #[test]
    fn coefficients_have_expected_values() {
        let t = coefficients_table(&RunConfig::default()).unwrap().table;
        let value = |name: &str| match t.rows.iter().find(|r| r[0] == Cell::Text(name.into())).unwrap()[1] {
            Cell::Real(x) => x,
            _ => panic!("not a real"),
        };
        assert!((value("a_VW") - 6.499026705).abs() < 1e-8);
        assert!((value("a_CP") - 37.0632).abs() < 1e-3);
        assert!((value("R_star") - 5.703).abs() < 1e-3);
    }

    #[test]
    fn empty_crossover_range_has_no_rows() {
        let t = crossover_table(&RunConfig::default(), 1.0, 0.5, 10).unwrap().table;
        assert!(t.rows.is_empty());
        let t = crossover_table(&RunConfig::default(), 1.0, 2.0, 0).unwrap().table;
        assert!(t.rows.is_empty());
    }

    #[test]
    fn molecular_branch_without_table_is_branch_data_error() {
        let err = regime_table(&RunConfig::default(), 0.1, 1.0, 2.0).err().unwrap();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("E_2R"));
    }
}
