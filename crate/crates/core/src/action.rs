//! Monte Carlo statistics of the path action
//!
//! ```text
//! 𝒜₁ = 4πα ∫∫_{0≤s<t≤τ/α²} dq_t · W₁(q_t − q_s, t − s) dq_s
//! ```
//!
//! for standard Brownian q, discretized as the non-anticipating double sum
//! 4πα Σ_{j<i} Δq_i · W₁(q_i − q_j, (i−j)Δt) Δq_j (diagonal excluded).

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::profile::SmearingProfile;
use crate::kernels::propagator::RadialPropagator;

/// Table |x| range in units of the Brownian scale √(τ/α²).
pub const ENVELOPE_WIDTHS: f64 = 8.0;
/// Default step on the rescaled horizon. The strictly off-diagonal sum
/// underestimates the variance by an amount that shrinks with Δt; at 1/128 the
/// bias is below the statistical error of M = 2000 paths at α = 0.2, τ = 1.
pub const DEFAULT_DT: f64 = 1.0 / 128.0;
const TABLE_X_STEP: f64 = 0.05;
const TABLE_T_POINTS: usize = 96;
/// Tail tolerance ϱ̂(k)/ϱ̂(0) for the tabulated propagator.
const TABLE_RHO_HAT_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathConfig {
    /// Physical horizon τ.
    pub tau: f64,
    pub alpha: f64,
    /// Step on the rescaled horizon τ/α².
    pub dt: f64,
    pub paths: usize,
    pub seed: u64,
    /// Optional lag cutoff T_cut: pairs with t − s > T_cut are skipped.
    #[serde(default)]
    pub lag_cutoff: Option<f64>,
}

impl PathConfig {
    pub fn new(tau: f64, alpha: f64, dt: f64, paths: usize, seed: u64) -> Self {
        Self { tau, alpha, dt, paths, seed, lag_cutoff: None }
    }

    /// Configuration with exactly `steps` steps on the rescaled horizon.
    pub fn with_steps(tau: f64, alpha: f64, steps: usize, paths: usize, seed: u64) -> Self {
        Self::new(tau, alpha, tau / (alpha * alpha) / steps as f64, paths, seed)
    }

    /// Rescaled horizon τ/α².
    pub fn horizon(&self) -> f64 {
        self.tau / (self.alpha * self.alpha)
    }

    /// Number of steps; the horizon is divided into this many equal steps.
    pub fn steps(&self) -> usize {
        (self.horizon() / self.dt).round().max(1.0) as usize
    }

    /// Step actually used, horizon / steps.
    pub fn step(&self) -> f64 {
        self.horizon() / self.steps() as f64
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return Err(Error::Config(format!("τ must be positive, got {}", self.tau)));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!("α must lie in (0, 1), got {}", self.alpha)));
        }
        if !(self.dt > 0.0) || self.dt > self.horizon() / 50.0 * (1.0 + 1e-12) {
            return Err(Error::Config(format!(
                "Δt = {} must be positive and at most (τ/α²)/50 = {}",
                self.dt,
                self.horizon() / 50.0
            )));
        }
        if self.paths < 2 {
            return Err(Error::Config("at least two paths are required".into()));
        }
        if let Some(c) = self.lag_cutoff {
            if !(c > 0.0) {
                return Err(Error::Config(format!("lag cutoff must be positive, got {c}")));
            }
        }
        Ok(())
    }
}

/// Cubic Lagrange weights on nodes 0..3 at position f.
#[inline]
fn cubic_weights(f: f64) -> [f64; 4] {
    let (a, b, c, d) = (f, f - 1.0, f - 2.0, f - 3.0);
    [-b * c * d / 6.0, a * c * d / 2.0, -a * b * d / 2.0, a * b * c / 6.0]
}

/// Stencil start and local coordinate for a uniform grid of n ≥ 4 nodes.
#[inline]
fn stencil(pos: f64, n: usize) -> (usize, f64) {
    let i = (pos.floor() as isize - 1).clamp(0, n as isize - 4) as usize;
    (i, pos - i as f64)
}

/// W₁ components on a uniform |x| grid × uniform ln t grid, with bicubic
/// interpolation.
#[derive(Debug, Clone)]
pub struct KernelTable {
    x_step: f64,
    nx: usize,
    ln_t0: f64,
    ln_step: f64,
    nt: usize,
    /// Row-major [x][t].
    perp: Vec<f64>,
    par: Vec<f64>,
}

impl KernelTable {
    pub fn build(
        profile: &SmearingProfile,
        x_max: f64,
        x_step: f64,
        t_min: f64,
        t_max: f64,
        t_points: usize,
    ) -> Result<Self> {
        if !(x_max > 0.0 && x_step > 0.0 && t_min > 0.0 && t_max > t_min && t_points >= 4) {
            return Err(Error::Config("invalid kernel table geometry".into()));
        }
        let nx = ((x_max / x_step).ceil() as usize + 1).max(4);
        let x_step = x_max / (nx - 1) as f64;
        let (ln_t0, ln_t1) = (t_min.ln(), t_max.ln());
        let ln_step = (ln_t1 - ln_t0) / (t_points - 1) as f64;
        let times: Vec<f64> = (0..t_points).map(|j| (ln_t0 + ln_step * j as f64).exp()).collect();
        let radial = RadialPropagator::new(profile, TABLE_RHO_HAT_CUTOFF);
        let rows = (0..nx)
            .into_par_iter()
            .map(|i| radial.components_at_times(i as f64 * x_step, &times))
            .collect::<Result<Vec<_>>>()?;
        let mut perp = Vec::with_capacity(nx * t_points);
        let mut par = Vec::with_capacity(nx * t_points);
        for row in rows {
            for c in row {
                perp.push(c.perp);
                par.push(c.par);
            }
        }
        Ok(Self { x_step, nx, ln_t0, ln_step, nt: t_points, perp, par })
    }

    /// Table sized for a path configuration: |x| ≤ 8√(τ/α²), t ∈ [Δt, τ/α²].
    pub fn for_config(profile: &SmearingProfile, config: &PathConfig) -> Result<Self> {
        let horizon = config.horizon();
        Self::build(
            profile,
            ENVELOPE_WIDTHS * horizon.sqrt(),
            TABLE_X_STEP.min(profile.scale() / 10.0),
            config.step() * (1.0 - 1e-9),
            horizon * (1.0 + 1e-9),
            TABLE_T_POINTS,
        )
    }

    pub fn x_max(&self) -> f64 {
        self.x_step * (self.nx - 1) as f64
    }

    /// Time range, widened by a few ulps so the grid end points themselves are accepted.
    fn t_range(&self) -> (f64, f64) {
        let slack = 1e-12;
        (
            self.ln_t0.exp() * (1.0 - slack),
            (self.ln_t0 + self.ln_step * (self.nt - 1) as f64).exp() * (1.0 + slack),
        )
    }

    /// Interpolated (W⊥, W∥) at (|x|, t).
    pub fn eval(&self, x: f64, t: f64) -> Result<(f64, f64)> {
        let (t0, t1) = self.t_range();
        if !(x >= 0.0 && x <= self.x_max()) || !(t >= t0 && t <= t1) {
            return Err(Error::TableRange { x, t });
        }
        let (ix, fx) = stencil(x / self.x_step, self.nx);
        let (it, ft) = stencil((t.ln() - self.ln_t0) / self.ln_step, self.nt);
        let (wx, wt) = (cubic_weights(fx), cubic_weights(ft));
        let (mut a, mut b) = (0.0, 0.0);
        for (dx, wxi) in wx.iter().enumerate() {
            let row = (ix + dx) * self.nt + it;
            for (dt, wtj) in wt.iter().enumerate() {
                a += wxi * wtj * self.perp[row + dt];
                b += wxi * wtj * self.par[row + dt];
            }
        }
        Ok((a, b))
    }

    /// For each lag k = 1..n: the table interpolated in t at kΔt, leaving a
    /// cubic interpolation in |x| only.
    fn lag_rows(&self, dt: f64, lags: usize) -> Result<LagTable> {
        let mut values = vec![0.0; 2 * lags * self.nx];
        let (t0, t1) = self.t_range();
        for k in 0..lags {
            let t = (k + 1) as f64 * dt;
            if !(t >= t0 && t <= t1) {
                return Err(Error::TableRange { x: 0.0, t });
            }
            let (it, ft) = stencil((t.ln() - self.ln_t0) / self.ln_step, self.nt);
            let wt = cubic_weights(ft);
            for i in 0..self.nx {
                let row = i * self.nt + it;
                let (mut a, mut b) = (0.0, 0.0);
                for (j, w) in wt.iter().enumerate() {
                    a += w * self.perp[row + j];
                    b += w * self.par[row + j];
                }
                let at = 2 * (k * self.nx + i);
                values[at] = a;
                values[at + 1] = b;
            }
        }
        Ok(LagTable { inv_step: 1.0 / self.x_step, nx: self.nx, x_max: self.x_max(), values })
    }
}

/// Per-lag rows of interleaved (W⊥, W∥) pairs on the |x| grid.
struct LagTable {
    inv_step: f64,
    nx: usize,
    x_max: f64,
    values: Vec<f64>,
}

impl LagTable {
    /// Interleaved (W⊥, W∥) row for lag index k ≥ 1.
    #[inline]
    fn row(&self, lag: usize) -> &[f64] {
        &self.values[2 * (lag - 1) * self.nx..2 * lag * self.nx]
    }

    /// (W⊥, W∥) at |x| from one lag row.
    #[inline(always)]
    fn eval_row(&self, row: &[f64], x: f64) -> Option<(f64, f64)> {
        if x > self.x_max {
            return None;
        }
        let pos = x * self.inv_step;
        let i = (pos as usize).saturating_sub(1).min(self.nx - 4);
        let w = cubic_weights(pos - i as f64);
        let v: &[f64; 8] = row[2 * i..2 * i + 8].try_into().ok()?;
        Some((
            w[0] * v[0] + w[1] * v[2] + w[2] * v[4] + w[3] * v[6],
            w[0] * v[1] + w[1] * v[3] + w[2] * v[5] + w[3] * v[7],
        ))
    }
}

/// One sampled path: the action and the endpoint q at the rescaled horizon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSample {
    pub action: f64,
    pub endpoint: [f64; 3],
}

fn increments(config: &PathConfig, path: u64, steps: usize) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(path);
    let sd = config.step().sqrt();
    (0..steps)
        .map(|_| {
            let mut d = [0.0; 3];
            for c in &mut d {
                let z: f64 = StandardNormal.sample(&mut rng);
                *c = sd * z;
            }
            d
        })
        .collect()
}

fn path_action(dq: &[[f64; 3]], table: &LagTable, max_lag: usize, prefactor: f64) -> Result<PathSample> {
    let n = dq.len();
    let mut q = Vec::with_capacity(n + 1);
    let mut pos = [0.0; 3];
    q.push(pos);
    for d in dq {
        for c in 0..3 {
            pos[c] += d[c];
        }
        q.push(pos);
    }
    // Lag-major order keeps one interpolation row hot in cache per sweep.
    let mut total = 0.0;
    for lag in 1..=max_lag.min(n.saturating_sub(1)) {
        let row = table.row(lag);
        let mut inner = 0.0;
        for j in 0..n - lag {
            let i = j + lag;
            let (qi, di, qj, dj) = (q[i], dq[i], q[j], dq[j]);
            let x = [qi[0] - qj[0], qi[1] - qj[1], qi[2] - qj[2]];
            let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
            let r = r2.sqrt();
            let Some((perp, par)) = table.eval_row(row, r) else {
                return Err(Error::TableRange { x: r, t: lag as f64 });
            };
            let dot = di[0] * dj[0] + di[1] * dj[1] + di[2] * dj[2];
            let mut term = perp * dot;
            if r2 > 0.0 {
                let xi = x[0] * di[0] + x[1] * di[1] + x[2] * di[2];
                let xj = x[0] * dj[0] + x[1] * dj[1] + x[2] * dj[2];
                term += (par - perp) * xi * xj / r2;
            }
            inner += term;
        }
        total += inner;
    }
    let action = prefactor * total;
    if !action.is_finite() {
        return Err(Error::Numeric("path action"));
    }
    Ok(PathSample { action, endpoint: q[n] })
}

/// Per-path samples of 𝒜₁. With `reversed`, each path is read backward
/// (increments negated in reverse order) before the action is evaluated.
pub fn sample_paths(
    config: &PathConfig,
    table: &KernelTable,
    reversed: bool,
) -> Result<Vec<PathSample>> {
    config.validate()?;
    let steps = config.steps();
    let dt = config.step();
    let lags = table.lag_rows(dt, steps.saturating_sub(1).max(1))?;
    let max_lag = match config.lag_cutoff {
        Some(c) => ((c / dt).floor() as usize).min(steps),
        None => steps,
    };
    let prefactor = 4.0 * PI * config.alpha;
    (0..config.paths as u64)
        .into_par_iter()
        .map(|p| {
            let mut dq = increments(config, p, steps);
            if reversed {
                dq.reverse();
                for d in &mut dq {
                    for c in d.iter_mut() {
                        *c = -*c;
                    }
                }
            }
            path_action(&dq, &lags, max_lag, prefactor).map_err(|e| match e {
                Error::TableRange { x, t } => Error::TableRange { x, t: t * dt },
                other => other,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ActionStats {
    pub mean: f64,
    pub mean_stderr: f64,
    pub variance: f64,
    pub variance_stderr: f64,
    /// Cov(𝒜₁, q_τ) per component.
    pub covariance: [f64; 3],
    pub covariance_stderr: [f64; 3],
    pub steps: usize,
    pub paths: usize,
}

impl ActionStats {
    pub fn from_samples(samples: &[PathSample], steps: usize) -> Result<Self> {
        let m = samples.len();
        if m < 2 {
            return Err(Error::Config("statistics need at least two paths".into()));
        }
        let n = m as f64;
        let mean = samples.iter().map(|s| s.action).sum::<f64>() / n;
        let (mut m2, mut m4) = (0.0, 0.0);
        for s in samples {
            let d = s.action - mean;
            m2 += d * d;
            m4 += d.powi(4);
        }
        let variance = m2 / (n - 1.0);
        let (m2b, m4b) = (m2 / n, m4 / n);
        let mut covariance = [0.0; 3];
        let mut covariance_stderr = [0.0; 3];
        for c in 0..3 {
            let qm = samples.iter().map(|s| s.endpoint[c]).sum::<f64>() / n;
            let prods: Vec<f64> = samples.iter().map(|s| (s.action - mean) * (s.endpoint[c] - qm)).collect();
            let pm = prods.iter().sum::<f64>() / n;
            let pv = prods.iter().map(|p| (p - pm).powi(2)).sum::<f64>() / (n - 1.0);
            covariance[c] = pm * n / (n - 1.0);
            covariance_stderr[c] = (pv / n).sqrt();
        }
        let stats = Self {
            mean,
            mean_stderr: (variance / n).sqrt(),
            variance,
            variance_stderr: ((m4b - m2b * m2b).max(0.0) / n).sqrt(),
            covariance,
            covariance_stderr,
            steps,
            paths: m,
        };
        if !stats.variance.is_finite() {
            return Err(Error::Numeric("action statistics"));
        }
        Ok(stats)
    }
}

/// Samples M paths and returns the moment statistics of 𝒜₁.
pub fn sample_action(config: &PathConfig, profile: &SmearingProfile) -> Result<ActionStats> {
    config.validate()?;
    let table = KernelTable::for_config(profile, config)?;
    let samples = sample_paths(config, &table, false)?;
    ActionStats::from_samples(&samples, config.steps())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VariancePoint {
    pub alpha: f64,
    pub variance: f64,
    pub stderr: f64,
}

/// Weighted straight-line fit variance(α) = intercept + slope·α.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extrapolation {
    pub intercept: f64,
    pub intercept_stderr: f64,
    pub slope: f64,
    pub slope_stderr: f64,
    /// χ² per degree of freedom.
    pub reduced_chi2: f64,
    pub points: Vec<VariancePoint>,
}

pub fn fit_variance(points: &[VariancePoint]) -> Result<Extrapolation> {
    let mut alphas: Vec<f64> = points.iter().map(|p| p.alpha).collect();
    alphas.sort_by(f64::total_cmp);
    alphas.dedup();
    if alphas.len() != points.len() {
        return Err(Error::Fit("duplicate α values".into()));
    }
    if points.len() < 3 {
        return Err(Error::Fit(format!("need at least 3 distinct α values, got {}", points.len())));
    }
    if points.iter().any(|p| !(p.stderr > 0.0)) {
        return Err(Error::Fit("every point needs a positive standard error".into()));
    }
    let (mut s, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for p in points {
        let w = p.stderr.powi(-2);
        s += w;
        sx += w * p.alpha;
        sy += w * p.variance;
        sxx += w * p.alpha * p.alpha;
        sxy += w * p.alpha * p.variance;
    }
    let det = s * sxx - sx * sx;
    if !(det > 1e-12 * s * sxx) {
        return Err(Error::Fit("degenerate design matrix".into()));
    }
    let intercept = (sxx * sy - sx * sxy) / det;
    let slope = (s * sxy - sx * sy) / det;
    let chi2: f64 = points
        .iter()
        .map(|p| ((p.variance - intercept - slope * p.alpha) / p.stderr).powi(2))
        .sum();
    Ok(Extrapolation {
        intercept,
        intercept_stderr: (sxx / det).sqrt(),
        slope,
        slope_stderr: (s / det).sqrt(),
        reduced_chi2: chi2 / (points.len() - 2) as f64,
        points: points.to_vec(),
    })
}

/// Samples each configuration and extrapolates the variance to α → 0.
pub fn variance_extrapolation(configs: &[PathConfig], profile: &SmearingProfile) -> Result<Extrapolation> {
    let mut seen: Vec<f64> = configs.iter().map(|c| c.alpha).collect();
    seen.sort_by(f64::total_cmp);
    seen.dedup();
    if seen.len() != configs.len() {
        return Err(Error::Fit("duplicate α values".into()));
    }
    if configs.len() < 3 {
        return Err(Error::Fit(format!("need at least 3 distinct α values, got {}", configs.len())));
    }
    let points = configs
        .iter()
        .map(|c| {
            let s = sample_action(c, profile)?;
            Ok(VariancePoint { alpha: c.alpha, variance: s.variance, stderr: s.variance_stderr })
        })
        .collect::<Result<Vec<_>>>()?;
    fit_variance(&points)
}

/// Two-sample Kolmogorov-Smirnov statistic sup |F₁ − F₂|.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> f64 {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    let (n, m) = (x.len() as f64, y.len() as f64);
    while i < x.len() && j < y.len() {
        let v = x[i].min(y[j]);
        while i < x.len() && x[i] <= v {
            i += 1;
        }
        while j < y.len() && y[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::propagator::propagator_components;

    fn small_config() -> PathConfig {
        PathConfig::with_steps(0.2, 0.3, 60, 64, 11)
    }

    #[test]
    fn validation() {
        assert!(small_config().validate().is_ok());
        assert!(PathConfig::with_steps(1.0, 0.3, 40, 10, 1).validate().is_err());
        assert!(PathConfig::with_steps(1.0, 0.3, 60, 1, 1).validate().is_err());
        assert!(PathConfig::with_steps(1.0, 1.3, 60, 10, 1).validate().is_err());
    }

    #[test]
    fn table_interpolation_accuracy() {
        let p = SmearingProfile::default();
        let table = KernelTable::build(&p, 6.0, 0.05, 0.05, 10.0, 96).unwrap();
        for &(x, t) in &[(0.0, 0.05), (0.37, 0.11), (1.23, 0.9), (3.3, 4.4), (5.9, 9.7)] {
            let (a, b) = table.eval(x, t).unwrap();
            let exact = propagator_components(&p, x, t).unwrap();
            let scale = propagator_components(&p, 0.0, t).unwrap().perp;
            assert!((a - exact.perp).abs() < 1e-5 * scale, "x={x} t={t}");
            assert!((b - exact.par).abs() < 1e-5 * scale, "x={x} t={t}");
        }
        assert!(matches!(table.eval(6.5, 1.0), Err(Error::TableRange { .. })));
        assert!(matches!(table.eval(1.0, 0.01), Err(Error::TableRange { .. })));
    }

    #[test]
    fn bit_identical_across_worker_counts() {
        let p = SmearingProfile::default();
        let c = small_config();
        let a = sample_action(&c, &p).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let b = pool.install(|| sample_action(&c, &p).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn reversal_maps_endpoint_to_its_negative() {
        let p = SmearingProfile::default();
        let c = small_config();
        let table = KernelTable::for_config(&p, &c).unwrap();
        let fwd = sample_paths(&c, &table, false).unwrap();
        let bwd = sample_paths(&c, &table, true).unwrap();
        for (f, b) in fwd.iter().zip(&bwd) {
            for k in 0..3 {
                assert!((f.endpoint[k] + b.endpoint[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn lag_cutoff_reduces_to_full_sum_when_large() {
        let p = SmearingProfile::default();
        let mut c = small_config();
        let full = sample_action(&c, &p).unwrap();
        c.lag_cutoff = Some(1e9);
        assert_eq!(sample_action(&c, &p).unwrap(), full);
        c.lag_cutoff = Some(0.5);
        assert_ne!(sample_action(&c, &p).unwrap().variance, full.variance);
    }

    #[test]
    fn single_pair_by_hand() {
        // Two increments: 𝒜 = 4πα Δq₁·W(q₁ − q₀, Δt)Δq₀ with q₁ − q₀ = Δq₀.
        let p = SmearingProfile::default();
        let table = KernelTable::build(&p, 4.0, 0.01, 0.1, 1.0, 16).unwrap();
        let lags = table.lag_rows(0.1, 1).unwrap();
        let dq = [[0.3, -0.1, 0.2], [0.05, 0.4, -0.3]];
        let got = path_action(&dq, &lags, 2, 1.0).unwrap().action;
        let x = nalgebra::Vector3::new(0.3, -0.1, 0.2);
        let w = crate::kernels::photon_propagator(&p, &x, 0.1).unwrap();
        let want = nalgebra::Vector3::new(0.05, 0.4, -0.3).dot(&(w.matrix() * x));
        assert!((got - want).abs() < 1e-6 * want.abs(), "{got} vs {want}");
    }

    #[test]
    fn fit_recovers_a_line_and_rejects_bad_designs() {
        let pts: Vec<_> = [0.2, 0.3, 0.4]
            .iter()
            .map(|&a| VariancePoint { alpha: a, variance: 2.0 - 3.0 * a, stderr: 0.1 })
            .collect();
        let f = fit_variance(&pts).unwrap();
        assert!((f.intercept - 2.0).abs() < 1e-12 && (f.slope + 3.0).abs() < 1e-12);
        let mut dup = pts.clone();
        dup[2].alpha = 0.2;
        assert!(matches!(fit_variance(&dup), Err(Error::Fit(_))));
        assert!(matches!(fit_variance(&pts[..2]), Err(Error::Fit(_))));
        let configs = vec![PathConfig::with_steps(1.0, 0.3, 60, 4, 1); 3];
        assert!(matches!(variance_extrapolation(&configs, &p_default()), Err(Error::Fit(_))));
    }

    fn p_default() -> SmearingProfile {
        SmearingProfile::default()
    }

    #[test]
    fn ks_statistic_basics() {
        let a = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(ks_statistic(&a, &a), 0.0);
        assert_eq!(ks_statistic(&[0.0, 0.1], &[5.0, 6.0]), 1.0);
    }
}
