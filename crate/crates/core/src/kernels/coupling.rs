//! Norms of the photon coupling function
//! g_{α,δ}(k, λ) = φ̂(α^{2−δ}k) (2ω)^{−1/2} e^{iαk·x} ε(k, λ), ω = |k|.
//!
//! Summed over both polarizations the phases and ε drop out:
//! ‖g‖² = 4π∫₀^∞ k ϱ̂(βk) dk and ‖ω^{−1/2}g‖² = 4π∫₀^∞ ϱ̂(βk) dk, β = α^{2−δ}.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kernels::profile::SmearingProfile;
use crate::quadrature::{Adaptive, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingNorms {
    pub alpha: f64,
    pub delta: f64,
    /// ‖g_{α,δ}‖
    pub norm_g: f64,
    /// ‖ω^{−1/2} g_{α,δ}‖
    pub norm_g_over_sqrt_omega: f64,
}

impl CouplingNorms {
    /// α^{3/2} ‖ω^{−1/2}g‖, of order α^{(1+δ)/2}.
    pub fn linear_product(&self) -> f64 {
        self.alpha.powf(1.5) * self.norm_g_over_sqrt_omega
    }

    /// α³ ‖g‖ ‖ω^{−1/2}g‖, of order α^{3δ/2}.
    pub fn quadratic_product(&self) -> f64 {
        self.alpha.powi(3) * self.norm_g * self.norm_g_over_sqrt_omega
    }

    /// √(4π) α^{3/2} ‖g‖, of order α^{−1/2} at δ = 0.
    pub fn field_strength(&self) -> f64 {
        (4.0 * PI).sqrt() * self.alpha.powf(1.5) * self.norm_g
    }
}

pub fn coupling_norms(profile: &SmearingProfile, alpha: f64, delta: f64) -> Result<CouplingNorms> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("α must lie in (0, 1), got {alpha}")));
    }
    if !(0.0..1.0).contains(&delta) {
        return Err(Error::Domain(format!("δ must lie in [0, 1), got {delta}")));
    }
    let beta = alpha.powf(2.0 - delta);
    let upper = profile.rho_hat_cutoff(1e-20) / beta;
    let breaks: Vec<f64> = (0..=64).map(|i| upper * i as f64 / 64.0).collect();
    let adaptive = Adaptive::default();
    let tol = Tolerance::new(0.0, 1e-12);
    let first = adaptive.integrate_intervals(|k| k * profile.rho_hat(beta * k), &breaks, tol, 1_000_000)?;
    let zeroth = adaptive.integrate_intervals(|k| profile.rho_hat(beta * k), &breaks, tol, 1_000_000)?;
    Ok(CouplingNorms {
        alpha,
        delta,
        norm_g: (4.0 * PI * first.value).sqrt(),
        norm_g_over_sqrt_omega: (4.0 * PI * zeroth.value).sqrt(),
    })
}

/// Least-squares slope of ln y against ln x.
pub fn loglog_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::Fit("slope needs at least two points".into()));
    }
    if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(Error::Fit("log-log fit needs positive data".into()));
    }
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), &(x, y)| (a + x.ln(), b + y.ln()));
    let (mx, my) = (sx / n, sy / n);
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for &(x, y) in points {
        let dx = x.ln() - mx;
        sxx += dx * dx;
        sxy += dx * (y.ln() - my);
    }
    if sxx == 0.0 {
        return Err(Error::Fit("all abscissae coincide".into()));
    }
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slopes(delta: f64) -> (f64, f64, f64) {
        let p = SmearingProfile::default();
        let norms: Vec<_> = (3..=8)
            .map(|n| coupling_norms(&p, 0.5f64.powi(n), delta).unwrap())
            .collect();
        let lin: Vec<_> = norms.iter().map(|c| (c.alpha, c.linear_product())).collect();
        let quad: Vec<_> = norms.iter().map(|c| (c.alpha, c.quadratic_product())).collect();
        let field: Vec<_> = norms.iter().map(|c| (c.alpha, c.field_strength())).collect();
        (
            loglog_slope(&lin).unwrap(),
            loglog_slope(&quad).unwrap(),
            loglog_slope(&field).unwrap(),
        )
    }

    #[test]
    fn scaling_exponents() {
        let (lin, quad, field) = slopes(0.5);
        assert!((lin - 0.75).abs() < 1e-6);
        assert!((quad - 0.75).abs() < 1e-6);
        assert!(field.abs() < 1e-6, "δ − 1/2 = 0 at δ = 1/2");
        let (_, _, field0) = slopes(0.0);
        assert!((field0 + 0.5).abs() < 1e-6);
    }

    #[test]
    fn unit_beta_moments() {
        // At β = 1: ∫₀^∞ ϱ̂ = √(π/2) ρ(0).
        let p = SmearingProfile::bump(1.0);
        let c = coupling_norms(&p, 0.999_999_999, 1.0 - 1e-9).unwrap();
        let want = 4.0 * PI * p.rho(0.0) * (PI / 2.0).sqrt();
        assert!((c.norm_g_over_sqrt_omega.powi(2) / want - 1.0).abs() < 1e-7);
    }

    #[test]
    fn fit_rejects_degenerate_input() {
        assert!(loglog_slope(&[(1.0, 2.0)]).is_err());
        assert!(loglog_slope(&[(1.0, 2.0), (1.0, 3.0)]).is_err());
    }

    #[test]
    fn domain() {
        let p = SmearingProfile::default();
        assert!(coupling_norms(&p, 1.0, 0.0).is_err());
        assert!(coupling_norms(&p, 0.5, 1.0).is_err());
    }
}
