//! Smeared Coulomb potentials V_α(x) = 4π ∫dk ϱ̂(αk) |k|⁻² e^{−ik·x}.
//!
//! V_α is the Newtonian potential of the radial density σ_α(x) = α⁻³σ(x/α),
//! so it is evaluated in real space by the shell theorem:
//! V(r) = (4π/r)∫₀^r σ s² ds + 4π∫_r^∞ σ s ds.

use std::f64::consts::PI;

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::kernels::profile::{ProfileFamily, SmearingProfile};
use crate::quadrature::GaussLegendre;

/// π·σ(r) coefficients of the unit bump; kept in sync with `profile`.
fn unit_bump_potential(x: f64, sigma_coeffs: &[f64]) -> f64 {
    if x >= 2.0 {
        return 1.0 / x;
    }
    // 4π∫₀^x σ s² ds and 4π∫_x^2 σ s ds with σ = π⁻¹ Σ c_j s^j
    let (mut inner, mut outer) = (0.0, 0.0);
    for (j, c) in sigma_coeffs.iter().enumerate().rev() {
        let j = j as i32;
        inner += 4.0 * c * x.powi(j + 3) / f64::from(j + 3);
        outer += 4.0 * c * (2f64.powi(j + 2) - x.powi(j + 2)) / f64::from(j + 2);
    }
    if x == 0.0 {
        outer
    } else {
        inner / x + outer
    }
}

/// V_α(|x|). Equal to 1/|x| exactly for α = 0 and outside the support of σ_α.
pub fn smeared_coulomb(profile: &SmearingProfile, alpha: f64, x_mag: f64) -> Result<f64> {
    if !(x_mag > 0.0) || !x_mag.is_finite() {
        return Err(Error::Domain(format!("|x| must be positive, got {x_mag}")));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain(format!("α must lie in [0, 1], got {alpha}")));
    }
    if alpha == 0.0 {
        return Ok(1.0 / x_mag);
    }
    let scale = alpha * profile.scale();
    Ok(match profile.family() {
        ProfileFamily::Bump => {
            let x = x_mag / scale;
            if x >= 2.0 {
                1.0 / x_mag
            } else {
                unit_bump_potential(x, &super::profile::bump_sigma_coefficients()) / scale
            }
        }
        ProfileFamily::Gaussian => {
            // σ_α is a normal density with variance 2(αw)² per axis.
            let far = 2.0 * scale * 7.0;
            if x_mag >= far {
                1.0 / x_mag
            } else {
                let sigma = |s: f64| (4.0 * PI * scale * scale).powf(-1.5) * (-s * s / (4.0 * scale * scale)).exp();
                let inner = GaussLegendre::new(32)
                    .integrate_composite(|s| 4.0 * PI * sigma(s) * s * s, 0.0, x_mag, 8);
                let outer = 4.0 * PI * sigma(x_mag) * 2.0 * scale * scale;
                inner / x_mag + outer
            }
        }
    })
}

/// Interaction of two smeared atoms at separation r:
/// −V(x₁ − r) − V(x₂ + r) + V(r) + V(r + x₂ − x₁).
pub fn pair_potential(
    profile: &SmearingProfile,
    alpha: f64,
    r: &Vector3<f64>,
    x1: &Vector3<f64>,
    x2: &Vector3<f64>,
) -> Result<f64> {
    let v = |y: Vector3<f64>| smeared_coulomb(profile, alpha, y.norm());
    Ok(-v(x1 - r)? - v(x2 + r)? + v(*r)? + v(r + x2 - x1)?)
}

/// Point-charge limit of [`pair_potential`].
pub fn coulomb_pair_potential(r: &Vector3<f64>, x1: &Vector3<f64>, x2: &Vector3<f64>) -> f64 {
    -1.0 / (x1 - r).norm() - 1.0 / (x2 + r).norm() + 1.0 / r.norm() + 1.0 / (r + x2 - x1).norm()
}
