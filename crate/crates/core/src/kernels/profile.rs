//! Radial charge distributions φ and the transforms derived from them.
//!
//! Fourier convention, used everywhere in the crate:
//!
//! ```text
//! φ̂(k) = (2π)^{−3/2} ∫ φ(x) e^{−ik·x} d³x,        φ̂(0) = (2π)^{−3/2}
//! ϱ̂(|k|) = |φ̂(k)|²,  extended evenly to the real line
//! ρ(v) = (2π)^{−1/2} ∫ ϱ̂(w) e^{ivw} dw = (2π)^{−3/2} ∫_{|v|}^∞ r σ(r) dr
//! σ(|x|) = (φ ∗ φ)(x)
//! ```
//!
//! so that ∫ρ = (2π)^{−5/2} and 4π ∫ ϱ̂(αk) |k|^{−2} e^{−ik·x} dk is the
//! Coulomb potential of the density σ scaled to width α.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unit-radius bump φ(r) = (315/64π)(1 − r²)³ on r ≤ 1: coefficient of r^j in π·σ(r), r ≤ 2.
const BUMP_SIGMA: [f64; 16] = [
    315.0 / 143.0,
    0.0,
    -2835.0 / 572.0,
    0.0,
    945.0 / 176.0,
    0.0,
    -315.0 / 64.0,
    2835.0 / 1024.0,
    0.0,
    -315.0 / 1024.0,
    0.0,
    2835.0 / 90112.0,
    0.0,
    -4725.0 / 2342912.0,
    0.0,
    2205.0 / 37486592.0,
];

pub(crate) fn bump_sigma_coefficients() -> [f64; 16] {
    BUMP_SIGMA
}

const BUMP_NORM: f64 = 315.0 / (64.0 * PI);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileFamily {
    /// φ ∝ (1 − (r/R_φ)²)³ on r ≤ R_φ. Compact support, C².
    Bump,
    /// φ ∝ exp(−r²/2w²). Not compactly supported; unsuitable wherever the
    /// delta terms of the radial kernels must drop out.
    Gaussian,
}

/// Profile definition as read from configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileSpec {
    pub name: String,
    pub family: ProfileFamily,
    /// R_φ for the bump, w for the Gaussian.
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmearingProfile {
    name: String,
    family: ProfileFamily,
    scale: f64,
    /// Coefficients of P(r) = ∫₀^r s σ₁(s) ds for the unit bump.
    bump_moment: [f64; 18],
}

impl SmearingProfile {
    pub fn new(spec: &ProfileSpec) -> Result<Self> {
        if !(spec.scale > 0.0 && spec.scale.is_finite()) {
            return Err(Error::Config(format!(
                "profile '{}' needs a positive scale, got {}",
                spec.name, spec.scale
            )));
        }
        let mut bump_moment = [0.0; 18];
        for (j, c) in BUMP_SIGMA.iter().enumerate() {
            bump_moment[j + 2] = c / PI / (j as f64 + 2.0);
        }
        Ok(Self {
            name: spec.name.clone(),
            family: spec.family,
            scale: spec.scale,
            bump_moment,
        })
    }

    pub fn bump(radius: f64) -> Self {
        Self::new(&ProfileSpec {
            name: format!("bump-{radius}"),
            family: ProfileFamily::Bump,
            scale: radius,
        })
        .expect("positive radius")
    }

    pub fn gaussian(width: f64) -> Self {
        Self::new(&ProfileSpec {
            name: format!("gaussian-{width}"),
            family: ProfileFamily::Gaussian,
            scale: width,
        })
        .expect("positive width")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn family(&self) -> ProfileFamily {
        self.family
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn spec(&self) -> ProfileSpec {
        ProfileSpec {
            name: self.name.clone(),
            family: self.family,
            scale: self.scale,
        }
    }

    /// Same family with the length scale multiplied by `factor`, i.e. φ̂(k) → φ̂(factor·k).
    pub fn rescaled(&self, factor: f64) -> Self {
        let mut p = self.clone();
        p.scale *= factor;
        p.name = format!("{}×{factor}", self.name);
        p
    }

    /// R_φ for compactly supported profiles.
    pub fn support_radius(&self) -> Option<f64> {
        match self.family {
            ProfileFamily::Bump => Some(self.scale),
            ProfileFamily::Gaussian => None,
        }
    }

    pub fn is_compact(&self) -> bool {
        self.support_radius().is_some()
    }

    /// |k| beyond which ϱ̂ is below `rel` times ϱ̂(0).
    pub fn rho_hat_cutoff(&self, rel: f64) -> f64 {
        match self.family {
            // Envelope of ϱ̂(k)/ϱ̂(0) is (315·30/k⁶)² for the unit bump.
            ProfileFamily::Bump => (9450.0f64.powi(2) / rel).powf(1.0 / 12.0) / self.scale,
            ProfileFamily::Gaussian => (-rel.ln()).sqrt() / self.scale,
        }
    }

    pub fn phi_rad(&self, r: f64) -> f64 {
        let a = self.scale;
        match self.family {
            ProfileFamily::Bump => {
                let x = r / a;
                if x >= 1.0 {
                    0.0
                } else {
                    BUMP_NORM * (1.0 - x * x).powi(3) / a.powi(3)
                }
            }
            ProfileFamily::Gaussian => {
                (2.0 * PI * a * a).powf(-1.5) * (-r * r / (2.0 * a * a)).exp()
            }
        }
    }

    /// φ̂ as a function of |k|.
    pub fn phi_hat(&self, k: f64) -> f64 {
        let k = k.abs();
        let pre = (2.0 * PI).powf(-1.5);
        match self.family {
            ProfileFamily::Bump => pre * (315.0 / 16.0) * bump_sine_moment(k * self.scale),
            ProfileFamily::Gaussian => pre * (-0.5 * (self.scale * k).powi(2)).exp(),
        }
    }

    /// ϱ̂(k) = φ̂(k)², even in k.
    pub fn rho_hat(&self, k: f64) -> f64 {
        let p = self.phi_hat(k);
        p * p
    }

    /// σ = φ ∗ φ as a function of |x|.
    pub fn sigma(&self, r: f64) -> f64 {
        let a = self.scale;
        match self.family {
            ProfileFamily::Bump => {
                let x = r.abs() / a;
                if x >= 2.0 {
                    0.0
                } else {
                    horner(&BUMP_SIGMA, x) / PI / a.powi(3)
                }
            }
            ProfileFamily::Gaussian => {
                (4.0 * PI * a * a).powf(-1.5) * (-r * r / (4.0 * a * a)).exp()
            }
        }
    }

    /// ρ(v), even in v.
    pub fn rho(&self, v: f64) -> f64 {
        let a = self.scale;
        let pre = (2.0 * PI).powf(-1.5);
        match self.family {
            ProfileFamily::Bump => {
                let x = v.abs() / a;
                if x >= 2.0 {
                    0.0
                } else {
                    pre * (horner(&self.bump_moment, 2.0) - horner(&self.bump_moment, x)) / a
                }
            }
            ProfileFamily::Gaussian => pre * 2.0 * a * a * self.sigma(v),
        }
    }

    /// ρ′(v) = −(2π)^{−3/2} v σ(|v|).
    pub fn rho_prime(&self, v: f64) -> f64 {
        -(2.0 * PI).powf(-1.5) * v * self.sigma(v)
    }

    /// Half-width of the support of ρ (2R_φ), or a point past which ρ is
    /// negligible for the Gaussian.
    pub fn rho_half_width(&self) -> f64 {
        match self.family {
            ProfileFamily::Bump => 2.0 * self.scale,
            ProfileFamily::Gaussian => 2.0 * self.scale * 40f64.sqrt(),
        }
    }
}

impl Default for SmearingProfile {
    fn default() -> Self {
        let mut p = Self::bump(1.0);
        p.name = "default".into();
        p
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// J(k)/k with J(k) = ∫₀¹ r (1 − r²)³ sin(kr) dr.
fn bump_sine_moment(k: f64) -> f64 {
    if k < 4.0 {
        // Σ (−1)ⁿ k²ⁿ/(2n+1)! · 48/((2n+3)(2n+5)(2n+7)(2n+9))
        let k2 = k * k;
        let mut term = 1.0;
        let mut sum = 0.0;
        for n in 0..40 {
            let m = 2.0 * n as f64;
            if n > 0 {
                term *= -k2 / ((m) * (m + 1.0));
            }
            let c = 48.0 / ((m + 3.0) * (m + 5.0) * (m + 7.0) * (m + 9.0));
            sum += term * c;
            if term.abs() < 1e-20 {
                break;
            }
        }
        sum
    } else {
        let (s, c) = k.sin_cos();
        let k2 = k * k;
        let k4 = k2 * k2;
        let j = (480.0 / (k4 * k) - 5040.0 / (k4 * k2 * k)) * c
            + (48.0 / k4 - 2160.0 / (k4 * k2) + 5040.0 / (k4 * k4)) * s;
        j / k
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::GaussLegendre;

    #[test]
    fn phi_hat_at_origin() {
        for p in [SmearingProfile::bump(1.0), SmearingProfile::bump(0.3), SmearingProfile::gaussian(0.7)] {
            assert!((p.phi_hat(0.0) - (2.0 * PI).powf(-1.5)).abs() < 1e-15);
        }
    }

    #[test]
    fn bump_transform_branches_agree_with_direct_quadrature() {
        let p = SmearingProfile::bump(1.0);
        let gl = GaussLegendre::new(64);
        for &k in &[0.0, 0.5, 3.9, 4.0, 4.1, 7.3, 25.0, 80.0] {
            // (2π)^{-3/2} 4π ∫ φ r² sinc(kr)
            let direct = (2.0 * PI).powf(-1.5)
                * 4.0
                * PI
                * gl.integrate_composite(
                    |r| {
                        let sinc = if k * r == 0.0 { 1.0 } else { (k * r).sin() / (k * r) };
                        p.phi_rad(r) * r * r * sinc
                    },
                    0.0,
                    1.0,
                    8,
                );
            assert!((p.phi_hat(k) - direct).abs() < 1e-15 + 1e-11 * direct.abs(), "k={k}");
        }
    }

    #[test]
    fn normalizations() {
        let gl = GaussLegendre::new(40);
        for p in [SmearingProfile::bump(1.3), SmearingProfile::gaussian(0.5)] {
            let upper = p.support_radius().unwrap_or(10.0 * p.scale());
            let phi_norm = gl.integrate_composite(|r| 4.0 * PI * r * r * p.phi_rad(r), 0.0, upper, 8);
            assert!((phi_norm - 1.0).abs() < 1e-12, "{phi_norm}");
            let sigma_norm =
                gl.integrate_composite(|r| 4.0 * PI * r * r * p.sigma(r), 0.0, 2.0 * upper, 8);
            assert!((sigma_norm - 1.0).abs() < 1e-12, "{sigma_norm}");
            let w = p.rho_half_width();
            let rho_int = gl.integrate_composite(|v| p.rho(v), -w, w, 16);
            let want = (2.0 * PI).powf(-2.5);
            assert!((rho_int / want - 1.0).abs() < 1e-10, "{rho_int} vs {want}");
        }
    }

    #[test]
    fn sigma_is_the_self_convolution() {
        // σ(r) = (2π/r) ∫ s φ(s) ∫_{|r−s|}^{r+s} t φ(t) dt ds
        let p = SmearingProfile::bump(1.0);
        let gl = GaussLegendre::new(48);
        for &r in &[0.2, 0.7, 1.0, 1.5, 1.9] {
            let direct = 2.0 * PI / r
                * gl.integrate_composite(
                    |s| {
                        let lo = (r - s).abs();
                        let hi = (r + s).min(1.0);
                        if hi <= lo {
                            return 0.0;
                        }
                        s * p.phi_rad(s) * gl.integrate(|t| t * p.phi_rad(t), lo, hi)
                    },
                    0.0,
                    1.0,
                    32,
                );
            assert!((p.sigma(r) - direct).abs() < 1e-9 * p.sigma(0.0), "r={r}");
        }
    }

    #[test]
    fn rho_matches_fourier_integral_of_rho_hat() {
        for p in [SmearingProfile::bump(1.0), SmearingProfile::gaussian(0.6)] {
            let gl = GaussLegendre::new(32);
            let kmax = p.rho_hat_cutoff(1e-18);
            for &v in &[0.0, 0.4, 1.1, 1.9, 2.5] {
                let direct = (2.0 / PI).sqrt()
                    * gl.integrate_composite(|w| p.rho_hat(w) * (v * w).cos(), 0.0, kmax, 400);
                assert!((p.rho(v) - direct).abs() < 1e-12, "v={v}: {} vs {direct}", p.rho(v));
            }
        }
    }

    #[test]
    fn rho_derivative_by_finite_differences() {
        let p = SmearingProfile::bump(1.0);
        let h = 1e-5;
        for &v in &[-1.5, -0.3, 0.5, 1.2] {
            let fd = (p.rho(v + h) - p.rho(v - h)) / (2.0 * h);
            assert!((fd - p.rho_prime(v)).abs() < 1e-9, "v={v}");
        }
        assert_eq!(p.rho(2.0), 0.0);
        assert!(p.rho(1.999).abs() < 1e-12);
    }

    #[test]
    fn rejects_nonpositive_scale() {
        let spec = ProfileSpec {
            name: "bad".into(),
            family: ProfileFamily::Bump,
            scale: 0.0,
        };
        assert!(SmearingProfile::new(&spec).is_err());
    }
}
