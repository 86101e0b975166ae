//! Photon propagator W₁(x, t) = ∫dk ϱ̂(k) (2|k|)⁻¹ e^{ik·x} e^{−|k|t} Q(k).
//!
//! After the angular integral W₁ = W⊥ (1 − x̂x̂ᵀ) + W∥ x̂x̂ᵀ with
//! W⊥ = π∫₀^∞ r ϱ̂(r) e^{−rt} b1(r|x|) dr and W∥ the same with b3.

use std::f64::consts::PI;

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::kernels::angular::{g_profiles, TransverseMatrix};
use crate::kernels::profile::SmearingProfile;
use crate::quadrature::GaussLegendre;

/// Transverse and longitudinal scalar parts of W₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorComponents {
    pub perp: f64,
    pub par: f64,
}

/// Panelled radial quadrature: panels never exceed half an oscillation
/// period of b(r|x|), the decay length 1/t, or a fraction of the profile scale.
pub struct RadialPropagator<'a> {
    profile: &'a SmearingProfile,
    rule: GaussLegendre,
    cutoff: f64,
}

impl<'a> RadialPropagator<'a> {
    /// `rel` bounds the neglected tail ϱ̂(k)/ϱ̂(0).
    pub fn new(profile: &'a SmearingProfile, rel: f64) -> Self {
        Self {
            profile,
            rule: GaussLegendre::new(16),
            cutoff: profile.rho_hat_cutoff(rel),
        }
    }

    pub fn components(&self, x_mag: f64, t: f64) -> Result<PropagatorComponents> {
        if !(t >= 0.0) || !t.is_finite() || !(x_mag >= 0.0) || !x_mag.is_finite() {
            return Err(Error::Domain(format!("propagator needs |x| ≥ 0, t ≥ 0; got {x_mag}, {t}")));
        }
        let mut upper = self.cutoff;
        let mut width = 0.5 / self.profile.scale();
        if t > 0.0 {
            upper = upper.min(46.0 / t);
            width = width.min(2.0 / t);
        }
        if x_mag > 0.0 {
            width = width.min(PI / x_mag);
        }
        let panels = ((upper / width).ceil() as usize).max(1);
        let (mut perp, mut par) = (0.0, 0.0);
        let h = upper / panels as f64;
        for p in 0..panels {
            for (r, w) in self.rule.mapped(p as f64 * h, (p + 1) as f64 * h) {
                let base = w * r * self.profile.rho_hat(r) * (-r * t).exp();
                let (b1, b3) = g_profiles(r * x_mag);
                perp += base * b1;
                par += base * b3;
            }
        }
        if !perp.is_finite() || !par.is_finite() {
            return Err(Error::Numeric("photon propagator"));
        }
        Ok(PropagatorComponents { perp: PI * perp, par: PI * par })
    }
}

impl RadialPropagator<'_> {
    /// Components at one |x| for many times, sharing the radial nodes. The
    /// panels are sized for the smallest time in `times`.
    pub fn components_at_times(&self, x_mag: f64, times: &[f64]) -> Result<Vec<PropagatorComponents>> {
        if times.iter().any(|&t| !(t >= 0.0) || !t.is_finite()) || !(x_mag >= 0.0) {
            return Err(Error::Domain("propagator needs |x| ≥ 0 and t ≥ 0".into()));
        }
        let t_min = times.iter().copied().fold(f64::INFINITY, f64::min);
        let t_max = times.iter().copied().fold(0.0, f64::max);
        let mut upper = self.cutoff;
        if t_min > 0.0 {
            upper = upper.min(46.0 / t_min);
        }
        // Panels narrow enough for e^{−r t_max} and for the oscillation of b(r|x|).
        let mut width = (0.25 / self.profile.scale()).min(if t_max > 0.0 { 6.0 / t_max } else { f64::INFINITY });
        if x_mag > 0.0 {
            width = width.min(PI / x_mag);
        }
        let panels = ((upper / width).ceil() as usize).max(1);
        let h = upper / panels as f64;
        let mut out = vec![PropagatorComponents { perp: 0.0, par: 0.0 }; times.len()];
        for p in 0..panels {
            for (r, w) in self.rule.mapped(p as f64 * h, (p + 1) as f64 * h) {
                let base = w * r * self.profile.rho_hat(r);
                let (b1, b3) = g_profiles(r * x_mag);
                for (o, &t) in out.iter_mut().zip(times) {
                    let e = base * (-r * t).exp();
                    o.perp += e * b1;
                    o.par += e * b3;
                }
            }
        }
        for o in &mut out {
            o.perp *= PI;
            o.par *= PI;
            if !o.perp.is_finite() || !o.par.is_finite() {
                return Err(Error::Numeric("photon propagator"));
            }
        }
        Ok(out)
    }
}

pub fn propagator_components(profile: &SmearingProfile, x_mag: f64, t: f64) -> Result<PropagatorComponents> {
    RadialPropagator::new(profile, 1e-18).components(x_mag, t)
}

/// W₁(x, t) as a 3×3 matrix; x = 0 uses the isotropic limit.
pub fn photon_propagator(profile: &SmearingProfile, x: &Vector3<f64>, t: f64) -> Result<TransverseMatrix> {
    let r = x.norm();
    let c = propagator_components(profile, r, t)?;
    if r == 0.0 {
        return Ok(TransverseMatrix::isotropic(c.perp));
    }
    Ok(TransverseMatrix::axial(&(x / r), c.perp, c.par))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_is_isotropic_radial_moment() {
        let p = SmearingProfile::bump(1.0);
        let t = 0.3;
        let w = photon_propagator(&p, &Vector3::zeros(), t).unwrap();
        let moment = GaussLegendre::new(32)
            .integrate_composite(|r| r * p.rho_hat(r) * (-r * t).exp(), 0.0, 100.0, 200);
        let want = TransverseMatrix::isotropic(4.0 * PI / 3.0 * moment);
        assert!(w.max_abs_diff(&want) < 1e-14 * moment);
    }

    #[test]
    fn even_in_x() {
        let p = SmearingProfile::bump(1.0);
        let x = Vector3::new(0.3, -1.2, 0.5);
        let a = photon_propagator(&p, &x, 0.2).unwrap();
        let b = photon_propagator(&p, &(-x), 0.2).unwrap();
        assert!(a.max_abs_diff(&b) == 0.0);
    }

    #[test]
    fn continuous_at_origin() {
        let p = SmearingProfile::gaussian(0.7);
        let a = propagator_components(&p, 0.0, 0.1).unwrap();
        let b = propagator_components(&p, 1e-7, 0.1).unwrap();
        assert!((a.perp - b.perp).abs() < 1e-10 && (a.par - b.par).abs() < 1e-10);
        assert!((a.perp - a.par).abs() < 1e-15);
    }

    #[test]
    fn negative_time_rejected() {
        let p = SmearingProfile::bump(1.0);
        assert!(propagator_components(&p, 1.0, -0.1).is_err());
    }
}
