//! Brute-force oracles for the closed-form kernels. Each oracle evaluates the
//! pre-integration form directly and never calls the closed form it checks.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::kernels::angular::angular_transverse_integral;
use crate::kernels::coulomb::smeared_coulomb;
use crate::kernels::profile::SmearingProfile;
use crate::kernels::propagator::photon_propagator;
use crate::kernels::radial::{contract, EvenDensity};
use crate::quadrature::GaussLegendre;

/// Outcome of one family of oracle comparisons.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleCheck {
    pub name: &'static str,
    pub cases: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl OracleCheck {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

/// ∫dΩ e^{ik·a} Q(k̂) on a product rule: Gauss-Legendre in cos θ, trapezoid in φ.
pub fn sphere_quadrature(k: f64, a: &Vector3<f64>) -> Matrix3<f64> {
    let s = k * a.norm();
    let n_theta = s.ceil() as usize + 24;
    let n_phi = 2 * n_theta;
    let gl = GaussLegendre::new(n_theta);
    let mut m = Matrix3::zeros();
    for (&c, &w) in gl.nodes().iter().zip(gl.weights()) {
        let sn = (1.0 - c * c).sqrt();
        for j in 0..n_phi {
            let phi = 2.0 * PI * j as f64 / n_phi as f64;
            let khat = Vector3::new(sn * phi.cos(), sn * phi.sin(), c);
            let phase = (k * khat.dot(a)).cos();
            m += (Matrix3::identity() - khat * khat.transpose()) * (w * phase * 2.0 * PI / n_phi as f64);
        }
    }
    m
}

pub fn check_angular(cases: usize, seed: u64) -> Result<OracleCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..cases {
        let a = Vector3::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let k = rng.random_range(0.05..8.0);
        let closed = angular_transverse_integral(k, &a)?;
        worst = worst.max((closed.0 - sphere_quadrature(k, &a)).abs().max());
    }
    Ok(OracleCheck { name: "angular integral vs sphere quadrature", cases, max_deviation: worst, tolerance: 1e-8 })
}

/// ρ_test(v) = (1 − v²/L²)⁸ on |v| < L.
pub struct PolynomialDensity {
    pub half_width: f64,
}

impl EvenDensity for PolynomialDensity {
    fn value(&self, v: f64) -> f64 {
        let x = v / self.half_width;
        if x.abs() >= 1.0 {
            0.0
        } else {
            (1.0 - x * x).powi(8)
        }
    }
    fn derivative(&self, v: f64) -> f64 {
        let x = v / self.half_width;
        if x.abs() >= 1.0 {
            0.0
        } else {
            -16.0 * x * (1.0 - x * x).powi(7) / self.half_width
        }
    }
    fn half_width(&self) -> f64 {
        self.half_width
    }
}

/// (2π)^{−1/2} ∫ ρ(v) e^{ivw} dv for an even density, by panelled quadrature.
fn unitary_transform(d: &PolynomialDensity, w: f64, gl: &GaussLegendre) -> f64 {
    let l = d.half_width;
    let panels = (l * w.abs() / PI).ceil() as usize + 4;
    2.0 / (2.0 * PI).sqrt() * gl.integrate_composite(|v| d.value(v) * (v * w).cos(), 0.0, l, panels)
}

/// ∫ ρ̌(w) g_j(w) dw for the symbols of c1, c2, c3:
/// w³(w²+u²)⁻¹ sin(aw)/a, w(w²+u²)⁻¹ sin(aw)/a³, w²(w²+u²)⁻¹ cos(aw)/a².
pub fn plancherel_oracle(d: &PolynomialDensity, a: f64, u: f64) -> [f64; 3] {
    let gl = GaussLegendre::new(16);
    let upper = 400.0 / d.half_width;
    let width = (PI / a).min(PI / d.half_width) / 2.0;
    // Geometric panels resolve the w ~ u feature of (w² + u²)⁻¹ near the origin.
    let mut edges = vec![0.0];
    let mut e = u / 4.0;
    while e > 0.0 && e < width {
        edges.push(e);
        e *= 2.0;
    }
    let panels = ((upper - width) / width).ceil() as usize;
    let h = (upper - width) / panels as f64;
    edges.extend((0..=panels).map(|p| width + p as f64 * h));
    let mut out = [0.0; 3];
    for pair in edges.windows(2) {
        for (w, wt) in gl.mapped(pair[0], pair[1]) {
            let den = w * w + u * u;
            if den == 0.0 {
                continue;
            }
            let f = 2.0 * wt * unitary_transform(d, w, &gl);
            let (s, c) = (a * w).sin_cos();
            out[0] += f * w.powi(3) / den * s / a;
            out[1] += f * w / den * s / a.powi(3);
            out[2] += f * w * w / den * c / (a * a);
        }
    }
    out
}

pub fn check_plancherel(seed: u64) -> Result<OracleCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = PolynomialDensity { half_width: 1.5 };
    let mut worst = 0.0f64;
    let mut cases = 0;
    for active in [false, true] {
        let n = if active { 4 } else { 12 };
        for _ in 0..n {
            let a = if active { rng.random_range(0.2..1.3) } else { rng.random_range(1.6..4.0) };
            let u = rng.random_range(0.0..3.0);
            let oracle = plancherel_oracle(&d, a, u);
            for (j, rhs) in oracle.iter().enumerate() {
                let mut weights = [0.0; 3];
                weights[j] = 1.0;
                let lhs = contract(weights, a, u, &d)?;
                worst = worst.max((lhs - rhs).abs() / rhs.abs().max(1.0));
            }
            cases += 1;
        }
    }
    Ok(OracleCheck { name: "c-kernel Plancherel identities", cases, max_deviation: worst, tolerance: 1e-6 })
}

/// W₁(x, t) from a spherical product rule in k-space, with the plane wave and
/// transverse projector evaluated directly.
pub fn propagator_brute_force(profile: &SmearingProfile, x: &Vector3<f64>, t: f64) -> Matrix3<f64> {
    let mut upper = profile.rho_hat_cutoff(1e-13);
    if t > 0.0 {
        upper = upper.min(46.0 / t);
    }
    let width = (0.5 / profile.scale()).min(PI / x.norm().max(1e-300));
    let panels = (upper / width).ceil() as usize;
    let radial = GaussLegendre::new(16);
    let mut m = Matrix3::zeros();
    let h = upper / panels as f64;
    for p in 0..panels {
        for (r, wr) in radial.mapped(p as f64 * h, (p + 1) as f64 * h) {
            let radial_weight = wr * r * r * profile.rho_hat(r) / (2.0 * r) * (-r * t).exp();
            m += sphere_quadrature(r, x) * radial_weight;
        }
    }
    m
}

pub fn check_propagator(profile: &SmearingProfile, cases: usize, seed: u64) -> Result<OracleCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..cases {
        let x = Vector3::new(rng.random_range(-1.2..1.2), rng.random_range(-1.2..1.2), rng.random_range(-1.2..1.2));
        let t = rng.random_range(0.05..2.0);
        let closed = photon_propagator(profile, &x, t)?;
        worst = worst.max((closed.0 - propagator_brute_force(profile, &x, t)).abs().max());
    }
    Ok(OracleCheck { name: "photon propagator vs 3D k-quadrature", cases, max_deviation: worst, tolerance: 1e-7 })
}

/// V_α against 16π²∫ϱ̂(αk) sin(kx)/(kx) dk.
pub fn check_coulomb(profile: &SmearingProfile) -> Result<OracleCheck> {
    let gl = GaussLegendre::new(24);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for &alpha in &[0.2, 0.5, 1.0] {
        for &x in &[0.05, 0.3, 0.9, 1.7, 3.0] {
            let kmax = profile.rho_hat_cutoff(1e-20) / alpha;
            let half = (PI / x).min(0.5 / (alpha * profile.scale()));
            let panels = (kmax / half).ceil() as usize;
            let oracle = 16.0 * PI * PI
                * gl.integrate_composite(
                    |k| profile.rho_hat(alpha * k) * (k * x).sin() / (k * x),
                    0.0,
                    panels as f64 * half,
                    panels,
                );
            let v = smeared_coulomb(profile, alpha, x)?;
            worst = worst.max((v - oracle).abs() / v);
            cases += 1;
        }
    }
    Ok(OracleCheck { name: "smeared Coulomb real space vs k-space", cases, max_deviation: worst, tolerance: 1e-9 })
}

/// Every kernel oracle family.
pub fn run_all(profile: &SmearingProfile, seed: u64) -> Result<Vec<OracleCheck>> {
    Ok(vec![
        check_angular(20, seed)?,
        check_plancherel(seed.wrapping_add(1))?,
        check_propagator(profile, 10, seed.wrapping_add(2))?,
        check_coulomb(profile)?,
    ])
}
