//! Self-energy constant a₀ of the dressed electron from the two-photon
//! resolvent integral
//!
//! ```text
//! 2a₀ = ∫dk₁dk₂ ϱ̂(k₁)ϱ̂(k₂) (4|k₁||k₂|)⁻¹ (4π)² Tr(Q(k₁)Q(k₂)) / D(k₁, k₂)
//! ```
//!
//! with Tr(Q₁Q₂) = 1 + (k̂₁·k̂₂)². Rotational symmetry reduces the 6D integral
//! to (r₁, r₂, c = k̂₁·k̂₂) with measure 8π² r₁² r₂².

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::profile::SmearingProfile;
use crate::quadrature::{Adaptive, GaussLegendre, Tolerance};

/// Two-photon energy in the denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TwoPhotonExponent {
    /// (k₁+k₂)²/2 + |k₁| + |k₂|: the resolvent of P_f²/2 + H_f. Canonical.
    Resolvent,
    /// ((k₁+k₂)² + |k₁| + |k₂|)/2, the alternative placement of the ½.
    HalvedField,
}

impl TwoPhotonExponent {
    /// D from |k₁+k₂|² and |k₁| + |k₂|.
    pub fn energy(self, total_sq: f64, field: f64) -> f64 {
        match self {
            Self::Resolvent => 0.5 * total_sq + field,
            Self::HalvedField => 0.5 * (total_sq + field),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Resolvent => "resolvent (k1+k2)^2/2+|k1|+|k2|",
            Self::HalvedField => "halved ((k1+k2)^2+|k1|+|k2|)/2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct A0Result {
    pub value: f64,
    pub error: f64,
    pub profile: String,
    pub exponent: TwoPhotonExponent,
}

/// Settings of the reduced quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct A0Quadrature {
    pub angular_nodes: usize,
    pub rel_tol: f64,
    pub budget: usize,
}

impl Default for A0Quadrature {
    fn default() -> Self {
        Self { angular_nodes: 64, rel_tol: 1e-10, budget: 2_000_000 }
    }
}

/// Radial breakpoints adapted to the profile: dense where ϱ̂ lives.
fn radial_breaks(profile: &SmearingProfile) -> Vec<f64> {
    let upper = profile.rho_hat_cutoff(1e-17);
    let s = 1.0 / profile.scale();
    let mut b = vec![0.0];
    b.extend([0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0].iter().map(|x| x * s).filter(|&x| x < upper));
    b.push(upper);
    b
}

/// 2a₀ as a reduced integral with an arbitrary denominator D(r₁, r₂, c).
pub fn reduced_integral<D>(profile: &SmearingProfile, q: &A0Quadrature, denominator: D) -> Result<(f64, f64)>
where
    D: Fn(f64, f64, f64) -> f64,
{
    let angular = GaussLegendre::new(q.angular_nodes);
    let breaks = radial_breaks(profile);
    let adaptive = Adaptive::default();
    let inner_tol = Tolerance::new(0.0, q.rel_tol * 0.1);
    let mut failure = None;
    let outer = adaptive.integrate_intervals(
        |r1| {
            let w1 = profile.rho_hat(r1);
            if w1 == 0.0 || r1 == 0.0 {
                return 0.0;
            }
            let inner = adaptive.integrate_intervals(
                |r2| {
                    let w2 = profile.rho_hat(r2);
                    if w2 == 0.0 || r2 == 0.0 {
                        return 0.0;
                    }
                    let ang = angular.integrate(|c| (1.0 + c * c) / denominator(r1, r2, c), -1.0, 1.0);
                    w2 * r2 * ang
                },
                &breaks,
                inner_tol,
                q.budget,
            );
            match inner {
                Ok(e) => w1 * r1 * e.value,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            }
        },
        &breaks,
        Tolerance::new(0.0, q.rel_tol),
        q.budget,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let outer = outer?;
    // (4π)² · 8π² · r₁²r₂²/(4r₁r₂)
    let pre = 16.0 * PI * PI * 8.0 * PI * PI / 4.0;
    Ok((pre * outer.value, pre * outer.error))
}

pub fn a0_with(profile: &SmearingProfile, exponent: TwoPhotonExponent, q: &A0Quadrature) -> Result<A0Result> {
    let (two_a0, err) = reduced_integral(profile, q, |r1, r2, c| {
        exponent.energy(r1 * r1 + r2 * r2 + 2.0 * r1 * r2 * c, r1 + r2)
    })?;
    let value = 0.5 * two_a0;
    if !(value > 0.0) {
        return Err(Error::Numeric("a0"));
    }
    Ok(A0Result { value, error: 0.5 * err, profile: profile.name().to_owned(), exponent })
}

/// a₀ with the canonical resolvent exponent.
pub fn a0(profile: &SmearingProfile, q: &A0Quadrature) -> Result<A0Result> {
    a0_with(profile, TwoPhotonExponent::Resolvent, q)
}

/// a₀ for the coupling cut off at α^{2−δ}: in the rescaled action the
/// profile is stretched by α^{−δ}. The variance rate 2a₀^{(δ)}τ vanishes as α → 0 when δ > 0.
pub fn a0_delta_variant(profile: &SmearingProfile, alpha: f64, delta: f64, q: &A0Quadrature) -> Result<A0Result> {
    if !(alpha > 0.0 && alpha < 1.0) || !(0.0..1.0).contains(&delta) {
        return Err(Error::Domain(format!("need α ∈ (0,1), δ ∈ [0,1); got {alpha}, {delta}")));
    }
    a0(&profile.rescaled(alpha.powf(-delta)), q)
}

/// Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
}

/// Inverse-CDF sampler for the radial density ∝ r ϱ̂(r), piecewise constant on
/// a fine grid; returns (r, r ϱ̂(r)/q(r)) so the estimator stays unbiased.
struct RadialSampler<'a> {
    profile: &'a SmearingProfile,
    edges: Vec<f64>,
    cdf: Vec<f64>,
    mass: Vec<f64>,
    total: f64,
}

impl<'a> RadialSampler<'a> {
    fn new(profile: &'a SmearingProfile, cells: usize) -> Self {
        let upper = profile.rho_hat_cutoff(1e-17);
        let gl = GaussLegendre::new(8);
        let edges: Vec<f64> = (0..=cells).map(|i| upper * i as f64 / cells as f64).collect();
        let mass: Vec<f64> = edges
            .windows(2)
            .map(|w| gl.integrate(|r| r * profile.rho_hat(r), w[0], w[1]).max(0.0))
            .collect();
        let mut cdf = Vec::with_capacity(cells);
        let mut acc = 0.0;
        for m in &mass {
            acc += m;
            cdf.push(acc);
        }
        Self { profile, edges, cdf, mass, total: acc }
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> (f64, f64) {
        let target = rng.random::<f64>() * self.total;
        let i = self.cdf.partition_point(|&c| c <= target).min(self.mass.len() - 1);
        let (a, b) = (self.edges[i], self.edges[i + 1]);
        let r = a + (b - a) * rng.random::<f64>();
        let density = self.mass[i] / self.total / (b - a);
        (r, r * self.profile.rho_hat(r) / density)
    }
}

fn unit_vector<R: Rng>(rng: &mut R) -> Vector3<f64> {
    let z: f64 = 2.0 * rng.random::<f64>() - 1.0;
    let phi = 2.0 * PI * rng.random::<f64>();
    let s = (1.0 - z * z).max(0.0).sqrt();
    Vector3::new(s * phi.cos(), s * phi.sin(), z)
}

fn projector(k: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::identity() - k * k.transpose()
}

const CHUNK: usize = 50_000;

/// Direct Monte Carlo over the unreduced 6D integral for 2a₀; the estimate
/// returned is for a₀. Chunk c draws from ChaCha stream c of `seed`, so the
/// result does not depend on the number of worker threads.
pub fn a0_monte_carlo(
    profile: &SmearingProfile,
    exponent: TwoPhotonExponent,
    samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    if samples < 2 {
        return Err(Error::Config("Monte Carlo needs at least two samples".into()));
    }
    let sampler = RadialSampler::new(profile, 8192);
    let chunks = samples.div_ceil(CHUNK);
    // Each k is drawn from p(k) = r ϱ̂(r) q-weighted / (4π r²) on its shell.
    let pre = (4.0 * PI).powi(4) / 4.0 * 0.5;
    let sums: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let n = CHUNK.min(samples - c * CHUNK);
            let (mut s1, mut s2) = (0.0, 0.0);
            for _ in 0..n {
                let (r1, w1) = sampler.sample(&mut rng);
                let (r2, w2) = sampler.sample(&mut rng);
                let k1 = unit_vector(&mut rng) * r1;
                let k2 = unit_vector(&mut rng) * r2;
                let trace = (projector(&k1.normalize()) * projector(&k2.normalize())).trace();
                let d = exponent.energy((k1 + k2).norm_squared(), r1 + r2);
                let x = pre * w1 * w2 * trace / d;
                s1 += x;
                s2 += x * x;
            }
            (s1, s2)
        })
        .collect();
    let (s1, s2) = sums.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let n = samples as f64;
    let mean = s1 / n;
    let var = (s2 / n - mean * mean).max(0.0) * n / (n - 1.0);
    let out = McEstimate { mean, stderr: (var / n).sqrt(), samples };
    if !out.mean.is_finite() {
        return Err(Error::Numeric("a0 Monte Carlo"));
    }
    Ok(out)
}
