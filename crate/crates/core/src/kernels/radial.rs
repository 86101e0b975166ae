//! One-dimensional Fourier kernels c1, c2, c3 of the transverse two-point
//! function, split into an exponential regular part and point masses.
//!
//! ```text
//! c1 = (4a)⁻¹ √(2π) (−2δ′(v+a) − u² sgn(v+a) e^{−|u||v+a|} + 2δ′(v−a) + u² sgn(v−a) e^{−|u||v−a|})
//! c2 = (4a³)⁻¹ √(2π) (sgn(v+a) e^{−|u||v+a|} − sgn(v−a) e^{−|u||v−a|})
//! c3 = (4a²)⁻¹ √(2π) (2δ(v+a) − |u| e^{−|u||v+a|} + 2δ(v−a) − |u| e^{−|u||v−a|})
//! ```
//!
//! with sgn(0) = +1. These are the inverse transforms (2π)^{−1/2}∫e^{ivw}g(w)dw
//! of w³(w²+u²)⁻¹ sin(aw)/a, w(w²+u²)⁻¹ sin(aw)/a³ and w²(w²+u²)⁻¹ cos(aw)/a².

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kernels::profile::SmearingProfile;
use crate::quadrature::{Adaptive, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    C1,
    C2,
    C3,
}

/// weight · δ^{(order)}(v − location).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaTerm {
    pub kernel: Kernel,
    pub location: f64,
    pub weight: f64,
    pub order: u8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialKernels {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub deltas: [DeltaTerm; 4],
}

fn sgn(t: f64) -> f64 {
    if t >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

fn check_a(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("radial kernels need a > 0, got {a}")))
    }
}

/// Regular parts (c1, c2, c3) at v.
pub fn regular_parts(v: f64, a: f64, u: f64) -> (f64, f64, f64) {
    let root = (2.0 * PI).sqrt();
    let au = u.abs();
    let (p, m) = (v + a, v - a);
    let (ep, em) = ((-au * p.abs()).exp(), (-au * m.abs()).exp());
    let c1 = root / (4.0 * a) * u * u * (sgn(m) * em - sgn(p) * ep);
    let c2 = root / (4.0 * a * a * a) * (sgn(p) * ep - sgn(m) * em);
    let c3 = -root / (4.0 * a * a) * au * (ep + em);
    (c1, c2, c3)
}

pub fn delta_terms(a: f64) -> [DeltaTerm; 4] {
    let root = (2.0 * PI).sqrt();
    let w1 = root / (4.0 * a) * 2.0;
    let w3 = root / (4.0 * a * a) * 2.0;
    [
        DeltaTerm { kernel: Kernel::C1, location: -a, weight: -w1, order: 1 },
        DeltaTerm { kernel: Kernel::C1, location: a, weight: w1, order: 1 },
        DeltaTerm { kernel: Kernel::C3, location: -a, weight: w3, order: 0 },
        DeltaTerm { kernel: Kernel::C3, location: a, weight: w3, order: 0 },
    ]
}

pub fn radial_kernels(v: f64, a: f64, u: f64) -> Result<RadialKernels> {
    check_a(a)?;
    let (c1, c2, c3) = regular_parts(v, a, u);
    Ok(RadialKernels { c1, c2, c3, deltas: delta_terms(a) })
}

/// Even test density with support [−half_width, half_width].
pub trait EvenDensity {
    fn value(&self, v: f64) -> f64;
    fn derivative(&self, v: f64) -> f64;
    fn half_width(&self) -> f64;
}

impl EvenDensity for SmearingProfile {
    fn value(&self, v: f64) -> f64 {
        self.rho(v)
    }
    fn derivative(&self, v: f64) -> f64 {
        self.rho_prime(v)
    }
    fn half_width(&self) -> f64 {
        self.rho_half_width()
    }
}

/// s⁻¹ ρ(v/s): the density stretched by s (s = α^γ).
pub struct Stretched<'a, D: ?Sized> {
    pub inner: &'a D,
    pub factor: f64,
}

impl<D: EvenDensity + ?Sized> EvenDensity for Stretched<'_, D> {
    fn value(&self, v: f64) -> f64 {
        self.inner.value(v / self.factor) / self.factor
    }
    fn derivative(&self, v: f64) -> f64 {
        self.inner.derivative(v / self.factor) / (self.factor * self.factor)
    }
    fn half_width(&self) -> f64 {
        self.inner.half_width() * self.factor
    }
}

/// ∫ρ(v) (w₁c1 + w₂c2 + w₃c3)(v; a, u) dv including the point masses
/// (∫ρδ(v−x) = ρ(x), ∫ρδ′(v−x) = −ρ′(x)).
pub fn contract<D: EvenDensity + ?Sized>(
    weights: [f64; 3],
    a: f64,
    u: f64,
    density: &D,
) -> Result<f64> {
    check_a(a)?;
    let l = density.half_width();
    let mut breaks = vec![-l, l, 0.0];
    for x in [-a, a] {
        if x.abs() < l {
            breaks.push(x);
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let regular = Adaptive::default().integrate_intervals(
        |v| {
            let (c1, c2, c3) = regular_parts(v, a, u);
            density.value(v) * (weights[0] * c1 + weights[1] * c2 + weights[2] * c3)
        },
        &breaks,
        Tolerance::new(1e-15, 1e-12),
        400_000,
    )?;
    let point: f64 = delta_terms(a)
        .iter()
        .map(|d| {
            let w = match d.kernel {
                Kernel::C1 => weights[0],
                Kernel::C2 => weights[1],
                Kernel::C3 => weights[2],
            };
            let pairing = if d.order == 0 {
                density.value(d.location)
            } else {
                -density.derivative(d.location)
            };
            w * d.weight * pairing
        })
        .sum();
    Ok(regular.value + point)
}

/// (d1, d3) for the density ρ stretched by α^γ:
/// d1 = ∫ρ_s (c1 − c2 + c3), d3 = ∫ρ_s 2(c2 − c3).
pub fn transverse_weights(
    profile: &SmearingProfile,
    a: f64,
    u: f64,
    alpha: f64,
    gamma: f64,
) -> Result<(f64, f64)> {
    let density = Stretched { inner: profile, factor: alpha.powf(gamma) };
    let d1 = contract([1.0, -1.0, 1.0], a, u, &density)?;
    let d3 = contract([0.0, 2.0, -2.0], a, u, &density)?;
    Ok((d1, d3))
}
