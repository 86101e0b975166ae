//! The crossover function h_co(R), the dispersion coefficients a_VW and a_CP,
//! and the leading-order two-atom energies E_α(α^{−γ}R) for each γ regime.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::coulomb::smeared_coulomb;
use crate::kernels::profile::SmearingProfile;
use crate::quadrature::{QuadratureSettings, Tolerance};
use crate::spectral::DipoleSpectrum;

/// Relative agreement required between the two a_VW evaluations.
pub const VDW_CONSISTENCY: f64 = 1e-8;

/// a_VW evaluated in closed form and by time-domain quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VdwCoefficient {
    /// 6 Σ s_n s_m / (E_n + E_m)
    pub closed_form: f64,
    /// 6 ∫₀^∞ C(t)² dt
    pub time_domain: f64,
}

impl VdwCoefficient {
    pub fn value(&self) -> f64 {
        self.closed_form
    }
}

/// a_VW = 6∫₀^∞ C(t)² dt, cross-checked between both evaluations.
pub fn vdw_coefficient(spec: &DipoleSpectrum) -> Result<VdwCoefficient> {
    let closed_form = 6.0 * spec.correlation_square_integral();
    let q = QuadratureSettings {
        split_points: vec![1.0, 4.0, 16.0],
        tail_scale: 16.0,
        rel_tol: 1e-12,
        ..QuadratureSettings::default()
    };
    let time_domain = 6.0 * q.integrate_half_line(|t| spec.dipole_correlation(t).powi(2))?.value;
    if (closed_form - time_domain).abs() > VDW_CONSISTENCY * closed_form.abs() {
        return Err(Error::Consistency {
            what: "a_VW closed form vs time-domain quadrature",
            first: closed_form,
            second: time_domain,
        });
    }
    Ok(VdwCoefficient { closed_form, time_domain })
}

/// a_CP = (23/4π) α_hy² for a given static polarizability.
pub fn cp_from_polarizability(alpha_hy: f64) -> f64 {
    23.0 / (4.0 * PI) * alpha_hy * alpha_hy
}

pub fn cp_coefficient(spec: &DipoleSpectrum) -> f64 {
    cp_from_polarizability(spec.static_polarizability())
}

/// s⁴/8 + s³/2 + 5s²/2 + 6s + 6 with s = Ru; R⁻⁶ times this is the
/// bracket of h_co, and ∫₀^∞ e^{−s} of it equals 23.
pub fn crossover_weight(s: f64) -> f64 {
    (((s / 8.0 + 0.5) * s + 2.5) * s + 6.0) * s + 6.0
}

/// h_co(R) = π⁻¹ ∫₀^∞ f(u)² e^{−Ru} R⁻⁶ w(Ru) du for an arbitrary f.
pub fn crossover_integral<F: Fn(f64) -> f64>(f: F, r: f64, q: &QuadratureSettings) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("crossover needs R > 0, got {r}")));
    }
    // Integrate R⁶h to keep the integrand O(1) at small R.
    let est = q.integrate_half_line(|u| {
        let fu = f(u);
        let s = r * u;
        fu * fu * (-s).exp() * crossover_weight(s)
    })?;
    let target = Tolerance::new(q.abs_tol * r.powi(6), q.rel_tol);
    if est.error > target.abs.max(target.rel * est.value.abs()) {
        return Err(Error::Accuracy {
            value: est.value / (PI * r.powi(6)),
            error: est.error / (PI * r.powi(6)),
            evaluations: est.evaluations,
        });
    }
    Ok(est.value / PI / r.powi(6))
}

pub fn crossover_function(spec: &DipoleSpectrum, r: f64, q: &QuadratureSettings) -> Result<f64> {
    crossover_integral(|u| spec.reduced_polarizability(u), r, q)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossoverRow {
    pub r: f64,
    pub h: f64,
    pub h_r6: f64,
    pub h_r7: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossoverCurve {
    pub rows: Vec<CrossoverRow>,
    pub a_vw: f64,
    pub a_cp: f64,
}

impl CrossoverCurve {
    /// R* = a_CP / a_VW, where the two asymptotes a_VW R⁻⁶ and a_CP R⁻⁷ cross.
    pub fn crossover_scale(&self) -> f64 {
        self.a_cp / self.a_vw
    }
}

pub fn crossover_scan(spec: &DipoleSpectrum, r_values: &[f64], q: &QuadratureSettings) -> Result<CrossoverCurve> {
    if r_values.iter().any(|&r| !(r > 0.0 && r.is_finite())) {
        return Err(Error::Domain("crossover scan needs positive, finite R values".into()));
    }
    if r_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("crossover scan needs strictly increasing R values".into()));
    }
    let rows = r_values
        .par_iter()
        .map(|&r| {
            let h = crossover_function(spec, r, q)?;
            Ok(CrossoverRow { r, h, h_r6: h * r.powi(6), h_r7: h * r.powi(7) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CrossoverCurve {
        rows,
        a_vw: vdw_coefficient(spec)?.value(),
        a_cp: cp_coefficient(spec),
    })
}

/// Logarithmic grid of `points` values from `r_min` to `r_max` inclusive.
pub fn log_grid(r_min: f64, r_max: f64, points: usize) -> Result<Vec<f64>> {
    if points == 0 {
        return Ok(Vec::new());
    }
    if !(r_min > 0.0 && r_max >= r_min && r_max.is_finite()) {
        return Err(Error::Domain(format!("invalid R range [{r_min}, {r_max}]")));
    }
    if points == 1 {
        return Ok(vec![r_min]);
    }
    let (a, b) = (r_min.ln(), r_max.ln());
    Ok((0..points)
        .map(|i| match i {
            0 => r_min,
            _ if i == points - 1 => r_max,
            _ => (a + (b - a) * i as f64 / (points - 1) as f64).exp(),
        })
        .collect())
}

/// External data for the short-distance branches.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RegimeConstants {
    /// Helium ground-state energy (atomic units); required for γ < 1.
    pub e_he: Option<f64>,
    /// Sampled E_{2,R} as (R, E) pairs; required for γ = 1.
    pub e2r_table: Option<Vec<(f64, f64)>>,
    /// Self-energy constant a₀; required for γ ≤ 1.
    pub a0: Option<f64>,
}

impl RegimeConstants {
    pub fn validate(&self) -> Result<()> {
        if let Some(e) = self.e_he {
            if !(e < 0.0) {
                return Err(Error::Config(format!("E_he must be negative, got {e}")));
            }
        }
        if let Some(t) = &self.e2r_table {
            if t.windows(2).any(|w| !(w[1].0 > w[0].0)) || t.iter().any(|p| !(p.0 > 0.0)) {
                return Err(Error::Config("E_2R table needs strictly increasing positive R".into()));
            }
        }
        Ok(())
    }

    fn a0(&self, branch: RegimeBranch) -> Result<f64> {
        self.a0.ok_or(Error::BranchData { branch: branch.label(), missing: "a0".into() })
    }

    fn e_he(&self, branch: RegimeBranch) -> Result<f64> {
        self.e_he
            .ok_or(Error::BranchData { branch: branch.label(), missing: "E_he (helium ground-state energy)".into() })
    }

    /// E_{2,R} by linear interpolation inside the tabulated range.
    fn e2r(&self, r: f64) -> Result<f64> {
        let branch = RegimeBranch::Molecular.label();
        let table = self
            .e2r_table
            .as_ref()
            .filter(|t| !t.is_empty())
            .ok_or(Error::BranchData { branch, missing: "E_2R table".into() })?;
        let out_of_range = || Error::BranchData { branch, missing: format!("E_2R table entry covering R = {r}") };
        if table.len() == 1 {
            return if table[0].0 == r { Ok(table[0].1) } else { Err(out_of_range()) };
        }
        let i = table.partition_point(|p| p.0 < r);
        if i == 0 {
            return if table[0].0 == r { Ok(table[0].1) } else { Err(out_of_range()) };
        }
        if i == table.len() {
            return Err(out_of_range());
        }
        let ((r0, e0), (r1, e1)) = (table[i - 1], table[i]);
        Ok(e0 + (e1 - e0) * (r - r0) / (r1 - r0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegimeBranch {
    /// γ = 0: α V_α(R) + α²(E_he − 2a₀)
    Contact,
    /// 0 < γ < 1: α^{1+γ}/R + α²(E_he − 2a₀)
    Repulsive,
    /// γ = 1: α²(E_{2,R} − 2a₀)
    Molecular,
    /// 1 < γ < 2: −α^{6γ−4} a_VW R⁻⁶
    VanDerWaals,
    /// γ = 2: −α⁸ h_co(R)
    Crossover,
    /// γ > 2: −α^{7γ−6} a_CP R⁻⁷
    Retarded,
}

impl RegimeBranch {
    /// Exact comparison: γ = 1 and γ = 2 are selected only when given exactly.
    pub fn select(gamma: f64) -> Result<Self> {
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(Error::Domain(format!("γ must be a finite nonnegative number, got {gamma}")));
        }
        Ok(if gamma == 0.0 {
            Self::Contact
        } else if gamma < 1.0 {
            Self::Repulsive
        } else if gamma == 1.0 {
            Self::Molecular
        } else if gamma < 2.0 {
            Self::VanDerWaals
        } else if gamma == 2.0 {
            Self::Crossover
        } else {
            Self::Retarded
        })
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Contact => "gamma=0",
            Self::Repulsive => "0<gamma<1",
            Self::Molecular => "gamma=1",
            Self::VanDerWaals => "1<gamma<2",
            Self::Crossover => "gamma=2",
            Self::Retarded => "gamma>2",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            Self::Contact => "alpha*V_alpha(R) + alpha^2*(E_he - 2*a0)",
            Self::Repulsive => "alpha^(1+gamma)/R + alpha^2*(E_he - 2*a0)",
            Self::Molecular => "alpha^2*(E_2R - 2*a0)",
            Self::VanDerWaals => "-alpha^(6*gamma-4)*a_VW/R^6 (attractive sign), offset 2*E_1 omitted",
            Self::Crossover => "-alpha^8*h_co(R), offset 2*E_1 omitted",
            Self::Retarded => "-alpha^(7*gamma-6)*a_CP/R^7, offset 2*E_1 omitted",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeEnergy {
    pub branch: RegimeBranch,
    pub value: f64,
}

pub struct RegimeInputs<'a> {
    pub spectrum: &'a DipoleSpectrum,
    pub constants: &'a RegimeConstants,
    pub profile: &'a SmearingProfile,
    pub quadrature: &'a QuadratureSettings,
}

/// Leading-order approximation of E_α(α^{−γ}R) for the branch selected by γ;
/// for γ > 1 the self-energy offset 2E_{1,α} is omitted.
pub fn regime_energy(alpha: f64, gamma: f64, r: f64, inputs: &RegimeInputs<'_>) -> Result<RegimeEnergy> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("α must lie in (0, 1), got {alpha}")));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("R must be positive, got {r}")));
    }
    let branch = RegimeBranch::select(gamma)?;
    let consts = inputs.constants;
    consts.validate()?;
    let value = match branch {
        RegimeBranch::Contact => {
            let tail = alpha * alpha * (consts.e_he(branch)? - 2.0 * consts.a0(branch)?);
            alpha * smeared_coulomb(inputs.profile, alpha, r)? + tail
        }
        RegimeBranch::Repulsive => {
            let tail = alpha * alpha * (consts.e_he(branch)? - 2.0 * consts.a0(branch)?);
            alpha.powf(1.0 + gamma) / r + tail
        }
        RegimeBranch::Molecular => {
            let a0 = consts.a0(branch)?;
            alpha * alpha * (consts.e2r(r)? - 2.0 * a0)
        }
        RegimeBranch::VanDerWaals => {
            -alpha.powf(6.0 * gamma - 4.0) * vdw_coefficient(inputs.spectrum)?.value() / r.powi(6)
        }
        RegimeBranch::Crossover => -alpha.powi(8) * crossover_function(inputs.spectrum, r, inputs.quadrature)?,
        RegimeBranch::Retarded => {
            -alpha.powf(7.0 * gamma - 6.0) * cp_coefficient(inputs.spectrum) / r.powi(7)
        }
    };
    Ok(RegimeEnergy { branch, value })
}
