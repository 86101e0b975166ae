//! Dipole spectrum of hydrogen in the ℓ = 1 sector.
//!
//! The radial problem −½u″ + u/r² − u/r = E u is discretized in the Coulomb
//! Sturmian basis
//!
//! ```text
//! S_n(r) = x² e^{−x/2} L_n^{(3)}(x),   x = 2λr,   n = 0..N−1,
//! ```
//!
//! in which the overlap is tridiagonal and the Hamiltonian is a diagonal
//! matrix plus a multiple of the overlap, all entries in closed form. The
//! generalized problem H c = E S c is reduced with a Cholesky factor of S.
//!
//! Dipole strengths are taken against the exact ground state
//! ψ₀(x) = π^{−1/2} e^{−|x|}. With d_n = ∫ 2r²e^{−r} u_n(r) dr the radial dipole
//! integral of pseudostate n, the per-component strength is s_n = d_n²/3 and
//! every ground-state dipole function used downstream is a sum over
//! (E_n, s_n), E_n being the excitation energy above E_hy = −½.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const GROUND_STATE_ENERGY: f64 = -0.5;

/// Size and exponential scale of the Sturmian basis (atomic units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BasisConfig {
    pub size: usize,
    pub length_scale: f64,
}

impl Default for BasisConfig {
    fn default() -> Self {
        Self {
            size: 80,
            length_scale: 1.0,
        }
    }
}

impl BasisConfig {
    pub fn new(size: usize, length_scale: f64) -> Self {
        Self { size, length_scale }
    }

    pub fn validate(&self) -> Result<()> {
        if self.size < 1 {
            return Err(Error::Config("basis size must be at least 1".into()));
        }
        if !(self.length_scale > 0.0 && self.length_scale.is_finite()) {
            return Err(Error::Config(format!(
                "basis length scale must be positive, got {}",
                self.length_scale
            )));
        }
        Ok(())
    }
}

/// Excitation energies and per-component dipole strengths of the ℓ = 1
/// pseudostates, sorted by increasing energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DipoleSpectrum {
    excitations: Vec<f64>,
    strengths: Vec<f64>,
}

impl DipoleSpectrum {
    /// Builds a spectrum from explicit pairs. Used for model spectra and tests.
    pub fn from_pairs(excitations: Vec<f64>, strengths: Vec<f64>) -> Result<Self> {
        if excitations.len() != strengths.len() {
            return Err(Error::Config(format!(
                "spectrum has {} energies but {} strengths",
                excitations.len(),
                strengths.len()
            )));
        }
        if excitations.iter().any(|&e| !(e > 0.0 && e.is_finite())) {
            return Err(Error::Config("excitation energies must be positive".into()));
        }
        if strengths.iter().any(|&s| !(s >= 0.0 && s.is_finite())) {
            return Err(Error::Config("dipole strengths must be nonnegative".into()));
        }
        let mut pairs: Vec<_> = excitations.into_iter().zip(strengths).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (excitations, strengths) = pairs.into_iter().unzip();
        Ok(Self {
            excitations,
            strengths,
        })
    }

    pub fn excitations(&self) -> &[f64] {
        &self.excitations
    }

    pub fn strengths(&self) -> &[f64] {
        &self.strengths
    }

    pub fn len(&self) -> usize {
        self.excitations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.excitations.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.excitations
            .iter()
            .copied()
            .zip(self.strengths.iter().copied())
    }

    /// Σ s_n, which tends to ⟨r²⟩/3 = 1.
    pub fn closure_sum(&self) -> f64 {
        self.strengths.iter().sum()
    }

    /// Σ s_n E_n (Thomas-Reiche-Kuhn sum, ½ for hydrogen).
    pub fn energy_weighted_sum(&self) -> f64 {
        self.pairs().map(|(e, s)| s * e).sum()
    }

    /// f(u) = Σ s_n E_n / (E_n² + (u/2)²).
    pub fn reduced_polarizability(&self, u: f64) -> f64 {
        let h2 = 0.25 * u * u;
        self.pairs().map(|(e, s)| s * e / (e * e + h2)).sum()
    }

    /// α_hy = 2 Σ s_n / E_n.
    pub fn static_polarizability(&self) -> f64 {
        2.0 * self.pairs().map(|(e, s)| s / e).sum::<f64>()
    }

    /// Static polarizability restricted to pseudostates below the ionization
    /// threshold (excitation energy under ½).
    pub fn bound_state_polarizability(&self) -> f64 {
        2.0 * self
            .pairs()
            .filter(|&(e, _)| e < -GROUND_STATE_ENERGY)
            .map(|(e, s)| s / e)
            .sum::<f64>()
    }

    /// Dipole autocorrelation C(t) = Σ s_n e^{−E_n t}.
    pub fn dipole_correlation(&self, t: f64) -> f64 {
        self.pairs().map(|(e, s)| s * (-e * t).exp()).sum()
    }

    /// Dynamic polarizability at imaginary frequency, α(iω) = 2 Σ s_n E_n/(E_n² + ω²).
    /// Related to the reduced form by α(iω) = 2 f(2ω).
    pub fn polarizability_imaginary(&self, omega: f64) -> f64 {
        2.0 * self.reduced_polarizability(2.0 * omega)
    }

    /// Σ_{n,m} s_n s_m / (E_n + E_m) = ∫₀^∞ C(t)² dt.
    pub fn correlation_square_integral(&self) -> f64 {
        let mut total = 0.0;
        for (i, (ei, si)) in self.pairs().enumerate() {
            total += si * si / (2.0 * ei);
            for (ej, sj) in self.pairs().skip(i + 1) {
                total += 2.0 * si * sj / (ei + ej);
            }
        }
        total
    }

    /// Copy with every excitation energy multiplied by `factor`.
    pub fn scaled_energies(&self, factor: f64) -> Result<Self> {
        Self::from_pairs(
            self.excitations.iter().map(|e| e * factor).collect(),
            self.strengths.clone(),
        )
    }

    /// Keeps only the `n` lowest pseudostates.
    pub fn truncated(&self, n: usize) -> Self {
        Self {
            excitations: self.excitations.iter().take(n).copied().collect(),
            strengths: self.strengths.iter().take(n).copied().collect(),
        }
    }
}

/// Overlap and Hamiltonian of the normalized Sturmian basis, plus the dipole
/// vector ⟨2r²e^{−r} | S̃_k⟩.
struct SturmianMatrices {
    overlap: DMatrix<f64>,
    hamiltonian: DMatrix<f64>,
    dipole: DVector<f64>,
}

const ANGULAR_MOMENTUM: f64 = 1.0;

fn sturmian_matrices(config: &BasisConfig) -> SturmianMatrices {
    let n = config.size;
    let lam = config.length_scale;
    let l = ANGULAR_MOMENTUM;
    let mut overlap = DMatrix::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        overlap[(k, k)] = (kf + l + 1.0) / lam;
        if k + 1 < n {
            let off = -((kf + 1.0) * (kf + 2.0 * l + 2.0)).sqrt() / (2.0 * lam);
            overlap[(k, k + 1)] = off;
            overlap[(k + 1, k)] = off;
        }
    }
    // T_ℓ S_k = ((k+ℓ+1)λ/r − λ²/2) S_k and ⟨S̃_j|1/r|S̃_k⟩ = δ_jk.
    let mut hamiltonian = overlap.scale(-0.5 * lam * lam);
    for k in 0..n {
        hamiltonian[(k, k)] += (k as f64 + l + 1.0) * lam - 1.0;
    }
    // ∫ x⁴ e^{−σx} L_k^{(3)}(x) dx = 24 C(k+3,3) σ^{−5} (1−z)^{k−1}((1−z) − kz/4), z = 1/σ.
    let sigma = (lam + 1.0) / (2.0 * lam);
    let z = 1.0 / sigma;
    let w = 1.0 - z;
    let dipole = DVector::from_iterator(
        n,
        (0..n).map(|k| {
            let kf = k as f64;
            let norm = ((kf + 1.0) * (kf + 2.0) * (kf + 3.0)).sqrt();
            let poly = if k == 0 {
                1.0
            } else {
                w.powi(k as i32) - 0.25 * kf * z * w.powi(k as i32 - 1)
            };
            norm * poly / (lam.powi(3) * sigma.powi(5))
        }),
    );
    SturmianMatrices {
        overlap,
        hamiltonian,
        dipole,
    }
}

/// Diagonalizes the ℓ = 1 radial Hamiltonian and returns the dipole spectrum.
pub fn build_dipole_spectrum(config: &BasisConfig) -> Result<DipoleSpectrum> {
    config.validate()?;
    let m = sturmian_matrices(config);
    let ill_conditioned = || {
        Error::Config(format!(
            "overlap matrix not positive definite for N = {}, λ = {}",
            config.size, config.length_scale
        ))
    };
    let chol = m.overlap.clone().cholesky().ok_or_else(ill_conditioned)?;
    let l = chol.l();
    let l_inv = l
        .clone()
        .try_inverse()
        .ok_or_else(ill_conditioned)?;
    // Symmetric reduction: L⁻¹ H L⁻ᵀ y = E y with c = L⁻ᵀ y.
    let reduced = &l_inv * &m.hamiltonian * l_inv.transpose();
    let reduced = 0.5 * (&reduced + reduced.transpose());
    let eig = SymmetricEigen::new(reduced);
    // d_n = Dᵀ c_n = (L⁻¹ D)ᵀ y_n.
    let projected = &l_inv * &m.dipole;
    let dipoles = eig.eigenvectors.transpose() * projected;
    let excitations: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|e| e - GROUND_STATE_ENERGY)
        .collect();
    if excitations.iter().any(|e| !e.is_finite() || *e <= 0.0) {
        return Err(Error::Config(format!(
            "diagonalization produced a nonpositive excitation for N = {}, λ = {}",
            config.size, config.length_scale
        )));
    }
    let strengths = dipoles.iter().map(|d| d * d / 3.0).collect();
    DipoleSpectrum::from_pairs(excitations, strengths)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spectrum(n: usize, lam: f64) -> DipoleSpectrum {
        build_dipole_spectrum(&BasisConfig::new(n, lam)).unwrap()
    }

    #[test]
    fn single_function_basis_is_positive() {
        let s = spectrum(1, 1.0);
        assert_eq!(s.len(), 1);
        assert!(s.excitations()[0] > 0.0);
        assert!(s.strengths()[0] > 0.0);
        let alpha = s.static_polarizability();
        assert!(alpha > 0.0 && alpha < 4.5, "{alpha}");
    }

    #[test]
    fn exact_2p_level_when_basis_matches_its_scale() {
        // λ = 1/2 puts r² e^{−r/2} (the exact 2p orbital) in the basis.
        let s = spectrum(5, 0.5);
        assert!((s.excitations()[0] - 0.375).abs() < 1e-13);
    }

    #[test]
    fn lowest_excitation_is_lyman_alpha_and_strength_matches() {
        let s = spectrum(80, 1.0);
        assert!((s.excitations()[0] - 0.375).abs() < 1e-10);
        // |⟨1s|r|2p⟩|² = 2¹⁵/3⁹.
        let want = 2f64.powi(15) / 3f64.powi(9) / 3.0;
        assert!((s.strengths()[0] - want).abs() < 1e-10);
    }

    #[test]
    fn trk_sum_rule() {
        let s = spectrum(80, 1.0);
        assert!((s.energy_weighted_sum() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn invalid_configuration() {
        assert!(build_dipole_spectrum(&BasisConfig::new(0, 1.0)).is_err());
        assert!(build_dipole_spectrum(&BasisConfig::new(10, -1.0)).is_err());
        assert!(DipoleSpectrum::from_pairs(vec![1.0], vec![]).is_err());
        assert!(DipoleSpectrum::from_pairs(vec![0.0], vec![1.0]).is_err());
    }

    #[test]
    fn model_spectrum_is_sorted() {
        let s = DipoleSpectrum::from_pairs(vec![2.0, 1.0], vec![0.1, 0.9]).unwrap();
        assert_eq!(s.excitations(), &[1.0, 2.0]);
        assert_eq!(s.strengths(), &[0.9, 0.1]);
    }

    #[test]
    fn large_u_decay_constant() {
        let s = spectrum(80, 1.0);
        let limit = 4.0 * s.energy_weighted_sum();
        let u = 1e5;
        let scaled = s.reduced_polarizability(u) * u * u;
        assert!((scaled / limit - 1.0).abs() < 1e-6, "{scaled} vs {limit}");
        // log-log slope −2
        let (u1, u2) = (1e4, 1e5);
        let slope = (s.reduced_polarizability(u2) / s.reduced_polarizability(u1)).ln()
            / (u2 / u1).ln();
        assert!((slope + 2.0).abs() < 1e-4, "{slope}");
    }
}
