//! Two-hydrogen-atom interaction energy across the van der Waals (R⁻⁶) and
//! retarded Casimir-Polder (R⁻⁷) regimes.
//!
//! * [`spectral`]: ℓ = 1 pseudostate spectrum and the ground-state dipole
//!   functions built on it.
//! * [`crossover`]: the crossover function h_co(R), the coefficients a_VW and
//!   a_CP, and the leading-order regime energies.
//! * [`kernels`]: smearing profiles and the closed-form photon kernels.
//! * [`vacuum`]: the self-energy constant a₀.
//! * [`action`]: Monte Carlo statistics of the path action 𝒜₁.
//! * [`quadrature`]: Gauss-Legendre rules and the adaptive integrator.

pub mod action;
pub mod crossover;
pub mod error;
pub mod kernels;
pub mod quadrature;
pub mod spectral;
pub mod vacuum;

pub use error::{Error, Result};
