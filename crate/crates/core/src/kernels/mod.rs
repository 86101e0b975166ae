//! Smearing profiles and the closed-form photon kernels built from them.

pub mod angular;
pub mod coulomb;
pub mod coupling;
pub mod profile;
pub mod propagator;
pub mod radial;
pub mod selftest;

pub use angular::{angular_transverse_integral, g_profiles, TransverseMatrix};
pub use coulomb::{pair_potential, smeared_coulomb};
pub use coupling::{coupling_norms, CouplingNorms};
pub use profile::{ProfileFamily, ProfileSpec, SmearingProfile};
pub use propagator::{photon_propagator, propagator_components, PropagatorComponents};
pub use radial::{radial_kernels, DeltaTerm, RadialKernels};
