//! Bose condensates with a laser-induced `-u/r` interatomic attraction.
//!
//! The crate covers the whole chain from laser geometry to condensate
//! observables:
//!
//! * [`laser`]: retarded dipole-dipole tensor, beam sets (single triad and
//!   the isotropic six-triad arrangement), the induced pair potential and the
//!   surviving interference amplitude.
//! * [`physical`]: SI parameters, derived length scales, the dimensionless
//!   strengths `(ũ, s̃)` and regime-validity checks. All unit conversions live
//!   here; every solver below works in dimensionless units.
//! * [`variational`]: the Gaussian-ansatz energy, its radius equation,
//!   phase-diagram regions, asymptotics and collapse thresholds.
//! * [`mean_field`]: spherically symmetric ground states of the nonlocal
//!   mean-field equation and the analytic self-bound Thomas-Fermi profile.
//! * [`losses`]: pair-production depletion from the oscillating `r⁻³`
//!   interference terms.

pub mod energy;
pub mod error;
pub mod laser;
pub mod losses;
pub mod mean_field;
pub mod physical;
pub mod quadrature;
pub mod variational;

pub use energy::EnergyBreakdown;
pub use error::{Error, Result};
pub use physical::{DimensionlessPair, MeanFieldCouplings, PhysicalParams};
