//! Per-particle energy decomposition shared by the Gaussian ansatz and the
//! grid solver.

use crate::error::{Error, Result};

/// Energies per particle in the active unit system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBreakdown {
    /// Kinetic energy `T`.
    pub kinetic: f64,
    /// Harmonic trap energy `V_ext`.
    pub trap: f64,
    /// Internal energy of the `-u/r` attraction, `U_u`.
    pub gravity: f64,
    /// Internal energy of the contact interaction, `U_s`.
    pub contact: f64,
    pub chemical_potential: f64,
}

impl EnergyBreakdown {
    pub fn new(kinetic: f64, trap: f64, gravity: f64, contact: f64) -> Self {
        Self {
            kinetic,
            trap,
            gravity,
            contact,
            chemical_potential: kinetic + trap + 2.0 * gravity + 2.0 * contact,
        }
    }

    pub fn total(&self) -> f64 {
        self.kinetic + self.trap + self.gravity + self.contact
    }

    /// `-T + V_ext - U_u/2 - 3U_s/2`, zero for any stationary state.
    pub fn virial_sum(&self) -> f64 {
        -self.kinetic + self.trap - 0.5 * self.gravity - 1.5 * self.contact
    }

    /// Virial sum relative to the kinetic energy.
    pub fn virial_residual(&self) -> Result<f64> {
        if self.kinetic == 0.0 {
            return Err(Error::Domain("virial residual undefined for T = 0".into()));
        }
        Ok(self.virial_sum() / self.kinetic)
    }

    /// Release energy `N (T + U_s)` measured after switching off trap and lasers.
    pub fn release_energy(&self, atom_number: f64) -> f64 {
        atom_number * (self.kinetic + self.contact)
    }
}

/// See [`EnergyBreakdown::virial_residual`].
pub fn virial_residual(breakdown: &EnergyBreakdown) -> Result<f64> {
    breakdown.virial_residual()
}

/// See [`EnergyBreakdown::release_energy`].
pub fn release_energy(breakdown: &EnergyBreakdown, atom_number: f64) -> f64 {
    breakdown.release_energy(atom_number)
}
