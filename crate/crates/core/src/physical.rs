//! Physical constants, atom/trap parameters and derived scales.
//!
//! Everything in this module is SI. The solvers elsewhere in the crate work
//! in one of two dimensionless systems:
//!
//! * trap units: length `l₀ = sqrt(ħ/mω₀)`, energy `ħω₀`;
//! * gravitational units (trapless): length `ħ²/(m u N)`, energy `m u² N²/ħ²`.
//!
//! The conversions between them and SI are confined to this module.

use std::f64::consts::PI;

use crate::error::{require, Error, Result};

/// Reduced Planck constant (J s).
pub const HBAR: f64 = 1.054_571_817_646_156_5e-34;
/// Planck constant (J s).
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Vacuum permittivity (F/m).
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
/// Unified atomic mass unit (kg).
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;
/// Mass of ²³Na (kg).
pub const SODIUM_MASS: f64 = 22.989_769_282_0 * ATOMIC_MASS_UNIT;
/// Mass of ⁸⁷Rb (kg).
pub const RUBIDIUM87_MASS: f64 = 86.909_180_531 * ATOMIC_MASS_UNIT;
/// Static polarizability volume of sodium (m³), 24.08 Å³.
pub const SODIUM_POLARIZABILITY_VOLUME: f64 = 24.08e-30;
/// Joules per electron volt.
pub const ELECTRON_VOLT: f64 = 1.602_176_634e-19;

/// Ratio used for "much less than" checks. The inverse is used for "much greater than".
pub const MUCH_LESS: f64 = 0.1;

/// Atom, trap and laser parameters in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Atomic mass (kg).
    pub mass: f64,
    /// s-wave scattering length (m), negative for attractive contact interactions.
    pub scattering_length: f64,
    /// Strength `u` of the `-u/r` pair potential (J m).
    pub coupling: f64,
    /// Isotropic trap angular frequency (rad/s); zero for a trapless condensate.
    pub trap_frequency: f64,
    pub atom_number: f64,
    /// Laser wavenumber (1/m).
    pub wavenumber: f64,
}

impl PhysicalParams {
    pub fn new(
        mass: f64,
        scattering_length: f64,
        coupling: f64,
        trap_frequency: f64,
        atom_number: f64,
        wavenumber: f64,
    ) -> Result<Self> {
        require(mass > 0.0 && mass.is_finite(), "mass", mass, "must be positive")?;
        require(scattering_length.is_finite(), "scattering_length", scattering_length, "must be finite")?;
        require(coupling >= 0.0 && coupling.is_finite(), "coupling", coupling, "must be non-negative")?;
        require(
            trap_frequency >= 0.0 && trap_frequency.is_finite(),
            "trap_frequency",
            trap_frequency,
            "must be non-negative",
        )?;
        require(atom_number >= 1.0 && atom_number.is_finite(), "atom_number", atom_number, "must be at least 1")?;
        require(wavenumber > 0.0 && wavenumber.is_finite(), "wavenumber", wavenumber, "must be positive")?;
        Ok(Self {
            mass,
            scattering_length,
            coupling,
            trap_frequency,
            atom_number,
            wavenumber,
        })
    }

    /// Harmonic oscillator length `sqrt(ħ/mω₀)`, `None` for a trapless setup.
    pub fn oscillator_length(&self) -> Option<f64> {
        (self.trap_frequency > 0.0).then(|| (HBAR / (self.mass * self.trap_frequency)).sqrt())
    }

    pub fn bohr_radius(&self) -> Result<f64> {
        gravitational_bohr_radius(self)
    }

    /// Length and energy units of the trapless problem, `ħ²/(muN)` and `mu²N²/ħ²`.
    pub fn gravitational_units(&self) -> Result<(f64, f64)> {
        if self.coupling <= 0.0 {
            return Err(Error::NoCoupling);
        }
        let length = HBAR * HBAR / (self.mass * self.coupling * self.atom_number);
        let energy = self.mass * (self.coupling * self.atom_number / HBAR).powi(2);
        Ok((length, energy))
    }

    /// Dimensionless mean-field couplings in trap units.
    pub fn mean_field_couplings(&self) -> Result<MeanFieldCouplings> {
        let l0 = self.oscillator_length().ok_or(Error::Trapless)?;
        Ok(MeanFieldCouplings {
            contact: 4.0 * PI * self.atom_number * self.scattering_length / l0,
            gravity: self.atom_number * l0 * self.mass * self.coupling / (HBAR * HBAR),
            trapped: true,
        })
    }
}

/// Gravitational Bohr radius `a* = h²/(m u) = 4π²ħ²/(m u)`.
pub fn gravitational_bohr_radius(params: &PhysicalParams) -> Result<f64> {
    if params.coupling <= 0.0 {
        return Err(Error::NoCoupling);
    }
    Ok(4.0 * PI * PI * HBAR * HBAR / (params.mass * params.coupling))
}

/// Dimensionless gravity and scattering strengths `(ũ, s̃)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessPair {
    pub u_tilde: f64,
    pub s_tilde: f64,
}

/// `ũ = GRAVITY_FACTOR · N l₀/a*`.
pub const GRAVITY_FACTOR: f64 = 10.499_739_963_814_946; // π·sqrt(32π/9)
/// `s̃ = SCATTERING_FACTOR · N a/l₀`.
pub const SCATTERING_FACTOR: f64 = 0.797_884_560_802_865_4; // sqrt(2/π)

impl DimensionlessPair {
    pub fn new(u_tilde: f64, s_tilde: f64) -> Self {
        Self { u_tilde, s_tilde }
    }

    /// `s̃·ũ = (8π/3) N² a/a*`, the only combination that survives without a trap.
    pub fn product(&self) -> f64 {
        self.u_tilde * self.s_tilde
    }

    /// Recovers `N a/l₀`.
    pub fn scattering_ratio(&self) -> f64 {
        self.s_tilde / SCATTERING_FACTOR
    }

    /// Recovers `N l₀/a*`.
    pub fn gravity_ratio(&self) -> f64 {
        self.u_tilde / GRAVITY_FACTOR
    }

    /// Grid-solver couplings `g_s = 4πNa/l₀`, `g_u = 4π²Nl₀/a*`.
    pub fn mean_field_couplings(&self, trapped: bool) -> MeanFieldCouplings {
        MeanFieldCouplings {
            contact: 4.0 * PI * self.scattering_ratio(),
            gravity: 4.0 * PI * PI * self.gravity_ratio(),
            trapped,
        }
    }
}

/// `(ũ, s̃)` from SI parameters.
pub fn dimensionless(params: &PhysicalParams) -> Result<DimensionlessPair> {
    let l0 = params.oscillator_length().ok_or(Error::Trapless)?;
    let n = params.atom_number;
    let u_tilde = if params.coupling > 0.0 {
        GRAVITY_FACTOR * n * l0 / gravitational_bohr_radius(params)?
    } else {
        0.0
    };
    let s_tilde = SCATTERING_FACTOR * n * params.scattering_length / l0;
    Ok(DimensionlessPair { u_tilde, s_tilde })
}

/// Couplings of the dimensionless mean-field equation
/// `μψ = [-∇²/2 + r²/2 + g_s|ψ|² - g_u ∫|ψ'|²/|r-r'|] ψ` with `∫|ψ|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanFieldCouplings {
    /// `g_s = 4πNa/l₀`.
    pub contact: f64,
    /// `g_u = 4π²Nl₀/a*`.
    pub gravity: f64,
    pub trapped: bool,
}

impl MeanFieldCouplings {
    pub fn new(contact: f64, gravity: f64, trapped: bool) -> Self {
        Self { contact, gravity, trapped }
    }

    pub fn dimensionless(&self) -> DimensionlessPair {
        DimensionlessPair {
            u_tilde: GRAVITY_FACTOR * self.gravity / (4.0 * PI * PI),
            s_tilde: SCATTERING_FACTOR * self.contact / (4.0 * PI),
        }
    }

    /// Rescales a trapless problem to gravitational units, where `g_u = 1`.
    ///
    /// Lengths shrink by `g_u` and energies grow by `g_u²` relative to trap units;
    /// the contact coupling becomes `g_s·g_u`.
    pub fn to_gravitational(&self) -> Result<MeanFieldCouplings> {
        if self.trapped {
            return Err(Error::Domain("gravitational units require a trapless problem".into()));
        }
        if self.gravity <= 0.0 {
            return Err(Error::NoCoupling);
        }
        Ok(MeanFieldCouplings {
            contact: self.contact * self.gravity,
            gravity: 1.0,
            trapped: false,
        })
    }
}

/// One inequality of the validity report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Check {
    pub ratio: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl Check {
    fn much_less(ratio: f64) -> Self {
        Self {
            ratio,
            threshold: MUCH_LESS,
            passed: ratio < MUCH_LESS,
        }
    }

    fn much_greater(ratio: f64) -> Self {
        Self {
            ratio,
            threshold: 1.0 / MUCH_LESS,
            passed: ratio > 1.0 / MUCH_LESS,
        }
    }
}

/// Tolerable laser imperfections for the `r⁻³` cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlignmentBudget {
    /// Largest misalignment angle δ (rad).
    pub max_misalignment: f64,
    /// Largest relative intensity fluctuation ΔI/I.
    pub max_intensity_noise: f64,
}

impl AlignmentBudget {
    pub fn admits(&self, misalignment: f64, intensity_noise: f64) -> bool {
        misalignment.abs() < self.max_misalignment && intensity_noise.abs() < self.max_intensity_noise
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    /// `ρ_max a³ ≪ 1`.
    pub diluteness: Check,
    /// `ρ_max a*³ ≫ 1`.
    pub mfa_gravity: Check,
    /// `qL ≪ 1`.
    pub near_zone: Check,
    /// `a*/λ_DB ≫ 1`.
    pub bohr_over_de_broglie: Check,
    /// `λ_DB/|a| ≫ 1`.
    pub de_broglie_over_scattering: Check,
    /// Both halves of `a* ≫ λ_DB ≫ a`.
    pub hierarchy_ok: bool,
    pub alignment_budget: AlignmentBudget,
}

impl RegimeReport {
    pub fn all_passed(&self) -> bool {
        self.diluteness.passed && self.mfa_gravity.passed && self.near_zone.passed && self.hierarchy_ok
    }
}

/// Evaluates the validity conditions of the two-body model and the mean-field
/// treatment for a condensate of peak density `rho_max` and rms radius `rms_radius`.
pub fn validate_regime(
    params: &PhysicalParams,
    rho_max: f64,
    rms_radius: f64,
    de_broglie: f64,
) -> Result<RegimeReport> {
    require(rho_max >= 0.0, "rho_max", rho_max, "must be non-negative")?;
    require(rms_radius > 0.0, "rms_radius", rms_radius, "must be positive")?;
    require(de_broglie > 0.0, "de_broglie", de_broglie, "must be positive")?;

    let a = params.scattering_length.abs();
    let a_star = gravitational_bohr_radius(params).unwrap_or(f64::INFINITY);
    // ρ·∞ is undefined at ρ = 0; an empty cloud never satisfies ρa*³ ≫ 1.
    let gravity_ratio = if rho_max == 0.0 { 0.0 } else { rho_max * a_star.powi(3) };
    let near_zone = params.wavenumber * rms_radius;

    let bohr_over_de_broglie = Check::much_greater(a_star / de_broglie);
    let de_broglie_over_scattering = Check::much_greater(if a > 0.0 { de_broglie / a } else { f64::INFINITY });
    Ok(RegimeReport {
        diluteness: Check::much_less(rho_max * a.powi(3)),
        mfa_gravity: Check::much_greater(gravity_ratio),
        near_zone: Check::much_less(near_zone),
        bohr_over_de_broglie,
        de_broglie_over_scattering,
        hierarchy_ok: bohr_over_de_broglie.passed && de_broglie_over_scattering.passed,
        alignment_budget: AlignmentBudget {
            max_misalignment: MUCH_LESS * near_zone,
            max_intensity_noise: MUCH_LESS * near_zone,
        },
    })
}
