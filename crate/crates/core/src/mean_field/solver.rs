//! Norm-preserving imaginary-time relaxation.
//!
//! Each step solves `(1/Δt + H[u] - σ) u' = u/Δt` with the Hamiltonian frozen
//! at the current state and `σ = min` of its potential, then renormalizes.
//! The implicit step is stable for the linear part, so `Δt` grows
//! geometrically while the energy keeps falling. A step that raises the energy
//! is retried with half the step, which also becomes a permanent ceiling: the
//! nonlinear feedback makes large steps oscillate in the breathing mode, and
//! near convergence that oscillation is too small to show up in the energy.

use crate::energy::EnergyBreakdown;
use crate::error::{require, Error, Result};
use crate::physical::MeanFieldCouplings;
use crate::variational::{solve_lambda, Confinement};

use super::banded::PentaLdl;
use super::{breakdown_from_u, hartree_from_density, kinetic_bands, RadialGrid, RadialState, Units};

/// How the relaxation is seeded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Initialization {
    /// Gaussian of the variational radius.
    Variational,
    /// Gaussian of the given width in the solver's units.
    Gaussian(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Relative energy change per accepted step.
    pub tol: f64,
    pub virial_tol: f64,
    pub max_iterations: usize,
    pub grid_points: usize,
    /// Outer radius; `None` uses `radius_factor` times the variational width.
    pub r_max: Option<f64>,
    pub radius_factor: f64,
    pub init: Initialization,
    /// Norm of the returned state. The couplings already carry `N`.
    pub atom_number: f64,
    pub initial_step: f64,
    pub max_step: f64,
    /// Central-density growth that counts as collapse.
    pub collapse_growth: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            virial_tol: 1e-6,
            max_iterations: 100_000,
            grid_points: 4096,
            r_max: None,
            radius_factor: 8.0,
            init: Initialization::Variational,
            atom_number: 1.0,
            initial_step: 0.1,
            max_step: 1e4,
            collapse_growth: 1e6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundState {
    pub state: RadialState,
    /// Per-particle energies in the state's units.
    pub energy: EnergyBreakdown,
    /// Couplings in the state's units.
    pub couplings: MeanFieldCouplings,
    pub iterations: usize,
    pub energy_change: f64,
    pub virial: f64,
    /// Energy after every accepted step, starting with the initial state.
    pub energy_history: Vec<f64>,
}

/// Variational Gaussian width for `couplings`, or a fallback when the ansatz has no minimum.
pub fn initial_width(couplings: &MeanFieldCouplings) -> Result<f64> {
    let pair = couplings.dimensionless();
    let confinement = if couplings.trapped {
        Confinement::Trapped
    } else {
        Confinement::Trapless
    };
    let sol = solve_lambda(pair.u_tilde, pair.s_tilde, confinement)?;
    Ok(sol.lambda.unwrap_or(if couplings.trapped { 1.0 } else { 1.0 / pair.u_tilde }))
}

/// Ground state for couplings in trap units.
///
/// A trapless problem is solved in gravitational units (`g_u = 1`); the
/// returned state, couplings and energies are in those units.
pub fn ground_state(couplings: &MeanFieldCouplings, options: &SolverOptions) -> Result<GroundState> {
    require(couplings.contact.is_finite(), "g_s", couplings.contact, "must be finite")?;
    require(couplings.gravity >= 0.0, "g_u", couplings.gravity, "must be non-negative")?;
    let (work, units) = if couplings.trapped {
        (*couplings, Units::Trap)
    } else {
        let work = couplings.to_gravitational()?;
        let g = couplings.gravity;
        (
            work,
            Units::Gravitational {
                length_scale: 1.0 / g,
                energy_scale: g * g,
            },
        )
    };
    let variational = initial_width(&work)?;
    let width = match options.init {
        Initialization::Variational => variational,
        Initialization::Gaussian(w) => w,
    };
    require(width > 0.0 && width.is_finite(), "width", width, "must be positive")?;
    let r_max = options.r_max.unwrap_or(options.radius_factor * variational);
    let grid = RadialGrid::new(r_max, options.grid_points)?;
    let initial = RadialState::gaussian(grid, width, options.atom_number, units)?;
    ground_state_from(&work, initial, options)
}

/// Relaxes `initial` with couplings expressed in the initial state's units.
pub fn ground_state_from(
    couplings: &MeanFieldCouplings,
    initial: RadialState,
    options: &SolverOptions,
) -> Result<GroundState> {
    if !couplings.trapped && couplings.gravity <= 0.0 {
        return Err(Error::NoCoupling);
    }
    let grid = initial.grid;
    let radii = grid.radii();
    let scale = initial.norm.sqrt();
    let mut u: Vec<f64> = initial.psi.iter().zip(&radii).map(|(p, r)| r * p / scale).collect();
    let (kd, ke, kf) = kinetic_bands(&grid);
    let trap: Vec<f64> = radii
        .iter()
        .map(|r| if couplings.trapped { 0.5 * r * r } else { 0.0 })
        .collect();

    let density = |u: &[f64]| -> Vec<f64> { u.iter().zip(&radii).map(|(v, r)| (v / r).powi(2)).collect() };
    let normalize = |u: &mut Vec<f64>| {
        let norm = grid.integrate(&density(u)).sqrt();
        u.iter_mut().for_each(|v| *v /= norm);
    };
    normalize(&mut u);

    let mut energy = breakdown_from_u(&grid, &u, couplings);
    let mut history = vec![energy.total()];
    let central0 = density(&u)[0];
    let mut dt = options.initial_step;
    let mut ceiling = options.max_step;
    let mut change = f64::INFINITY;
    let mut virial = f64::INFINITY;

    for iteration in 1..=options.max_iterations {
        let rho = density(&u);
        let phi = hartree_from_density(&grid, &rho, couplings.gravity);
        let potential: Vec<f64> = (0..u.len())
            .map(|i| trap[i] + couplings.contact * rho[i] + phi[i])
            .collect();
        let shift = potential.iter().copied().fold(f64::INFINITY, f64::min);
        let diag: Vec<f64> = (0..u.len()).map(|i| kd[i] + potential[i] - shift + 1.0 / dt).collect();
        let rhs: Vec<f64> = u.iter().map(|v| v / dt).collect();
        let mut next = PentaLdl::factor(&diag, &ke, &kf).solve(&rhs);
        normalize(&mut next);
        let candidate = breakdown_from_u(&grid, &next, couplings);

        let (e_old, e_new) = (energy.total(), candidate.total());
        // Roundoff in E is set by the largest cancelling term, not by E itself.
        let noise = 1e-12 * (energy.kinetic + energy.trap + energy.gravity.abs() + energy.contact.abs());
        if e_new - e_old > noise || !e_new.is_finite() {
            dt *= 0.5;
            ceiling = dt;
            if dt < 1e-14 {
                return Err(Error::NoConvergence {
                    iterations: iteration,
                    energy_change: change,
                    virial,
                });
            }
            continue;
        }
        change = ((e_new - e_old) / e_new).abs();
        u = next;
        energy = candidate;
        history.push(e_new);
        dt = (dt * 1.5).min(ceiling);

        let growth = density(&u)[0] / central0;
        if growth > options.collapse_growth && e_new < e_old {
            return Err(Error::Collapse {
                iterations: iteration,
                growth,
                energy: e_new,
            });
        }
        if change < options.tol {
            virial = energy.virial_residual()?.abs();
            if virial < options.virial_tol {
                let psi: Vec<f64> = u.iter().zip(&radii).map(|(v, r)| (v / r).abs() * scale).collect();
                let state = RadialState::new(grid, psi, initial.norm, initial.units)?;
                return Ok(GroundState {
                    state,
                    energy,
                    couplings: *couplings,
                    iterations: iteration,
                    energy_change: change,
                    virial,
                    energy_history: history,
                });
            }
        }
    }
    Err(Error::NoConvergence {
        iterations: options.max_iterations,
        energy_change: change,
        virial: energy.virial_residual().map_or(f64::NAN, f64::abs),
    })
}
