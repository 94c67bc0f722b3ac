//! Self-bound Thomas-Fermi profile, where contact repulsion balances the `1/r` attraction.
//!
//! `Ψ(R) = sqrt(N)/(2R₀) · sqrt(sin(πR/R₀)/R)` for `R < R₀` and zero outside,
//! with `R₀ = sqrt(a a*)/2`.

use std::f64::consts::PI;

use crate::error::{require, Error, Result};

use super::{GroundState, RadialGrid, RadialState, Units};

/// `R₀ = sqrt(a a*)/2`, independent of `N`.
pub fn tfg_radius(a: f64, a_star: f64) -> Result<f64> {
    if a <= 0.0 {
        return Err(Error::Domain(format!(
            "the self-bound Thomas-Fermi profile needs a > 0, got {a}"
        )));
    }
    require(a_star > 0.0, "a_star", a_star, "must be positive")?;
    Ok((a * a_star).sqrt() / 2.0)
}

/// `ρ(0) = πN/(4R₀³) = 2πN/(a a*)^{3/2}`.
pub fn tfg_central_density(n: f64, a: f64, a_star: f64) -> Result<f64> {
    Ok(PI * n / (4.0 * tfg_radius(a, a_star)?.powi(3)))
}

/// `⟨R²⟩ = R₀²(π² - 6)/π²`.
pub fn tfg_rms_radius2(a: f64, a_star: f64) -> Result<f64> {
    Ok(tfg_radius(a, a_star)?.powi(2) * (PI * PI - 6.0) / (PI * PI))
}

/// Samples the profile on `grid`, rescaled so the discrete norm is exactly `n`
/// (the `sqrt` edge at `R₀` makes the raw samples short by `O(Δr^{3/2})`).
pub fn tfg_profile(n: f64, a: f64, a_star: f64, grid: RadialGrid, units: Units) -> Result<RadialState> {
    let r0 = tfg_radius(a, a_star)?;
    if r0 >= grid.r_max() {
        return Err(Error::Domain(format!("R0 = {r0} does not fit inside r_max = {}", grid.r_max())));
    }
    let psi = grid
        .radii()
        .iter()
        .map(|&r| {
            if r < r0 {
                n.sqrt() / (2.0 * r0) * ((PI * r / r0).sin() / r).sqrt()
            } else {
                0.0
            }
        })
        .collect();
    RadialState::normalized(grid, psi, n, units)
}

/// Solver state against the analytic profile with the same `a a*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TfgComparison {
    /// `R₀` in the state's length unit.
    pub radius: f64,
    /// `‖ρ - ρ_TF‖₂ / ‖ρ_TF‖₂`.
    pub l2_error: f64,
    /// Radius inferred from the solver's `⟨R²⟩`.
    pub fitted_radius: f64,
    /// Solver `⟨R²⟩` over `R₀²(π² - 6)/π²`.
    pub rms_ratio: f64,
    /// Solver central density over `πN/(4R₀³)`.
    pub central_density_ratio: f64,
}

/// Compares a trapless ground state with the analytic profile.
///
/// In the solver's units `a a* = π g_s/g_u`.
pub fn compare_tfg(ground: &GroundState) -> Result<TfgComparison> {
    let c = &ground.couplings;
    if c.trapped {
        return Err(Error::Domain("the self-bound profile applies to trapless states".into()));
    }
    let state = &ground.state;
    let product = PI * c.contact / c.gravity;
    let reference = tfg_profile(state.norm, product, 1.0, state.grid, state.units)?;
    let rho = state.density();
    let rho_ref = reference.density();
    let diff: Vec<f64> = rho.iter().zip(&rho_ref).map(|(a, b)| (a - b).powi(2)).collect();
    let sq: Vec<f64> = rho_ref.iter().map(|b| b * b).collect();
    let grid = &state.grid;
    let l2_error = (grid.integrate(&diff) / grid.integrate(&sq)).sqrt();
    let radius = tfg_radius(product, 1.0)?;
    let r2 = state.mean_square_radius();
    let expected_r2 = tfg_rms_radius2(product, 1.0)?;
    Ok(TfgComparison {
        radius,
        l2_error,
        fitted_radius: (r2 * PI * PI / (PI * PI - 6.0)).sqrt(),
        rms_ratio: r2 / expected_r2,
        central_density_ratio: state.central_density() / tfg_central_density(state.norm, product, 1.0)?,
    })
}
