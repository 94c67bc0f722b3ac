//! Depletion from the oscillating interference terms.
//!
//! A beat between two lasers of different frequency adds `A(r) cos Ωt` to the
//! pair potential with `A = -3u·xy/(q²r⁵)`. Creating a pair of free
//! quasiparticles with `k ≈ sqrt(mΩ/ħ)` depletes the condensate at the rate
//!
//! ```text
//! d|Ψ|²/dt = -⟨|Ã(k)|²⟩/(6π) · |Ψ|⁴ (m/ħ²)^{3/2} sqrt(Ω/ħ).
//! ```
//!
//! Rates are reported as positive magnitudes.

use std::f64::consts::PI;

use nalgebra::Vector3;
use rayon::prelude::*;

use crate::error::{require, Error, Result};
use crate::physical::HBAR;
use crate::quadrature::{gauss_legendre, map_interval, sphere_rule};
use crate::variational::Region;

/// Quoted angular average `⟨|Ã(k)|²⟩` in units of `u²/q⁴`.
pub const QUOTED_INTERFERENCE_CONSTANT: f64 = 0.1418;

/// Transform convention `Ã(k) = ∫ A(r) e^{-ik·r} d³r` gives `Ã = 4πu/q² · k̂ₓk̂ᵧ`
/// and the angular average `16π²/15 · u²/q⁴`.
pub fn analytic_interference_constant() -> f64 {
    16.0 * PI * PI / 15.0
}

/// `A(r) = -3u·xy/(q²r⁵)`.
pub fn interference_amplitude(u: f64, q: f64, r: &Vector3<f64>) -> f64 {
    -3.0 * u * r.x * r.y / (q * q * r.norm().powi(5))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FourierScheme {
    /// Angular projection onto the `l = 2` harmonic and a numerical Hankel integral.
    Hankel,
    /// Direct `(r, μ, φ)` integral of `A(r) e^{-ik·r}` for each `k̂`.
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    /// Radial cutoff `kr ≤ half_periods·π`; the remainder is added asymptotically.
    pub half_periods: usize,
    pub nodes_per_panel: usize,
    /// Gauss-Legendre order in `μ = k̂·r̂` for the direct scheme.
    pub mu_nodes: usize,
    pub phi_nodes: usize,
    /// Sphere rule for the `k̂` average.
    pub sphere: (usize, usize),
    /// Allowed relative change when every resolution parameter doubles.
    pub tolerance: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            half_periods: 100,
            nodes_per_panel: 16,
            mu_nodes: 512,
            phi_nodes: 8,
            sphere: (4, 8),
            tolerance: 1e-5,
        }
    }
}

impl OracleOptions {
    fn doubled(&self) -> Self {
        Self {
            half_periods: 2 * self.half_periods,
            nodes_per_panel: 2 * self.nodes_per_panel,
            mu_nodes: 2 * self.mu_nodes,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub scheme: FourierScheme,
    pub k: f64,
    /// `⟨|Ã(k)|²⟩` in the units of `u²/q⁴`.
    pub average: f64,
    /// `average·q⁴/u²`.
    pub constant: f64,
    /// Relative change against the doubled resolution.
    pub residual: f64,
}

/// Spherical Bessel function `j₂`.
fn bessel_j2(x: f64) -> f64 {
    if x.abs() < 0.3 {
        let x2 = x * x;
        x2 / 15.0 * (1.0 - x2 / 14.0 * (1.0 - x2 / 36.0 * (1.0 - x2 / 66.0)))
    } else {
        (3.0 / x.powi(3) - 1.0 / x) * x.sin() - 3.0 * x.cos() / (x * x)
    }
}

/// Radial nodes `(r, w)` on half-period panels of `kr` up to `half_periods·π`.
fn radial_nodes(k: f64, opts: &OracleOptions) -> Vec<(f64, f64)> {
    let rule = gauss_legendre(opts.nodes_per_panel);
    let width = PI / k;
    (0..opts.half_periods)
        .flat_map(|p| map_interval(&rule, p as f64 * width, (p + 1) as f64 * width).collect::<Vec<_>>())
        .collect()
}

fn hankel_average(u: f64, q: f64, k: f64, opts: &OracleOptions) -> f64 {
    let cutoff = opts.half_periods as f64 * PI;
    // ∫ j₂(kr)/r dr over the panels, then ∫_X^∞ j₂(x)/x dx ≈ -cos X/X².
    let radial: f64 = radial_nodes(k, opts).iter().map(|&(r, w)| w * bessel_j2(k * r) / r).sum::<f64>()
        - cutoff.cos() / (cutoff * cutoff);
    // e^{-ik·r} projects the l = 2 harmonic xy/r² with (-i)²·4π.
    let amplitude = -3.0 * u / (q * q) * (-4.0 * PI) * radial;
    let rule = sphere_rule(opts.sphere.0, opts.sphere.1);
    rule.iter().map(|(n, w)| w * (amplitude * n.x * n.y).powi(2)).sum::<f64>() / (4.0 * PI)
}

fn orthonormal_frame(k_hat: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let seed = if k_hat.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
    let e1 = (seed - k_hat * k_hat.dot(&seed)).normalize();
    (e1, k_hat.cross(&e1))
}

/// `Ã(k k̂)` by direct quadrature. `A` is even, so the transform is real.
fn direct_transform(u: f64, q: f64, k: f64, k_hat: &Vector3<f64>, radial: &[(f64, f64)], opts: &OracleOptions) -> f64 {
    let (e1, e2) = orthonormal_frame(k_hat);
    let angular = |mu: f64| -> f64 {
        let s = (1.0 - mu * mu).max(0.0).sqrt();
        let dphi = 2.0 * PI / opts.phi_nodes as f64;
        (0..opts.phi_nodes)
            .map(|j| {
                let phi = j as f64 * dphi;
                let r = (e1 * phi.cos() + e2 * phi.sin()) * s + k_hat * mu;
                r.x * r.y * dphi
            })
            .sum()
    };
    let mu_rule: Vec<(f64, f64, f64)> = gauss_legendre(opts.mu_nodes)
        .into_iter()
        .map(|(mu, w)| (mu, w, angular(mu)))
        .collect();
    let radial_sum: f64 = radial
        .iter()
        .map(|&(r, w)| {
            let x = k * r;
            let f: f64 = mu_rule.iter().map(|&(mu, wm, g)| wm * g * (x * mu).cos()).sum();
            w * f / r
        })
        .sum();
    // F(x) ≈ 2g(1) sin x/x at large x, so the remainder is 2g(1)·cos X/X².
    let cutoff = opts.half_periods as f64 * PI;
    let tail = 2.0 * angular(1.0) * cutoff.cos() / (cutoff * cutoff);
    -3.0 * u / (q * q) * (radial_sum + tail)
}

fn direct_average(u: f64, q: f64, k: f64, opts: &OracleOptions) -> f64 {
    let radial = radial_nodes(k, opts);
    let rule = sphere_rule(opts.sphere.0, opts.sphere.1);
    let values: Vec<f64> = rule
        .par_iter()
        .map(|(n, w)| w * direct_transform(u, q, k, n, &radial, opts).powi(2))
        .collect();
    values.iter().sum::<f64>() / (4.0 * PI)
}

/// Angular average of `|Ã(k)|²` with the default resolution.
pub fn ft_interference_oracle(u: f64, q: f64, k: f64, scheme: FourierScheme) -> Result<OracleResult> {
    ft_interference_oracle_with(u, q, k, scheme, &OracleOptions::default())
}

/// Angular average of `|Ã(k)|²`, failing when doubling the resolution moves
/// the result by more than `opts.tolerance`.
pub fn ft_interference_oracle_with(
    u: f64,
    q: f64,
    k: f64,
    scheme: FourierScheme,
    opts: &OracleOptions,
) -> Result<OracleResult> {
    require(k > 0.0 && k.is_finite(), "k", k, "must be positive")?;
    require(q > 0.0, "q", q, "must be positive")?;
    require(
        opts.half_periods > 0 && opts.nodes_per_panel > 0 && opts.mu_nodes > 0 && opts.phi_nodes >= 3,
        "resolution",
        0.0,
        "every quadrature order must be positive",
    )?;
    let eval = |o: &OracleOptions| match scheme {
        FourierScheme::Hankel => hankel_average(u, q, k, o),
        FourierScheme::Direct => direct_average(u, q, k, o),
    };
    let coarse = eval(opts);
    let fine = eval(&opts.doubled());
    let residual = if fine == 0.0 {
        0.0
    } else {
        ((fine - coarse) / fine).abs()
    };
    // NaN residuals fail too.
    if residual.is_nan() || residual > opts.tolerance {
        return Err(Error::Quadrature(residual));
    }
    Ok(OracleResult {
        scheme,
        k,
        average: fine,
        constant: if u == 0.0 { 0.0 } else { fine * q.powi(4) / (u * u) },
        residual,
    })
}

/// Pair-production depletion rate of `|Ψ|²` (1/(m³·s)) at local density `density`
/// with the angular average `constant·u²/q⁴`.
pub fn pair_production_rate_with(constant: f64, density: f64, u: f64, q: f64, omega: f64, mass: f64) -> Result<f64> {
    require(density >= 0.0, "density", density, "must be non-negative")?;
    require(q > 0.0, "q", q, "must be positive")?;
    require(omega >= 0.0, "Omega", omega, "must be non-negative")?;
    require(mass > 0.0, "mass", mass, "must be positive")?;
    let average = constant * u * u / q.powi(4);
    Ok(average / (6.0 * PI) * density * density * (mass / (HBAR * HBAR)).powf(1.5) * (omega / HBAR).sqrt())
}

/// [`pair_production_rate_with`] using the quoted constant `0.1418`.
pub fn pair_production_rate(density: f64, u: f64, q: f64, omega: f64, mass: f64) -> Result<f64> {
    pair_production_rate_with(QUOTED_INTERFERENCE_CONSTANT, density, u, q, omega, mass)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DepletionMode {
    /// The region's closed-form scaling law.
    Formula,
    /// Local-density integral of the pair rate over the region's profile.
    Integrated,
}

impl std::fmt::Display for DepletionMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DepletionMode::Formula => "formula",
            DepletionMode::Integrated => "integrated",
        })
    }
}

/// Inputs of a region-wise depletion estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossInputs {
    pub region: Region,
    pub u_tilde: f64,
    pub s_tilde: f64,
    /// Beat frequency `Ω` (rad/s).
    pub omega: f64,
    /// Trap frequency `ω₀` (rad/s).
    pub omega0: f64,
    /// `q·l₀`.
    pub q_l0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossEstimate {
    /// Atoms lost per second.
    pub rate: f64,
    pub mode: DepletionMode,
    pub inputs: LossInputs,
}

impl LossEstimate {
    /// Rate in units of the trap frequency.
    pub fn in_trap_frequency(&self) -> f64 {
        self.rate / self.inputs.omega0
    }

    /// Fraction of `atom_number` lost per second.
    pub fn per_atom(&self, atom_number: f64) -> f64 {
        self.rate / atom_number
    }
}

/// `∫ρ̂² d³x` in `l₀⁻³` for the region's asymptotic unit-norm profile.
fn profile_overlap(region: Region, u_tilde: f64, s_tilde: f64) -> f64 {
    match region {
        // Gaussian of width λ = 1/ũ: (2π)^{-3/2} λ^{-3}.
        Region::Gravity => (2.0 * PI).powf(-1.5) * u_tilde.powi(3),
        // Self-bound profile with R₀ = π sqrt(s̃/3ũ): π/(8R₀³).
        _ => {
            let r0 = PI * (s_tilde / (3.0 * u_tilde)).sqrt();
            PI / (8.0 * r0.powi(3))
        }
    }
}

/// Total depletion rate `dN₀/dt` in the `G` or `TF-G` region.
///
/// The integrated mode applies the pair rate at every point of the region's
/// asymptotic profile; after eliminating `u`, `N` and `l₀` it reads
/// `(3/4)·0.1418·ũ²·∫ρ̂² · sqrt(Ωω₀)/(ql₀)⁴`.
pub fn condensate_depletion(inputs: &LossInputs, mode: DepletionMode) -> Result<LossEstimate> {
    let LossInputs {
        region,
        u_tilde,
        s_tilde,
        omega,
        omega0,
        q_l0,
    } = *inputs;
    require(u_tilde >= 0.0, "u_tilde", u_tilde, "must be non-negative")?;
    require(omega >= 0.0, "Omega", omega, "must be non-negative")?;
    require(omega0 > 0.0, "omega0", omega0, "must be positive")?;
    require(q_l0 > 0.0, "q_l0", q_l0, "must be positive")?;
    match region {
        Region::Gravity => {}
        Region::ThomasFermiGravity => {
            if s_tilde <= 0.0 {
                return Err(Error::Domain(format!("TF-G depletion needs s_tilde > 0, got {s_tilde}")));
            }
        }
        other => {
            return Err(Error::Domain(format!("depletion estimates cover G and TF-G, not {other}")));
        }
    }
    let scale = (omega * omega0).sqrt() / q_l0.powi(4);
    let rate = if u_tilde == 0.0 {
        0.0
    } else {
        match (mode, region) {
            (DepletionMode::Formula, Region::Gravity) => u_tilde.powi(5) * scale,
            (DepletionMode::Formula, _) => u_tilde.powf(3.5) * s_tilde.powf(-1.5) * scale,
            (DepletionMode::Integrated, _) => {
                0.75 * QUOTED_INTERFERENCE_CONSTANT * u_tilde.powi(2) * profile_overlap(region, u_tilde, s_tilde) * scale
            }
        }
    };
    Ok(LossEstimate {
        rate,
        mode,
        inputs: *inputs,
    })
}
