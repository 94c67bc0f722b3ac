//! Spherically symmetric ground states of the nonlocal mean-field equation
//!
//! ```text
//! μψ = [-∇²/2 + V_ext + g_s|ψ|² - g_u ∫|ψ'|²/|r-r'| d³r'] ψ,   ∫|ψ|² d³r = 1,
//! ```
//!
//! with `V_ext = r²/2` in trap units. The radial function `u = rψ` lives on
//! `rᵢ = iΔr` with `u = 0` at the origin and at the outer wall.

mod banded;
mod solver;
mod tfg;

pub use solver::{ground_state, ground_state_from, initial_width, GroundState, Initialization, SolverOptions};
pub use tfg::{compare_tfg, tfg_central_density, tfg_profile, tfg_radius, tfg_rms_radius2, TfgComparison};

use std::f64::consts::PI;

use crate::energy::EnergyBreakdown;
use crate::error::{require, Error, Result};
use crate::physical::MeanFieldCouplings;

/// Normalization tolerance of a [`RadialState`].
pub const NORM_TOLERANCE: f64 = 1e-8;

/// Uniform radial grid `rᵢ = iΔr`, `i = 1..=n`, with `Δr = r_max/(n+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    r_max: f64,
    n: usize,
}

impl RadialGrid {
    pub fn new(r_max: f64, n: usize) -> Result<Self> {
        require(r_max > 0.0 && r_max.is_finite(), "r_max", r_max, "must be positive")?;
        require(n >= 16, "n", n as f64, "grid needs at least 16 points")?;
        Ok(Self { r_max, n })
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.r_max / (self.n + 1) as f64
    }

    pub fn radius(&self, i: usize) -> f64 {
        (i + 1) as f64 * self.spacing()
    }

    pub fn radii(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.radius(i)).collect()
    }

    /// Same extent with `2n + 1` points, so that `Δr` halves.
    pub fn refined(&self) -> Self {
        Self {
            r_max: self.r_max,
            n: 2 * self.n + 1,
        }
    }

    /// `∫ f d³r ≈ 4πΔr Σ rᵢ² fᵢ`.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        let dr = self.spacing();
        4.0 * PI * dr * f.iter().enumerate().map(|(i, v)| self.radius(i).powi(2) * v).sum::<f64>()
    }
}

/// Unit system of a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Units {
    /// Lengths in `l₀`, energies in `ħω₀`.
    Trap,
    /// Lengths `ħ²/(muN)`, energies `mu²N²/ħ²`; `length_scale` and `energy_scale`
    /// give those units in terms of the input unit system.
    Gravitational { length_scale: f64, energy_scale: f64 },
}

/// Samples of the order-parameter profile `Ψ(rᵢ)` normalized to `norm`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialState {
    pub grid: RadialGrid,
    pub psi: Vec<f64>,
    pub norm: f64,
    pub units: Units,
}

impl RadialState {
    /// Wraps samples after checking sign, length and normalization.
    pub fn new(grid: RadialGrid, psi: Vec<f64>, norm: f64, units: Units) -> Result<Self> {
        if psi.len() != grid.len() {
            return Err(Error::Domain(format!("{} samples on a {}-point grid", psi.len(), grid.len())));
        }
        require(norm > 0.0, "norm", norm, "must be positive")?;
        if let Some(&p) = psi.iter().find(|p| !(**p >= 0.0 && p.is_finite())) {
            return Err(Error::Domain(format!("profile sample {p} is not finite and non-negative")));
        }
        let state = Self { grid, psi, norm, units };
        state.check_normalized()?;
        Ok(state)
    }

    /// Scales arbitrary non-negative samples to `norm`.
    pub fn normalized(grid: RadialGrid, mut psi: Vec<f64>, norm: f64, units: Units) -> Result<Self> {
        let current = grid.integrate(&psi.iter().map(|p| p * p).collect::<Vec<_>>());
        if !(current > 0.0 && current.is_finite()) {
            return Err(Error::Domain("profile has no weight".into()));
        }
        let scale = (norm / current).sqrt();
        psi.iter_mut().for_each(|p| *p *= scale);
        Self::new(grid, psi, norm, units)
    }

    /// `Ψ ∝ exp(-r²/2λ²)`.
    pub fn gaussian(grid: RadialGrid, width: f64, norm: f64, units: Units) -> Result<Self> {
        require(width > 0.0, "width", width, "must be positive")?;
        let psi = grid.radii().iter().map(|r| (-0.5 * (r / width).powi(2)).exp()).collect();
        Self::normalized(grid, psi, norm, units)
    }

    pub fn density(&self) -> Vec<f64> {
        self.psi.iter().map(|p| p * p).collect()
    }

    pub fn normalization(&self) -> f64 {
        self.grid.integrate(&self.density())
    }

    fn check_normalized(&self) -> Result<()> {
        let actual = self.normalization();
        if ((actual - self.norm) / self.norm).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized {
                actual,
                target: self.norm,
            });
        }
        Ok(())
    }

    /// `⟨r²⟩` per particle.
    pub fn mean_square_radius(&self) -> f64 {
        let r2: Vec<f64> = self
            .psi
            .iter()
            .enumerate()
            .map(|(i, p)| (self.grid.radius(i) * p).powi(2))
            .collect();
        self.grid.integrate(&r2) / self.normalization()
    }

    /// Density at the innermost grid point.
    pub fn central_density(&self) -> f64 {
        self.psi[0] * self.psi[0]
    }

    /// `Ψ(r_max)/max Ψ` at the outermost grid point.
    pub fn edge_ratio(&self) -> f64 {
        let max = self.psi.iter().fold(0.0f64, |m, p| m.max(*p));
        self.psi[self.psi.len() - 1] / max
    }
}

/// Hartree potential `Φ(r) = -g [M(r)/r + ∫_r^∞ 4πr'ρ(r')dr']` of the state's density.
///
/// The discrete kernel is `1/max(rᵢ, rⱼ)` plus a diagonal correction that makes
/// it fourth-order accurate. It stays symmetric and equals the monopole
/// `-g·norm/r` outside the density support.
pub fn hartree_potential(state: &RadialState, g: f64) -> Vec<f64> {
    hartree_from_density(&state.grid, &state.density(), g)
}

pub(crate) fn hartree_from_density(grid: &RadialGrid, density: &[f64], g: f64) -> Vec<f64> {
    let dr = grid.spacing();
    let n = density.len();
    let shell: Vec<f64> = density
        .iter()
        .enumerate()
        .map(|(i, rho)| 4.0 * PI * grid.radius(i).powi(2) * dr * rho)
        .collect();
    let mut out = vec![0.0; n];
    let mut outer = 0.0;
    for i in (0..n).rev() {
        out[i] = outer;
        outer += shell[i] / grid.radius(i);
    }
    let mut inner = 0.0;
    for i in 0..n {
        inner += shell[i];
        // Both sums are trapezoid rules meeting at the kink r' = rᵢ; their
        // leading Euler-Maclaurin terms combine into the local -Δr²·4πρᵢ/12.
        out[i] = -g * (inner / grid.radius(i) + out[i] - PI / 3.0 * dr * dr * density[i]);
    }
    out
}

/// `-½ u''` with the fourth-order five-point stencil. Odd reflection at both
/// walls (`u₋ₖ = -uₖ`, `u_{n+1+k} = -u_{n+1-k}`) keeps the operator symmetric.
pub(crate) fn kinetic_bands(grid: &RadialGrid) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = grid.len();
    let c = 1.0 / (24.0 * grid.spacing().powi(2));
    let mut d = vec![30.0 * c; n];
    d[0] = 29.0 * c;
    d[n - 1] = 29.0 * c;
    (d, vec![-16.0 * c; n - 1], vec![c; n - 2])
}

pub(crate) fn apply_kinetic(grid: &RadialGrid, u: &[f64]) -> Vec<f64> {
    let (d, e, f) = kinetic_bands(grid);
    let n = u.len();
    (0..n)
        .map(|i| {
            let mut v = d[i] * u[i];
            if i >= 1 {
                v += e[i - 1] * u[i - 1];
            }
            if i + 1 < n {
                v += e[i] * u[i + 1];
            }
            if i >= 2 {
                v += f[i - 2] * u[i - 2];
            }
            if i + 2 < n {
                v += f[i] * u[i + 2];
            }
            v
        })
        .collect()
}

/// Energies per particle from unit-norm radial samples `u = rψ`.
pub(crate) fn breakdown_from_u(grid: &RadialGrid, u: &[f64], couplings: &MeanFieldCouplings) -> EnergyBreakdown {
    let dr = grid.spacing();
    let w = 4.0 * PI * dr;
    let ku = apply_kinetic(grid, u);
    let kinetic = w * u.iter().zip(&ku).map(|(a, b)| a * b).sum::<f64>();
    let trap = if couplings.trapped {
        0.5 * w * u.iter().enumerate().map(|(i, v)| (grid.radius(i) * v).powi(2)).sum::<f64>()
    } else {
        0.0
    };
    let density: Vec<f64> = u.iter().enumerate().map(|(i, v)| (v / grid.radius(i)).powi(2)).collect();
    let contact = 0.5 * couplings.contact * grid.integrate(&density.iter().map(|r| r * r).collect::<Vec<_>>());
    let gravity = if couplings.gravity != 0.0 {
        let phi = hartree_from_density(grid, &density, couplings.gravity);
        0.5 * grid.integrate(&density.iter().zip(&phi).map(|(r, p)| r * p).collect::<Vec<_>>())
    } else {
        0.0
    };
    EnergyBreakdown::new(kinetic, trap, gravity, contact)
}

/// Per-particle energies of a normalized state for couplings in the state's units.
pub fn total_energy(state: &RadialState, couplings: &MeanFieldCouplings) -> Result<EnergyBreakdown> {
    state.check_normalized()?;
    let scale = state.norm.sqrt();
    let u: Vec<f64> = state
        .psi
        .iter()
        .enumerate()
        .map(|(i, p)| state.grid.radius(i) * p / scale)
        .collect();
    Ok(breakdown_from_u(&state.grid, &u, couplings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variational::{gaussian_breakdown, Confinement};
    use approx::assert_relative_eq;

    fn grid() -> RadialGrid {
        RadialGrid::new(12.0, 4096).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(RadialGrid::new(1.0, 15).is_err());
        assert!(RadialGrid::new(0.0, 100).is_err());
        let g = RadialGrid::new(1.0, 99).unwrap();
        assert_eq!(g.spacing(), 0.01);
        assert_eq!(g.refined().spacing(), 0.005);
    }

    #[test]
    fn state_validation() {
        let g = grid();
        assert!(RadialState::new(g, vec![1.0; 4096], 1.0, Units::Trap).is_err());
        assert!(RadialState::new(g, vec![1.0; 10], 1.0, Units::Trap).is_err());
        let s = RadialState::gaussian(g, 1.0, 5.0, Units::Trap).unwrap();
        assert!((s.normalization() - 5.0).abs() < 1e-12);
        assert!(s.edge_ratio() < 1e-6);
        assert_relative_eq!(s.mean_square_radius(), 1.5, max_relative = 1e-10);
        let mut neg = s.psi.clone();
        neg[3] = -1e-3;
        assert!(RadialState::new(g, neg, 5.0, Units::Trap).is_err());
    }

    #[test]
    fn gaussian_oscillator_energy() {
        let s = RadialState::gaussian(grid(), 1.0, 1.0, Units::Trap).unwrap();
        let b = total_energy(&s, &MeanFieldCouplings::new(0.0, 0.0, true)).unwrap();
        assert!((b.total() - 1.5).abs() < 1e-9);
        assert!(b.virial_residual().unwrap().abs() < 1e-9);
    }

    #[test]
    fn gaussian_breakdown_matches_ansatz() {
        let couplings = MeanFieldCouplings::new(3.0, 2.0, true);
        let pair = couplings.dimensionless();
        let lambda = 0.8;
        let s = RadialState::gaussian(grid(), lambda, 1.0, Units::Trap).unwrap();
        let b = total_energy(&s, &couplings).unwrap();
        let g = gaussian_breakdown(lambda, pair.u_tilde, pair.s_tilde, Confinement::Trapped).unwrap();
        assert_relative_eq!(b.kinetic, g.kinetic, max_relative = 1e-8);
        assert_relative_eq!(b.trap, g.trap, max_relative = 1e-8);
        assert_relative_eq!(b.contact, g.contact, max_relative = 1e-8);
        assert_relative_eq!(b.gravity, g.gravity, max_relative = 1e-5);
    }

    #[test]
    fn energy_rejects_unnormalized_state() {
        let mut s = RadialState::gaussian(grid(), 1.0, 1.0, Units::Trap).unwrap();
        s.psi.iter_mut().for_each(|p| *p *= 1.1);
        assert!(matches!(
            total_energy(&s, &MeanFieldCouplings::new(0.0, 0.0, true)),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn hartree_point_mass_and_monopole() {
        let g = grid();
        let mut psi = vec![0.0; g.len()];
        psi[0] = 1.0;
        let s = RadialState::normalized(g, psi, 2.0, Units::Trap).unwrap();
        let phi = hartree_potential(&s, 0.5);
        for i in [10, 100, 4000] {
            assert_relative_eq!(phi[i], -0.5 * 2.0 / g.radius(i), max_relative = 1e-12);
        }
        let ball = RadialState::gaussian(g, 0.5, 1.0, Units::Trap).unwrap();
        let phi = hartree_potential(&ball, 1.0);
        assert_relative_eq!(phi[4095], -1.0 / g.radius(4095), max_relative = 1e-8);
        assert!(phi.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn hartree_uniform_ball() {
        let g = RadialGrid::new(4.0, 8191).unwrap();
        let r0 = 2.0;
        let psi = g.radii().iter().map(|&r| if r <= r0 { 1.0 } else { 0.0 }).collect();
        let s = RadialState::normalized(g, psi, 3.0, Units::Trap).unwrap();
        let phi = hartree_potential(&s, 1.0);
        for i in [0, 1000, 3000] {
            let r = g.radius(i);
            let exact = -3.0 * (3.0 * r0 * r0 - r * r) / (2.0 * r0.powi(3));
            assert!((phi[i] / exact - 1.0).abs() < 1e-3, "r = {r}: {} vs {exact}", phi[i]);
        }
    }

    #[test]
    fn hartree_is_linear() {
        let g = RadialGrid::new(10.0, 512).unwrap();
        let a: Vec<f64> = g.radii().iter().map(|r| (-r * r).exp()).collect();
        let b: Vec<f64> = g.radii().iter().map(|r| (-0.3 * r).exp()).collect();
        let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| 2.0 * x + y).collect();
        let pa = hartree_from_density(&g, &a, 1.3);
        let pb = hartree_from_density(&g, &b, 1.3);
        let ps = hartree_from_density(&g, &sum, 1.3);
        for i in 0..512 {
            assert!((ps[i] - 2.0 * pa[i] - pb[i]).abs() < 1e-12 * ps[i].abs());
        }
    }

    #[test]
    fn kinetic_operator_is_symmetric_positive() {
        let g = RadialGrid::new(1.0, 32).unwrap();
        let x: Vec<f64> = (0..32).map(|i| (i as f64 * 0.37).sin()).collect();
        let y: Vec<f64> = (0..32).map(|i| (i as f64 * 0.11).cos()).collect();
        let kx = apply_kinetic(&g, &x);
        let ky = apply_kinetic(&g, &y);
        let xky: f64 = x.iter().zip(&ky).map(|(a, b)| a * b).sum();
        let ykx: f64 = y.iter().zip(&kx).map(|(a, b)| a * b).sum();
        assert!((xky - ykx).abs() < 1e-10 * xky.abs());
        assert!(x.iter().zip(&kx).map(|(a, b)| a * b).sum::<f64>() > 0.0);
    }
}
