//! Gaussian-ansatz analysis of the condensate radius.
//!
//! With `Ψ ∝ exp(-R²/2λ²l₀²)` the mean-field energy per particle is
//!
//! ```text
//! H(λ)/(Nħω₀) = ¾ (λ⁻² + λ² - 2ũ λ⁻¹ + ⅔ s̃ λ⁻³)
//! ```
//!
//! and `dH/dλ = (3/2) λ⁻⁴ p(λ)` with `p(λ) = λ⁵ + ũλ² - λ - s̃`. Without a trap
//! the `λ²` term is dropped and `p(λ) = ũλ² - λ - s̃`. Stationary radii are the
//! positive roots of `p`; a root where `p` crosses from negative to positive is
//! a minimum.

use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;

use crate::energy::EnergyBreakdown;
use crate::error::{require, Error, Result};

const LOG_GRID_MIN: f64 = -8.0;
const LOG_GRID_MAX: f64 = 8.0;
const NODES_PER_DECADE: usize = 100;

/// Factor separating an asymptotic region label from its boundaries.
pub const REGION_MARGIN: f64 = 10.0;

/// `s̃·ũ` below which a trapless condensate has no finite-radius minimum.
pub const TRAPLESS_CRITICAL_PRODUCT: f64 = -0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Confinement {
    Trapped,
    Trapless,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StationaryKind {
    GlobalMin,
    LocalMin,
    LocalMax,
    None,
}

impl StationaryKind {
    pub fn is_minimum(self) -> bool {
        matches!(self, StationaryKind::GlobalMin | StationaryKind::LocalMin)
    }
}

impl fmt::Display for StationaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StationaryKind::GlobalMin => "global-min",
            StationaryKind::LocalMin => "local-min",
            StationaryKind::LocalMax => "local-max",
            StationaryKind::None => "none",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoint {
    pub lambda: f64,
    pub kind: StationaryKind,
    /// `H/(Nħω₀)` at this radius.
    pub energy: f64,
}

/// Stationary structure of the Gaussian energy for one `(ũ, s̃)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VariationalSolution {
    pub u_tilde: f64,
    pub s_tilde: f64,
    pub confinement: Confinement,
    /// Kind of the primary (lowest) minimum, or `None` when the condensate collapses.
    pub kind: StationaryKind,
    pub lambda: Option<f64>,
    pub energy_per_particle: Option<f64>,
    pub breakdown: Option<EnergyBreakdown>,
    /// Every positive stationary radius, in increasing order.
    pub stationary_points: Vec<StationaryPoint>,
}

fn check_lambda(lambda: f64) -> Result<()> {
    require(lambda > 0.0 && lambda.is_finite(), "lambda", lambda, "must be positive")
}

/// Per-particle Gaussian energies `(T, V_ext, U_u, U_s)` in units of `ħω₀`.
pub fn gaussian_breakdown(lambda: f64, u_tilde: f64, s_tilde: f64, confinement: Confinement) -> Result<EnergyBreakdown> {
    check_lambda(lambda)?;
    let trap = match confinement {
        Confinement::Trapped => 0.75 * lambda * lambda,
        Confinement::Trapless => 0.0,
    };
    Ok(EnergyBreakdown::new(
        0.75 / (lambda * lambda),
        trap,
        -1.5 * u_tilde / lambda,
        0.5 * s_tilde / lambda.powi(3),
    ))
}

/// `H(λ)/(Nħω₀)`.
pub fn energy(lambda: f64, u_tilde: f64, s_tilde: f64, confinement: Confinement) -> Result<f64> {
    Ok(gaussian_breakdown(lambda, u_tilde, s_tilde, confinement)?.total())
}

/// `p(λ)`, whose sign is the sign of `dH/dλ`.
pub fn stationarity_polynomial(lambda: f64, u_tilde: f64, s_tilde: f64, confinement: Confinement) -> f64 {
    let base = u_tilde * lambda * lambda - lambda - s_tilde;
    match confinement {
        Confinement::Trapped => lambda.powi(5) + base,
        Confinement::Trapless => base,
    }
}

fn polynomial_slope(lambda: f64, u_tilde: f64, confinement: Confinement) -> f64 {
    let base = 2.0 * u_tilde * lambda - 1.0;
    match confinement {
        Confinement::Trapped => 5.0 * lambda.powi(4) + base,
        Confinement::Trapless => base,
    }
}

/// Residual of the radius equation `-λ⁻⁴ + 1 + ũλ⁻³ - s̃λ⁻⁵` relative to its largest term.
pub fn radius_residual(lambda: f64, u_tilde: f64, s_tilde: f64, confinement: Confinement) -> f64 {
    let one = match confinement {
        Confinement::Trapped => 1.0,
        Confinement::Trapless => 0.0,
    };
    let terms = [-lambda.powi(-4), one, u_tilde * lambda.powi(-3), -s_tilde * lambda.powi(-5)];
    let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    terms.iter().sum::<f64>().abs() / scale
}

/// Root of `p'` on the positive axis. `p'` is increasing there whenever `ũ ≥ 0`.
fn slope_root(u_tilde: f64, confinement: Confinement) -> Option<f64> {
    match confinement {
        Confinement::Trapless => (u_tilde > 0.0).then(|| 0.5 / u_tilde),
        Confinement::Trapped => {
            let f = |x: f64| polynomial_slope(x, u_tilde, confinement);
            Some(bisect(f, 0.0, 1.0))
        }
    }
}

/// Bisection on a bracket with `f(lo)` and `f(hi)` of opposite sign (or zero).
fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 1e-16 * hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    if f(lo).abs() <= f(hi).abs() {
        lo
    } else {
        hi
    }
}

/// All stationary radii of the Gaussian energy with the lowest minimum as primary.
///
/// Roots of `p` are bracketed on a logarithmic grid over `λ ∈ [10⁻⁸, 10⁸]`,
/// augmented by the single positive root of `p'` so that two close roots
/// are never hidden inside one grid cell, and refined by bisection.
pub fn solve_lambda(u_tilde: f64, s_tilde: f64, confinement: Confinement) -> Result<VariationalSolution> {
    require(u_tilde >= 0.0 && u_tilde.is_finite(), "u_tilde", u_tilde, "must be non-negative")?;
    require(s_tilde.is_finite(), "s_tilde", s_tilde, "must be finite")?;
    let p = |x: f64| stationarity_polynomial(x, u_tilde, s_tilde, confinement);

    let n_nodes = (LOG_GRID_MAX - LOG_GRID_MIN) as usize * NODES_PER_DECADE + 1;
    let mut nodes: Vec<f64> = (0..n_nodes)
        .map(|i| 10f64.powf(LOG_GRID_MIN + i as f64 / NODES_PER_DECADE as f64))
        .collect();
    if let Some(c) = slope_root(u_tilde, confinement) {
        if c > nodes[0] && c < nodes[n_nodes - 1] {
            nodes.push(c);
            nodes.sort_by(f64::total_cmp);
        }
    }

    let mut roots = Vec::new();
    let values: Vec<f64> = nodes.iter().map(|&x| p(x)).collect();
    for i in 0..nodes.len() {
        if values[i] == 0.0 {
            roots.push(nodes[i]);
        } else if i + 1 < nodes.len() && values[i + 1] != 0.0 && (values[i] < 0.0) != (values[i + 1] < 0.0) {
            roots.push(bisect(p, nodes[i], nodes[i + 1]));
        }
    }

    let mut points = roots
        .into_iter()
        .map(|lambda| {
            let kind = if polynomial_slope(lambda, u_tilde, confinement) > 0.0 {
                StationaryKind::LocalMin
            } else {
                StationaryKind::LocalMax
            };
            Ok(StationaryPoint {
                lambda,
                kind,
                energy: energy(lambda, u_tilde, s_tilde, confinement)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    // H is bounded below on (0, ∞) unless attractive contact dominates at small λ.
    let bounded_below = s_tilde >= 0.0;
    let primary = points
        .iter()
        .enumerate()
        .filter(|(_, p)| p.kind.is_minimum())
        .min_by(|a, b| a.1.energy.total_cmp(&b.1.energy))
        .map(|(i, _)| i);
    if let (Some(i), true) = (primary, bounded_below) {
        points[i].kind = StationaryKind::GlobalMin;
    }

    let (kind, lambda, energy_pp, breakdown) = match primary {
        Some(i) => {
            let pt = points[i];
            (
                pt.kind,
                Some(pt.lambda),
                Some(pt.energy),
                Some(gaussian_breakdown(pt.lambda, u_tilde, s_tilde, confinement)?),
            )
        }
        None => (StationaryKind::None, None, None, None),
    };
    Ok(VariationalSolution {
        u_tilde,
        s_tilde,
        confinement,
        kind,
        lambda,
        energy_per_particle: energy_pp,
        breakdown,
        stationary_points: points,
    })
}

/// Phase-diagram region of Fig.-2a type for positive scattering length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// Ideal gas in the trap.
    Ideal,
    /// Kinetic energy against the `1/r` attraction (self-bound, boson-star-like).
    Gravity,
    /// Trap against contact repulsion (ordinary Thomas-Fermi).
    ThomasFermiOrdinary,
    /// Contact repulsion against the `1/r` attraction (self-bound Thomas-Fermi).
    ThomasFermiGravity,
    Crossover,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::Ideal => "I",
            Region::Gravity => "G",
            Region::ThomasFermiOrdinary => "TF-O",
            Region::ThomasFermiGravity => "TF-G",
            Region::Crossover => "crossover",
        })
    }
}

/// Labels `(ũ, s̃)` when it lies a factor [`REGION_MARGIN`] beyond every boundary of a region.
pub fn classify_region(u_tilde: f64, s_tilde: f64) -> Result<Region> {
    if s_tilde < 0.0 {
        return Err(Error::AttractiveScattering(s_tilde));
    }
    require(u_tilde >= 0.0, "u_tilde", u_tilde, "must be non-negative")?;
    let m = REGION_MARGIN;
    let tf_border = u_tilde.powf(5.0 / 3.0);
    let region = if u_tilde > m && s_tilde * u_tilde * m < 1.0 {
        Region::Gravity
    } else if u_tilde * m < 1.0 && s_tilde * m < 1.0 {
        Region::Ideal
    } else if s_tilde > m && s_tilde > m * tf_border {
        Region::ThomasFermiOrdinary
    } else if s_tilde * m < tf_border && s_tilde * u_tilde > m {
        Region::ThomasFermiGravity
    } else {
        Region::Crossover
    };
    Ok(region)
}

/// Physical scales needed for the peak densities of the asymptotic regions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scales {
    pub atom_number: f64,
    pub oscillator_length: f64,
    pub scattering_length: f64,
    pub bohr_radius: f64,
}

/// Closed-form radius, release energy and peak density of an asymptotic region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Asymptotics {
    pub lambda: f64,
    /// Total release energy in units of `ħω₀`.
    pub release_energy: f64,
    /// Central density in inverse cubed length units of [`Scales`].
    pub peak_density: f64,
    /// `(ũ, s̃)` is not deep inside the requested region.
    pub region_mismatch: bool,
}

/// Asymptotic radius, release energy and peak density of `region`.
///
/// The TF-O radius is `s̃^{1/5}`, the balance of trap and contact terms in the
/// radius equation. The TF-G peak density is `2πN/(a a*)^{3/2}`, the central
/// value of the analytic self-bound profile.
pub fn asymptotics(region: Region, u_tilde: f64, s_tilde: f64, scales: &Scales) -> Result<Asymptotics> {
    let n = scales.atom_number;
    let (lambda, release, density) = match region {
        Region::Gravity => (
            1.0 / u_tilde,
            0.75 * u_tilde * u_tilde * n,
            32f64.sqrt().powi(3) * PI.powi(3) * n.powi(4) / (27.0 * scales.bohr_radius.powi(3)),
        ),
        Region::ThomasFermiGravity => (
            (s_tilde / u_tilde).sqrt(),
            0.5 * u_tilde.powf(1.5) / s_tilde.sqrt() * n,
            2.0 * PI * n / (scales.scattering_length * scales.bohr_radius).powf(1.5),
        ),
        Region::ThomasFermiOrdinary => (
            s_tilde.powf(0.2),
            0.5 * s_tilde.powf(0.4) * n,
            15f64.powf(0.4) * n.powf(0.4)
                / (8.0 * PI * scales.scattering_length.powf(0.6) * scales.oscillator_length.powf(2.4)),
        ),
        Region::Ideal => (1.0, 0.75 * n, n / (PI.powf(1.5) * scales.oscillator_length.powi(3))),
        Region::Crossover => {
            return Err(Error::Domain("no asymptotic form in the crossover region".into()));
        }
    };
    let region_mismatch = !classify_region(u_tilde, s_tilde).is_ok_and(|r| r == region);
    Ok(Asymptotics {
        lambda,
        release_energy: release,
        peak_density: density,
        region_mismatch,
    })
}

/// `|s̃|` at which the trapped, gravity-free Gaussian minimum disappears: `4·5^{-5/4}`.
pub fn critical_s_tilde_no_gravity() -> f64 {
    4.0 * 5f64.powf(-1.25)
}

/// Radius at the gravity-free collapse threshold, `5^{-1/4}`.
pub fn critical_lambda_no_gravity() -> f64 {
    5f64.powf(-0.25)
}

/// Critical atom numbers for an attractive scattering length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalNumbers {
    /// Trapped, `u = 0`: `N_cr = 4·5^{-5/4} sqrt(π/2) l₀/|a|`.
    pub without_gravity: f64,
    /// Trapless, `s̃ũ = -1/4`: `N_cr = sqrt(3/32π) sqrt(a*/|a|)`.
    pub with_gravity: f64,
}

pub fn critical_number(scattering_length: f64, bohr_radius: f64, oscillator_length: f64) -> Result<CriticalNumbers> {
    if scattering_length >= 0.0 {
        return Err(Error::Domain(format!(
            "critical number needs a negative scattering length, got {scattering_length}"
        )));
    }
    let a = scattering_length.abs();
    Ok(CriticalNumbers {
        without_gravity: critical_s_tilde_no_gravity() * (PI / 2.0).sqrt() * oscillator_length / a,
        with_gravity: (3.0 / (32.0 * PI)).sqrt() * (bohr_radius / a).sqrt(),
    })
}

/// Bisects `has(x)` between `lo` (false) and `hi` (true) to width `tol`.
fn bisect_predicate<F: Fn(f64) -> Result<bool>>(has: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    if has(lo)? || !has(hi)? {
        return Err(Error::Domain("collapse threshold not bracketed".into()));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if has(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Locates the trapless collapse boundary in `c = s̃ũ` by bisection on the
/// existence of a minimum.
pub fn locate_trapless_collapse(tol: f64) -> Result<f64> {
    bisect_predicate(
        |c| Ok(solve_lambda(1.0, c, Confinement::Trapless)?.kind.is_minimum()),
        -1.0,
        0.0,
        tol,
    )
}

/// Locates the trapped collapse threshold in `s̃` at fixed `ũ` by bisection.
pub fn locate_trapped_collapse(u_tilde: f64, tol: f64) -> Result<f64> {
    bisect_predicate(
        |s| Ok(solve_lambda(u_tilde, s, Confinement::Trapped)?.kind.is_minimum()),
        -10.0,
        0.0,
        tol,
    )
}

/// Log-spaced `(ũ, s̃)` grid for the phase diagram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseDiagramSpec {
    /// Decades `(log10 ũ_min, log10 ũ_max)`.
    pub log_u: (f64, f64),
    pub log_s: (f64, f64),
    pub n_u: usize,
    pub n_s: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseNode {
    pub u_tilde: f64,
    pub s_tilde: f64,
    pub lambda: Option<f64>,
    pub region: Region,
}

fn log_axis(range: (f64, f64), n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 10f64.powf(range.0 + (range.1 - range.0) * i as f64 / (n - 1) as f64))
        .collect()
}

/// Trapped radius and region on the grid, ordered with `ũ` as the outer index.
pub fn phase_diagram(spec: &PhaseDiagramSpec) -> Result<Vec<PhaseNode>> {
    if spec.n_u < 2 || spec.n_s < 2 {
        return Err(Error::Domain(format!(
            "phase diagram needs at least 2 nodes per axis, got {}x{}",
            spec.n_u, spec.n_s
        )));
    }
    let us = log_axis(spec.log_u, spec.n_u);
    let ss = log_axis(spec.log_s, spec.n_s);
    let grid: Vec<(f64, f64)> = us.iter().flat_map(|&u| ss.iter().map(move |&s| (u, s))).collect();
    grid.par_iter()
        .map(|&(u, s)| {
            Ok(PhaseNode {
                u_tilde: u,
                s_tilde: s,
                lambda: solve_lambda(u, s, Confinement::Trapped)?.lambda,
                region: classify_region(u, s)?,
            })
        })
        .collect()
}

/// Trapless energy in units of `ũ²ħω₀` against `x = λũ`:
/// `f(x) = ¾ (x⁻² - 2x⁻¹ + ⅔ c x⁻³)` with `c = s̃ũ`.
pub fn rescaled_trapless_energy(x: f64, product: f64) -> f64 {
    0.75 * (x.powi(-2) - 2.0 / x + 2.0 / 3.0 * product * x.powi(-3))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyCurve {
    /// `c = s̃ũ`.
    pub product: f64,
    pub points: Vec<(f64, f64)>,
}

/// Rescaled trapless energy curves, one per `c`, sampled at `xs`.
pub fn energy_curves(u_tilde: f64, products: &[f64], xs: &[f64]) -> Result<Vec<EnergyCurve>> {
    require(u_tilde > 0.0, "u_tilde", u_tilde, "must be positive")?;
    if let Some(&x) = xs.iter().find(|&&x| x <= 0.0) {
        check_lambda(x)?;
    }
    Ok(products
        .iter()
        .map(|&c| EnergyCurve {
            product: c,
            points: xs.iter().map(|&x| (x, rescaled_trapless_energy(x, c))).collect(),
        })
        .collect())
}
