//! Small quadrature helpers: Gauss-Legendre panels, product rules on the
//! sphere and a seeded low-discrepancy direction sequence.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use nalgebra::Vector3;
use rand::{RngExt, SeedableRng};
use rand_pcg::Pcg64;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, ordered by increasing node.
pub fn gauss_legendre(order: usize) -> Vec<(f64, f64)> {
    let order = NonZeroUsize::new(order.max(1)).expect("nonzero");
    let mut pairs = GaussLegendre::new(order).as_node_weight_pairs().to_vec();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs
}

/// Maps `[-1, 1]` nodes onto `[a, b]`.
pub fn map_interval(rule: &[(f64, f64)], a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    rule.iter().map(move |&(x, w)| (mid + half * x, half * w))
}

/// Direction and weight of a product rule on the unit sphere.
///
/// Gauss-Legendre in `cos θ` times the trapezoid rule in `φ`; weights sum to
/// `4π`. Exact for spherical polynomials of degree `< min(2·n_theta, n_phi)`.
pub fn sphere_rule(n_theta: usize, n_phi: usize) -> Vec<(Vector3<f64>, f64)> {
    let gl = gauss_legendre(n_theta);
    let dphi = 2.0 * PI / n_phi as f64;
    let mut out = Vec::with_capacity(gl.len() * n_phi);
    for &(mu, w) in &gl {
        let s = (1.0 - mu * mu).sqrt();
        for j in 0..n_phi {
            let phi = (j as f64 + 0.5) * dphi;
            out.push((Vector3::new(s * phi.cos(), s * phi.sin(), mu), w * dphi));
        }
    }
    out
}

/// Average of `f` over the unit sphere using [`sphere_rule`].
pub fn sphere_average<F: FnMut(&Vector3<f64>) -> f64>(n_theta: usize, n_phi: usize, mut f: F) -> f64 {
    sphere_rule(n_theta, n_phi)
        .iter()
        .map(|(n, w)| w * f(n))
        .sum::<f64>()
        / (4.0 * PI)
}

/// `n` quasi-random unit vectors with a seeded Cranley-Patterson shift of the
/// R2 sequence, mapped area-preservingly onto the sphere.
pub fn sphere_directions(n: usize, seed: u64) -> Vec<Vector3<f64>> {
    // Plastic number g solves g³ = g + 1.
    const G: f64 = 1.324_717_957_244_746;
    let a1 = 1.0 / G;
    let a2 = 1.0 / (G * G);
    let mut rng = Pcg64::seed_from_u64(seed);
    let shift: (f64, f64) = (rng.random(), rng.random());
    (0..n)
        .map(|i| {
            let i = i as f64 + 1.0;
            let s = (shift.0 + a1 * i).fract();
            let t = (shift.1 + a2 * i).fract();
            let z = 1.0 - 2.0 * s;
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let phi = 2.0 * PI * t;
            Vector3::new(rho * phi.cos(), rho * phi.sin(), z)
        })
        .collect()
}
