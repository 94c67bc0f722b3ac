//! Laser-induced dipole-dipole pair potential.
//!
//! Each beam of intensity `I`, wavevector `q q̂` and polarization `ê` couples
//! two atoms with dynamic polarizability `α` through
//!
//! ```text
//! U(r) = I α² / (4π c ε₀²) · Re[ê*_i ê_j V_ij(q, r)] · cos(q·r)
//! ```
//!
//! where `V_ij` is the retarded dipole-dipole tensor. Beams are summed
//! incoherently: their mutual interference oscillates at the beat frequencies
//! and only enters through [`crate::losses`].
//!
//! For three orthogonal circularly polarized beams the static `r⁻³` part
//! cancels and the near-zone potential is an attractive `r⁻¹` term with the
//! angular factor [`triad_bracket`]. Six suitably rotated triads remove the
//! anisotropy, leaving `-u/r` with `u` from [`isotropic_coupling_u`].

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{require, Error, Result};
use crate::physical::{SPEED_OF_LIGHT, VACUUM_PERMITTIVITY};
use crate::quadrature::sphere_directions;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Handedness {
    Left,
    Right,
}

impl Handedness {
    fn sign(self) -> f64 {
        match self {
            Handedness::Left => 1.0,
            Handedness::Right => -1.0,
        }
    }
}

/// A circularly polarized plane wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Beam {
    /// Intensity (W/m²).
    pub intensity: f64,
    direction: Vector3<f64>,
    /// Wavenumber `q` (1/m).
    pub wavenumber: f64,
    pub handedness: Handedness,
}

impl Beam {
    /// The direction is normalized; it must be nonzero.
    pub fn new(intensity: f64, direction: Vector3<f64>, wavenumber: f64, handedness: Handedness) -> Result<Self> {
        require(intensity >= 0.0 && intensity.is_finite(), "intensity", intensity, "must be non-negative")?;
        require(wavenumber > 0.0 && wavenumber.is_finite(), "wavenumber", wavenumber, "must be positive")?;
        let norm = direction.norm();
        require(norm > 0.0 && norm.is_finite(), "direction", norm, "must be a nonzero vector")?;
        Ok(Self {
            intensity,
            direction: direction / norm,
            wavenumber,
            handedness,
        })
    }

    /// Unit wavevector direction `q̂`.
    pub fn direction(&self) -> Vector3<f64> {
        self.direction
    }

    /// Right-handed transverse frame `(e₁, e₂)` with `e₁ × e₂ = q̂`.
    ///
    /// `e₁` is built from the lab axis along which `q̂` has its smallest component.
    pub fn transverse_frame(&self) -> (Vector3<f64>, Vector3<f64>) {
        let d = self.direction;
        let k = d.iamin();
        let mut axis = Vector3::zeros();
        axis[k] = 1.0;
        let e1 = (axis - d * d.dot(&axis)).normalize();
        (e1, d.cross(&e1))
    }

    /// Polarization vector `(e₁ ± i e₂)/√2`.
    pub fn polarization(&self) -> Vector3<Complex64> {
        let (e1, e2) = self.transverse_frame();
        polarization_in_frame(e1, e2, self.handedness)
    }

    /// `ê*_i ê_j = ½[(δ_ij - q̂_i q̂_j) ± i ε_ijk q̂_k]`.
    pub fn polarization_tensor(&self) -> Matrix3<Complex64> {
        outer_conj(&self.polarization())
    }
}

fn polarization_in_frame(e1: Vector3<f64>, e2: Vector3<f64>, handedness: Handedness) -> Vector3<Complex64> {
    let s = handedness.sign() * std::f64::consts::FRAC_1_SQRT_2;
    Vector3::from_fn(|i, _| Complex64::new(e1[i] * std::f64::consts::FRAC_1_SQRT_2, s * e2[i]))
}

fn outer_conj(e: &Vector3<Complex64>) -> Matrix3<Complex64> {
    Matrix3::from_fn(|i, j| e[i].conj() * e[j])
}

/// A set of mutually incoherent beams acting on atoms of polarizability `α`.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamSet {
    beams: Vec<Beam>,
    /// Dynamic polarizability in SI (C m²/V), i.e. `4πε₀` times the polarizability volume.
    pub polarizability: f64,
}

impl BeamSet {
    /// All beams must share one wavenumber.
    pub fn new(beams: Vec<Beam>, polarizability: f64) -> Result<Self> {
        require(polarizability.is_finite(), "polarizability", polarizability, "must be finite")?;
        if let Some(first) = beams.first() {
            for b in &beams {
                if (b.wavenumber - first.wavenumber).abs() > 1e-12 * first.wavenumber {
                    return Err(Error::Domain(format!(
                        "beam set is monochromatic: wavenumber {} differs from {}",
                        b.wavenumber, first.wavenumber
                    )));
                }
            }
        }
        Ok(Self { beams, polarizability })
    }

    pub fn beams(&self) -> &[Beam] {
        &self.beams
    }

    pub fn wavenumber(&self) -> Option<f64> {
        self.beams.first().map(|b| b.wavenumber)
    }

    pub fn total_intensity(&self) -> f64 {
        self.beams.iter().map(|b| b.intensity).sum()
    }

    /// Applies a rigid rotation to every beam direction.
    pub fn rotated(&self, rotation: &Matrix3<f64>) -> Result<Self> {
        let beams = self
            .beams
            .iter()
            .map(|b| Beam::new(b.intensity, rotation * b.direction, b.wavenumber, b.handedness))
            .collect::<Result<Vec<_>>>()?;
        BeamSet::new(beams, self.polarizability)
    }
}

/// SI polarizability `4πε₀ V` from a polarizability volume `V` (m³).
pub fn polarizability_from_volume(volume: f64) -> f64 {
    4.0 * PI * VACUUM_PERMITTIVITY * volume
}

/// Prefactor `I α²/(4π c ε₀²)` of a single beam.
fn beam_prefactor(intensity: f64, polarizability: f64) -> f64 {
    intensity * polarizability * polarizability / (4.0 * PI * SPEED_OF_LIGHT * VACUUM_PERMITTIVITY.powi(2))
}

fn separation(r: &Vector3<f64>) -> Result<(f64, Vector3<f64>)> {
    let d = r.norm();
    if d == 0.0 || !d.is_finite() {
        return Err(Error::SingularSeparation);
    }
    Ok((d, r / d))
}

fn static_part(n: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::identity() - 3.0 * n * n.transpose()
}

fn transverse_part(n: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::identity() - n * n.transpose()
}

fn contract(p: &Matrix3<Complex64>, v: &Matrix3<f64>) -> Complex64 {
    p.iter().zip(v.iter()).map(|(a, b)| a * b).sum()
}

/// Retarded dipole-dipole interaction tensor (1/m³).
///
/// `V_ij = r⁻³[(δ_ij - 3r̂_i r̂_j)(cos qr + qr sin qr) - (δ_ij - r̂_i r̂_j) q²r² cos qr]`.
pub fn retarded_tensor(q: f64, r: &Vector3<f64>) -> Result<Matrix3<f64>> {
    let (d, n) = separation(r)?;
    let x = q * d;
    let near = x.cos() + x * x.sin();
    let far = x * x * x.cos();
    Ok((static_part(&n) * near - transverse_part(&n) * far) / d.powi(3))
}

fn beam_term(beam: &Beam, polarizability: f64, r: &Vector3<f64>) -> Result<Complex64> {
    let v = retarded_tensor(beam.wavenumber, r)?;
    let phase = (beam.wavenumber * beam.direction.dot(r)).cos();
    Ok(contract(&beam.polarization_tensor(), &v) * beam_prefactor(beam.intensity, polarizability) * phase)
}

/// Pair potential including the (vanishing) imaginary part of the polarization contraction.
pub fn pair_potential_complex(set: &BeamSet, r: &Vector3<f64>) -> Result<Complex64> {
    separation(r)?;
    set.beams
        .iter()
        .map(|b| beam_term(b, set.polarizability, r))
        .sum::<Result<Complex64>>()
}

/// Induced pair potential (J) at separation `r`, summed incoherently over beams.
pub fn pair_potential(set: &BeamSet, r: &Vector3<f64>) -> Result<f64> {
    Ok(pair_potential_complex(set, r)?.re)
}

/// Near-zone expansion `U ≈ static/r³ + gravity/r` for one direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearZone {
    /// Coefficient of `r⁻³` (J m³).
    pub static_term: f64,
    /// Coefficient of `r⁻¹` (J m); `-u` for an isotropic attractive set.
    pub gravity_term: f64,
}

impl NearZone {
    pub fn potential(&self, distance: f64) -> f64 {
        self.static_term / distance.powi(3) + self.gravity_term / distance
    }
}

/// Near-zone coefficients along `direction`, from expanding `V_ij cos(q·r)` through `(qr)²`.
pub fn near_zone_coefficients(set: &BeamSet, direction: &Vector3<f64>) -> Result<NearZone> {
    let (_, n) = separation(direction)?;
    let stat = static_part(&n);
    let second = stat * 0.5 - transverse_part(&n);
    let mut out = NearZone {
        static_term: 0.0,
        gravity_term: 0.0,
    };
    for b in &set.beams {
        let p = b.polarization_tensor();
        let pref = beam_prefactor(b.intensity, set.polarizability);
        let c = b.direction.dot(&n);
        let ps = contract(&p, &stat).re;
        out.static_term += pref * ps;
        out.gravity_term += pref * b.wavenumber.powi(2) * (contract(&p, &second).re - 0.5 * c * c * ps);
    }
    Ok(out)
}

/// Near-zone pair potential (J), [`near_zone_coefficients`] evaluated at `|r|`.
pub fn near_zone_potential(set: &BeamSet, r: &Vector3<f64>) -> Result<f64> {
    let (d, _) = separation(r)?;
    Ok(near_zone_coefficients(set, r)?.potential(d))
}

/// Angular factor of the triad potential,
/// `7/3 + (sinθ cosφ)⁴ + (sinθ sinφ)⁴ + cos⁴θ`.
pub fn triad_bracket(theta: f64, phi: f64) -> f64 {
    let n = Vector3::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos());
    triad_bracket_direction(&n)
}

/// [`triad_bracket`] for a unit vector in the triad's frame.
pub fn triad_bracket_direction(n: &Vector3<f64>) -> f64 {
    7.0 / 3.0 + n.x.powi(4) + n.y.powi(4) + n.z.powi(4)
}

/// `3Iq²α²/(16π c ε₀²)`: the near-zone triad potential is `-prefactor·bracket/r`.
pub fn triad_prefactor(intensity: f64, wavenumber: f64, polarizability: f64) -> f64 {
    3.0 * intensity * wavenumber.powi(2) * polarizability.powi(2)
        / (16.0 * PI * SPEED_OF_LIGHT * VACUUM_PERMITTIVITY.powi(2))
}

/// Triad orientation: rotation by `alpha` about z, then `beta` about the new y,
/// then `gamma` about the final z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl EulerAngles {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    /// `Rz(α) Ry(β) Rz(γ)`.
    pub fn rotation(&self) -> Matrix3<f64> {
        rot_z(self.alpha) * rot_y(self.beta) * rot_z(self.gamma)
    }

    /// Beam axes of the rotated triad: the rows of [`EulerAngles::rotation`].
    pub fn triad_axes(&self) -> [Vector3<f64>; 3] {
        let r = self.rotation();
        [0, 1, 2].map(|i| r.row(i).transpose())
    }
}

fn rot_z(a: f64) -> Matrix3<f64> {
    let (s, c) = a.sin_cos();
    Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
}

fn rot_y(a: f64) -> Matrix3<f64> {
    let (s, c) = a.sin_cos();
    Matrix3::new(c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c)
}

/// Three orthogonal left-circular beams along the axes of `orientation`.
pub fn build_triad(intensity: f64, wavenumber: f64, orientation: &EulerAngles) -> Result<Vec<Beam>> {
    orientation
        .triad_axes()
        .into_iter()
        .map(|d| Beam::new(intensity, d, wavenumber, Handedness::Left))
        .collect()
}

/// Euler angles and relative intensities of the isotropic six-triad arrangement.
pub fn six_triad_orientations() -> [(EulerAngles, f64); 6] {
    let q = PI / 4.0;
    let e = PI / 8.0;
    [
        (EulerAngles::new(0.0, q, e), 1.0),
        (EulerAngles::new(0.0, q, -e), 1.0),
        (EulerAngles::new(0.0, q, 3.0 * e), 1.0),
        (EulerAngles::new(0.0, q, -3.0 * e), 1.0),
        (EulerAngles::new(0.0, 0.0, e), 0.5),
        (EulerAngles::new(0.0, 0.0, -e), 0.5),
    ]
}

/// A single triad along the lab axes.
pub fn build_single_triad(intensity: f64, wavenumber: f64, polarizability: f64) -> Result<BeamSet> {
    BeamSet::new(
        build_triad(intensity, wavenumber, &EulerAngles::new(0.0, 0.0, 0.0))?,
        polarizability,
    )
}

/// The 18-beam arrangement whose near-zone potential is exactly `-u/r`.
pub fn build_six_triad(intensity: f64, wavenumber: f64, polarizability: f64) -> Result<BeamSet> {
    require(intensity >= 0.0, "intensity", intensity, "must be non-negative")?;
    let mut beams = Vec::with_capacity(18);
    for (euler, weight) in six_triad_orientations() {
        beams.extend(build_triad(weight * intensity, wavenumber, &euler)?);
    }
    BeamSet::new(beams, polarizability)
}

/// `u = (11/4π) I q² α²/(c ε₀²)` (J m).
pub fn isotropic_coupling_u(intensity: f64, wavenumber: f64, polarizability: f64) -> f64 {
    11.0 / (4.0 * PI) * intensity * wavenumber.powi(2) * polarizability.powi(2)
        / (SPEED_OF_LIGHT * VACUUM_PERMITTIVITY.powi(2))
}

/// Relative standard deviation of the `r⁻¹` near-zone coefficient over
/// `n_samples` seeded quasi-random directions. Zero for an isotropic set.
pub fn anisotropy_metric(set: &BeamSet, n_samples: usize, seed: u64) -> Result<f64> {
    if n_samples < 2 {
        return Err(Error::Domain(format!("anisotropy needs at least 2 samples, got {n_samples}")));
    }
    let values = sphere_directions(n_samples, seed)
        .iter()
        .map(|n| near_zone_coefficients(set, n).map(|c| c.gravity_term))
        .collect::<Result<Vec<_>>>()?;
    let mean = values.iter().sum::<f64>() / n_samples as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n_samples as f64;
    if mean == 0.0 {
        return Ok(if var == 0.0 { 0.0 } else { f64::INFINITY });
    }
    Ok(var.sqrt() / mean.abs())
}

/// Amplitude `A(r) = -3u xy/(q² r⁵)` of one oscillating interference term (J).
pub fn interference_term(u: f64, q: f64, r: &Vector3<f64>) -> Result<f64> {
    let (d, _) = separation(r)?;
    Ok(-3.0 * u * r.x * r.y / (q * q * d.powi(5)))
}

/// `(θ, φ, bracket)` on a regular grid, θ ∈ [0, π], φ ∈ [0, 2π).
pub fn angular_map(n_theta: usize, n_phi: usize) -> Vec<(f64, f64, f64)> {
    let dtheta = if n_theta > 1 { PI / (n_theta - 1) as f64 } else { 0.0 };
    let dphi = 2.0 * PI / n_phi.max(1) as f64;
    (0..n_theta)
        .flat_map(|i| (0..n_phi).map(move |j| (i as f64 * dtheta, j as f64 * dphi)))
        .map(|(t, p)| (t, p, triad_bracket(t, p)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physical::SODIUM_POLARIZABILITY_VOLUME;
    use crate::quadrature::{sphere_average, sphere_directions};
    use approx::assert_relative_eq;
    use nalgebra::Rotation3;
    use proptest::prelude::*;

    const Q: f64 = 5.9e5;
    const I: f64 = 1e8;

    fn alpha() -> f64 {
        polarizability_from_volume(SODIUM_POLARIZABILITY_VOLUME)
    }

    #[test]
    fn tensor_along_z_has_closed_form() {
        let d = 2.3e-6;
        let v = retarded_tensor(Q, &Vector3::new(0.0, 0.0, d)).unwrap();
        let x = Q * d;
        assert_relative_eq!(v[(2, 2)], -2.0 / d.powi(3) * (x.cos() + x * x.sin()), max_relative = 1e-13);
        assert_eq!(v, v.transpose());
    }

    #[test]
    fn tensor_static_limit() {
        let d = 1e-10;
        let v = retarded_tensor(Q, &Vector3::new(0.0, 0.0, d)).unwrap();
        assert_relative_eq!(v[(2, 2)] * d.powi(3), -2.0, max_relative = 1e-8);
        assert_relative_eq!(v[(0, 0)] * d.powi(3), 1.0, max_relative = 1e-8);
    }

    #[test]
    fn tensor_even_in_separation() {
        let r = Vector3::new(1e-6, -2e-6, 0.7e-6);
        assert_eq!(retarded_tensor(Q, &r).unwrap(), retarded_tensor(Q, &(-r)).unwrap());
    }

    #[test]
    fn zero_separation_is_singular() {
        let set = build_single_triad(I, Q, alpha()).unwrap();
        assert_eq!(retarded_tensor(Q, &Vector3::zeros()), Err(Error::SingularSeparation));
        assert_eq!(pair_potential(&set, &Vector3::zeros()), Err(Error::SingularSeparation));
        assert_eq!(interference_term(1.0, Q, &Vector3::zeros()), Err(Error::SingularSeparation));
    }

    #[test]
    fn polarization_tensor_identity() {
        for hand in [Handedness::Left, Handedness::Right] {
            let b = Beam::new(1.0, Vector3::new(0.3, -0.5, 0.8), Q, hand).unwrap();
            let q = b.direction();
            let p = b.polarization_tensor();
            let eps = |i: usize, j: usize, k: usize| -> f64 {
                match (i, j, k) {
                    (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
                    (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
                    _ => 0.0,
                }
            };
            for i in 0..3 {
                for j in 0..3 {
                    let delta = if i == j { 1.0 } else { 0.0 };
                    let im: f64 = (0..3).map(|k| eps(i, j, k) * q[k]).sum();
                    let expected = Complex64::new(0.5 * (delta - q[i] * q[j]), 0.5 * hand.sign() * im);
                    assert!((p[(i, j)] - expected).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn potential_is_frame_independent() {
        // Rotating the transverse frame only changes the polarization by a phase.
        let b = Beam::new(I, Vector3::new(0.2, 0.9, -0.4), Q, Handedness::Right).unwrap();
        let (e1, e2) = b.transverse_frame();
        let t = 0.77f64;
        let f1 = e1 * t.cos() + e2 * t.sin();
        let f2 = -e1 * t.sin() + e2 * t.cos();
        let p1 = outer_conj(&polarization_in_frame(e1, e2, b.handedness));
        let p2 = outer_conj(&polarization_in_frame(f1, f2, b.handedness));
        assert!((p1 - p2).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn zero_polarizability_gives_zero() {
        let set = build_six_triad(I, Q, 0.0).unwrap();
        for n in sphere_directions(20, 1) {
            assert_eq!(pair_potential(&set, &(n * 1e-7)).unwrap(), 0.0);
        }
    }

    #[test]
    fn potential_is_real_for_circular_beams() {
        let set = build_six_triad(I, Q, alpha()).unwrap();
        for n in sphere_directions(50, 9) {
            let u = pair_potential_complex(&set, &(n * 3e-7)).unwrap();
            assert!(u.im.abs() <= 1e-12 * u.re.abs());
        }
    }

    #[test]
    fn triad_matches_near_zone_formula() {
        let set = build_single_triad(I, Q, alpha()).unwrap();
        let pref = triad_prefactor(I, Q, alpha());
        for n in sphere_directions(64, 5) {
            let d = 1e-3 / Q;
            let exact = pair_potential(&set, &(n * d)).unwrap();
            let formula = -pref * triad_bracket_direction(&n) / d;
            let qr2 = (Q * d).powi(2);
            assert!((exact / formula - 1.0).abs() < 10.0 * qr2, "dir {n:?}");
            let nz = near_zone_coefficients(&set, &n).unwrap();
            assert!(nz.static_term.abs() < 1e-12 * pref / (Q * Q));
            assert_relative_eq!(nz.gravity_term, -pref * triad_bracket_direction(&n), max_relative = 1e-12);
        }
    }

    #[test]
    fn bracket_special_values() {
        assert_eq!(triad_bracket(0.0, 0.0), 10.0 / 3.0);
        let n = Vector3::new(1.0, 1.0, 1.0).normalize();
        assert!((triad_bracket_direction(&n) - 8.0 / 3.0).abs() < 1e-14);
        let avg = sphere_average(8, 16, triad_bracket_direction);
        assert_relative_eq!(avg, 44.0 / 15.0, max_relative = 1e-14);
    }

    #[test]
    fn six_triad_construction() {
        let set = build_six_triad(I, Q, alpha()).unwrap();
        assert_eq!(set.beams().len(), 18);
        assert_relative_eq!(set.total_intensity(), 15.0 * I, max_relative = 1e-14);
        assert!(set.beams().iter().all(|b| (b.direction().norm() - 1.0).abs() < 1e-12));
        assert!(anisotropy_metric(&set, 2000, 0).unwrap() < 1e-12);
    }

    #[test]
    fn six_triad_is_isotropic_attraction() {
        let set = build_six_triad(I, Q, alpha()).unwrap();
        let u = isotropic_coupling_u(I, Q, alpha());
        for n in sphere_directions(200, 2) {
            let nz = near_zone_coefficients(&set, &n).unwrap();
            assert_relative_eq!(nz.gravity_term, -u, max_relative = 1e-12);
            assert!(nz.static_term.abs() < 1e-12 * u / (Q * Q));
            assert!(pair_potential(&set, &(n * 1e-2 / Q)).unwrap() < 0.0);
        }
    }

    #[test]
    fn column_reading_of_euler_angles_is_not_isotropic() {
        let mut beams = Vec::new();
        for (e, w) in six_triad_orientations() {
            let r = e.rotation();
            for k in 0..3 {
                beams.push(Beam::new(w * I, r.column(k).into_owned(), Q, Handedness::Left).unwrap());
            }
        }
        let set = BeamSet::new(beams, alpha()).unwrap();
        assert!(anisotropy_metric(&set, 2000, 0).unwrap() > 1e-3);
    }

    #[test]
    fn single_triad_anisotropy() {
        let set = build_single_triad(I, Q, alpha()).unwrap();
        let m = anisotropy_metric(&set, 20_000, 11).unwrap();
        // Exact: sqrt(41/105 - 9/25) / (44/15).
        let exact = (41.0f64 / 105.0 - 9.0 / 25.0).sqrt() / (44.0 / 15.0);
        assert!((0.05..0.08).contains(&m));
        assert_relative_eq!(m, exact, max_relative = 1e-2);
        assert_eq!(m, anisotropy_metric(&set, 20_000, 11).unwrap());
        assert!(anisotropy_metric(&set, 1, 0).is_err());
    }

    #[test]
    fn isotropic_coupling_zero_intensity() {
        assert_eq!(isotropic_coupling_u(0.0, Q, alpha()), 0.0);
    }

    #[test]
    fn sodium_lower_bound_order_of_magnitude() {
        // CO₂ laser, 10.6 µm.
        let q = 2.0 * PI / 10.6e-6;
        let u = isotropic_coupling_u(1e8, q, alpha());
        let ev = u / 100e-9 / crate::physical::ELECTRON_VOLT;
        assert!(ev > 2e-20 && ev < 2e-18, "|u/r| = {ev:e} eV");
    }

    #[test]
    fn orientation_average_of_static_part_vanishes() {
        let b = Beam::new(1.0, Vector3::new(0.1, 0.4, 0.9), Q, Handedness::Left).unwrap();
        let p = b.polarization_tensor();
        let avg = sphere_average(6, 12, |n| contract(&p, &static_part(n)).re);
        assert!(avg.abs() < 1e-15);
        let mc = sphere_directions(100_000, 4)
            .iter()
            .map(|n| contract(&p, &static_part(n)).re)
            .sum::<f64>()
            / 100_000.0;
        assert!(mc.abs() < 1e-3);
    }

    #[test]
    fn interference_values() {
        let u = 2.0;
        let d = 1e-6;
        assert_eq!(interference_term(u, Q, &Vector3::new(0.0, 0.0, d)).unwrap(), 0.0);
        let a = interference_term(u, Q, &Vector3::new(d, d, 0.0)).unwrap();
        let expected = -3.0 * u / (Q * Q * 2f64.powf(2.5) * d.powi(3));
        assert_relative_eq!(a, expected, max_relative = 1e-14);
        let r = Vector3::new(0.3e-6, 0.5e-6, -0.2e-6);
        let mirrored = Vector3::new(-r.x, r.y, r.z);
        assert_eq!(
            interference_term(u, Q, &r).unwrap(),
            -interference_term(u, Q, &mirrored).unwrap()
        );
    }

    #[test]
    fn mixed_wavenumbers_rejected() {
        let a = Beam::new(1.0, Vector3::x(), 1.0, Handedness::Left).unwrap();
        let b = Beam::new(1.0, Vector3::y(), 2.0, Handedness::Left).unwrap();
        assert!(BeamSet::new(vec![a, b], 1.0).is_err());
    }

    #[test]
    fn angular_map_shape() {
        let m = angular_map(5, 8);
        assert_eq!(m.len(), 40);
        assert_eq!(m[0].2, 10.0 / 3.0);
    }

    proptest! {
        #[test]
        fn pair_potential_rotation_invariant(
            axis in prop::array::uniform3(-1.0..1.0f64),
            angle in 0.0..std::f64::consts::TAU,
            r in prop::array::uniform3(-1.0..1.0f64),
            scale in 0.01..3.0f64,
        ) {
            let axis = Vector3::from(axis);
            let r = Vector3::from(r);
            prop_assume!(axis.norm() > 1e-3 && r.norm() > 1e-3);
            let rot = Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(axis), angle).into_inner();
            let set = build_single_triad(I, Q, alpha()).unwrap();
            let r = r.normalize() * scale / Q;
            let a = pair_potential(&set, &r).unwrap();
            let b = pair_potential(&set.rotated(&rot).unwrap(), &(rot * r)).unwrap();
            prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(1e-300));
        }
    }
}
