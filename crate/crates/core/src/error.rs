use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no gravity-like coupling: u = 0 leaves the gravitational Bohr radius undefined")]
    NoCoupling,
    #[error("trapless: dimensionless pair undefined for omega0 = 0, use gravitational units")]
    Trapless,
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("singular separation: |r| = 0")]
    SingularSeparation,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("region taxonomy undefined for attractive scattering (s_tilde = {0})")]
    AttractiveScattering(f64),
    #[error("state is not normalized: integral {actual} vs target {target}")]
    NotNormalized { actual: f64, target: f64 },
    #[error(
        "collapse: central density grew {growth:.3e}x in {iterations} iterations, energy {energy:.6e} still decreasing"
    )]
    Collapse {
        iterations: usize,
        growth: f64,
        energy: f64,
    },
    #[error(
        "no convergence after {iterations} iterations (relative energy change {energy_change:.3e}, virial residual {virial:.3e})"
    )]
    NoConvergence {
        iterations: usize,
        energy_change: f64,
        virial: f64,
    },
    #[error("quadrature did not converge: residual estimate {0:.3e}")]
    Quadrature(f64),
}

pub(crate) fn require(cond: bool, name: &'static str, value: f64, reason: &'static str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value, reason })
    }
}
