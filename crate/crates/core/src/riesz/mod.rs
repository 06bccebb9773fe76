//! The Riesz self-interaction `∬_{Ω×Ω} |x − y|^{−α}` and the potential
//! `v(x) = ∫_Ω |x − y|^{−α} dy`.
//!
//! Quadrature goes through boundary integrals. With
//! `Δ|z|^{2−α} = (2−α)²|z|^{−α}` in the plane, the divergence theorem gives
//!
//! ```text
//! v(x)  =  (2−α)^{-1}  ∮ |x−y|^{−α} (y−x)·n(y) dℓ(y)
//! E_nl  = −(2−α)^{-2}  ∮∮ |x−y|^{2−α} n(x)·n(y) dℓ(x) dℓ(y)
//! ```
//!
//! The second kernel is continuous for α < 2, so the energy needs no
//! singular quadrature beyond adaptive bisection at the diagonal.
//! Ordered pairs are counted, so two components interact with factor 2.

mod closed;
mod energy;
mod mc;
mod quad;

pub use closed::{
    ball_energy_closed, ball_nonlocal_coeff, ball_potential_closed, ball_potential_v0,
    boundary_expansion_leading, ellipse_energy_closed,
};
pub use energy::{disk_system_bracket, disk_system_energy, total_energy, DiskSystemEnergy};
pub use mc::{mc_nonlocal_oracle, McEstimate};
pub use quad::{
    cross_interaction, nonlocal_energy, potential_at, potential_many, self_interaction, Estimate,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Riesz exponent, restricted to `[0.05, 1.95]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64", bound = "T: Real")]
pub struct Alpha<T>(T);

pub const ALPHA_MIN: f64 = 0.05;
pub const ALPHA_MAX: f64 = 1.95;

impl<T: Real> Alpha<T> {
    pub fn new(value: T) -> Result<Self> {
        if value.is_finite() && value >= T::lit(ALPHA_MIN) && value <= T::lit(ALPHA_MAX) {
            Ok(Self(value))
        } else {
            Err(Error::AlphaRange(value.to_f64_lossy()))
        }
    }

    #[inline]
    pub fn get(self) -> T {
        self.0
    }
}

impl<T: Real> TryFrom<f64> for Alpha<T> {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        Alpha::new(T::lit(v))
    }
}

impl<T: Real> From<Alpha<T>> for f64 {
    fn from(a: Alpha<T>) -> f64 {
        a.0.to_f64_lossy()
    }
}

/// Quadrature and Monte-Carlo settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    /// Gauss–Legendre panels per closed boundary curve (≥ 64).
    pub boundary_panels: usize,
    /// Length below which near-singular panels are no longer bisected.
    pub singular_split_radius: f64,
    pub mc_samples: usize,
    pub mc_seed: u64,
    /// Relative error estimate above which quadrature reports failure.
    pub tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            boundary_panels: 64,
            singular_split_radius: 1e-10,
            mc_samples: 1_000_000,
            mc_seed: 0x5eed,
            tol: 1e-8,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.boundary_panels < 64 {
            return Err(Error::Precondition(format!(
                "boundary_panels = {} must be at least 64",
                self.boundary_panels
            )));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::Precondition(format!(
                "tol = {} must be positive",
                self.tol
            )));
        }
        if self.singular_split_radius.is_nan() || self.singular_split_radius < 0.0 {
            return Err(Error::Precondition(
                "singular_split_radius must be >= 0".into(),
            ));
        }
        Ok(())
    }
}

/// Energy split into its two terms at given (α, mass).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyBreakdown<T> {
    pub perimeter: T,
    pub nonlocal: T,
    pub total: T,
    pub alpha: T,
    pub mass: T,
    /// Estimated absolute error of `nonlocal` (0 for closed forms).
    pub err_estimate: T,
}

impl<T: Real> EnergyBreakdown<T> {
    pub fn new(perimeter: T, nonlocal: T, alpha: Alpha<T>, mass: T, err_estimate: T) -> Self {
        Self {
            perimeter,
            nonlocal,
            total: perimeter + nonlocal,
            alpha: alpha.get(),
            mass,
            err_estimate,
        }
    }
}
