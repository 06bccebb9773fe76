//! Numerics for the planar isoperimetric problem with Riesz repulsion,
//! `E(Ω) = |∂Ω| + ∬_{Ω×Ω} |x − y|^{−α} dx dy` at fixed area.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below are what the command-line tool uses.

pub mod critical;
pub mod domain;
pub mod error;
pub mod minimize;
pub mod quadrature;
pub mod riesz;
pub mod roots;
pub mod scalar;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::{Point, Real};

pub type StarDomain64 = domain::StarDomain<f64>;
pub type StarDomain32 = domain::StarDomain<f32>;
pub type EllipseDomain64 = domain::EllipseDomain<f64>;
pub type DiskSystem64 = domain::DiskSystem<f64>;
pub type Domain64 = domain::Domain<f64>;
