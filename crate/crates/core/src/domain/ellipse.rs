use serde::{Deserialize, Serialize};

use crate::domain::StarDomain;
use crate::error::{Error, Result};
use crate::quadrature::{Boundary, Segment};
use crate::scalar::{Point, Real};
use crate::specfun::elliptic_e;

/// Centred ellipse of area πR² and eccentricity e, major axis along x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "EllipseRaw<T>",
    bound(deserialize = "T: Real + Deserialize<'de>")
)]
pub struct EllipseDomain<T> {
    radius: T,
    eccentricity: T,
}

#[derive(Deserialize)]
struct EllipseRaw<T> {
    radius: T,
    eccentricity: T,
}

impl<T: Real> TryFrom<EllipseRaw<T>> for EllipseDomain<T> {
    type Error = Error;
    fn try_from(raw: EllipseRaw<T>) -> Result<Self> {
        EllipseDomain::new(raw.radius, raw.eccentricity)
    }
}

impl<T: Real> EllipseDomain<T> {
    pub fn new(radius: T, eccentricity: T) -> Result<Self> {
        if !(radius.is_finite() && radius > T::zero()) {
            return Err(Error::InvalidDomain(format!(
                "ellipse radius {radius} must be positive"
            )));
        }
        if !(eccentricity >= T::zero() && eccentricity < T::one()) {
            return Err(Error::InvalidDomain(format!(
                "eccentricity {eccentricity} outside [0, 1)"
            )));
        }
        Ok(Self {
            radius,
            eccentricity,
        })
    }

    /// Effective radius R (area πR²).
    pub fn radius(&self) -> T {
        self.radius
    }
    pub fn eccentricity(&self) -> T {
        self.eccentricity
    }

    /// Semi-axes (a, b) = (R(1−e²)^{−1/4}, R(1−e²)^{1/4}).
    pub fn semi_axes(&self) -> (T, T) {
        let q = (T::one() - self.eccentricity * self.eccentricity).powf(T::lit(0.25));
        (self.radius / q, self.radius * q)
    }

    pub fn area(&self) -> T {
        T::PI() * self.radius * self.radius
    }

    /// 4a·E(e²), parameter convention.
    pub fn perimeter(&self) -> Result<T> {
        let (a, _) = self.semi_axes();
        Ok(T::lit(4.0) * a * elliptic_e(self.eccentricity * self.eccentricity)?)
    }

    pub fn diameter(&self) -> T {
        T::lit(2.0) * self.semi_axes().0
    }

    pub fn dilate(&self, lambda: T) -> Self {
        Self {
            radius: self.radius * lambda,
            ..*self
        }
    }

    pub fn contains(&self, p: Point<T>) -> bool {
        let (a, b) = self.semi_axes();
        (p[0] / a).powi(2) + (p[1] / b).powi(2) < T::one()
    }

    pub fn bounding_box(&self) -> [T; 4] {
        let (a, b) = self.semi_axes();
        [-a, -b, a, b]
    }

    /// Polar radius about the centre.
    pub fn polar_radius(&self, theta: T) -> T {
        let (a, b) = self.semi_axes();
        let (s, c) = theta.sin_cos();
        a * b / ((b * c).powi(2) + (a * s).powi(2)).sqrt()
    }

    /// Parametric boundary t ↦ (a cos t, b sin t).
    pub fn boundary(&self, panels: usize) -> Boundary<'static, T> {
        let (a, b) = self.semi_axes();
        Boundary::new(vec![Segment::new(
            move |t: T| {
                let (s, c) = t.sin_cos();
                ([a * c, b * s], [b * c, a * s])
            },
            T::zero(),
            T::TAU(),
            panels,
        )])
    }

    /// Fourier fit as a star domain with `modes` modes.
    pub fn to_star(&self, modes: usize) -> Result<StarDomain<T>> {
        StarDomain::from_radial_fn([T::zero(), T::zero()], modes, |t| self.polar_radius(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn area_and_axes() {
        let e = EllipseDomain::new(2.0, 0.6).unwrap();
        assert_relative_eq!(e.area(), 4.0 * PI, max_relative = 1e-15);
        let (a, b) = e.semi_axes();
        assert_relative_eq!(PI * a * b, 4.0 * PI, max_relative = 1e-14);
        assert_relative_eq!(
            EllipseDomain::new(1.0, 0.6).unwrap().diameter(),
            2.0 * 0.64f64.powf(-0.25),
            max_relative = 1e-15
        );
    }

    #[test]
    fn perimeter_against_arclength() {
        let c = EllipseDomain::new(1.0, 0.0).unwrap();
        assert_relative_eq!(c.perimeter().unwrap(), 2.0 * PI, max_relative = 1e-14);
        let e = EllipseDomain::new(1.0, 0.8).unwrap();
        assert_relative_eq!(
            e.boundary(32).length(),
            e.perimeter().unwrap(),
            max_relative = 1e-8
        );
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(EllipseDomain::new(1.0, 1.0).is_err());
        assert!(EllipseDomain::new(0.0, 0.5).is_err());
        assert!(EllipseDomain::new(1.0, -0.1).is_err());
    }

    #[test]
    fn star_fit_is_accurate() {
        let e = EllipseDomain::new(1.0, 0.3).unwrap();
        let s = e.to_star(32).unwrap();
        assert_relative_eq!(s.area(), e.area(), max_relative = 1e-12);
        assert_relative_eq!(s.perimeter(), e.perimeter().unwrap(), max_relative = 1e-12);
    }
}
