//! Planar shapes: star-shaped polar graphs, ellipses and disjoint disk
//! systems, with their geometric functionals.

mod cut;
mod disks;
mod ellipse;
pub(crate) mod star;

pub use cut::{cut_profile, diameter_direction, CutProfile, Slicer};
pub use disks::{Disk, DiskSystem};
pub use ellipse::EllipseDomain;
pub use star::{grid_size, project_modes, StarDomain};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::quadrature::Boundary;
use crate::scalar::{Point, Real};

/// Any of the supported shapes. Serialized untagged: the field names
/// (`r0`, `eccentricity`, `disks`) identify the variant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, bound(deserialize = "T: Real + Deserialize<'de>"))]
pub enum Domain<T> {
    Star(StarDomain<T>),
    Ellipse(EllipseDomain<T>),
    Disks(DiskSystem<T>),
}

impl<T: Real> From<StarDomain<T>> for Domain<T> {
    fn from(d: StarDomain<T>) -> Self {
        Domain::Star(d)
    }
}
impl<T: Real> From<EllipseDomain<T>> for Domain<T> {
    fn from(d: EllipseDomain<T>) -> Self {
        Domain::Ellipse(d)
    }
}
impl<T: Real> From<DiskSystem<T>> for Domain<T> {
    fn from(d: DiskSystem<T>) -> Self {
        Domain::Disks(d)
    }
}

impl<T: Real> Domain<T> {
    pub fn area(&self) -> T {
        match self {
            Domain::Star(d) => d.area(),
            Domain::Ellipse(d) => d.area(),
            Domain::Disks(d) => d.area(),
        }
    }

    pub fn perimeter(&self) -> Result<T> {
        Ok(match self {
            Domain::Star(d) => d.perimeter(),
            Domain::Ellipse(d) => d.perimeter()?,
            Domain::Disks(d) => d.perimeter(),
        })
    }

    pub fn diameter(&self) -> T {
        match self {
            Domain::Star(d) => d.diameter(),
            Domain::Ellipse(d) => d.diameter(),
            Domain::Disks(d) => d.diameter(),
        }
    }

    pub fn dilate(&self, lambda: T) -> Self {
        match self {
            Domain::Star(d) => Domain::Star(d.dilate(lambda)),
            Domain::Ellipse(d) => Domain::Ellipse(d.dilate(lambda)),
            Domain::Disks(d) => Domain::Disks(d.dilate(lambda)),
        }
    }

    pub fn contains(&self, p: Point<T>) -> bool {
        match self {
            Domain::Star(d) => d.contains(p),
            Domain::Ellipse(d) => d.contains(p),
            Domain::Disks(d) => d.contains(p),
        }
    }

    pub fn bounding_box(&self) -> [T; 4] {
        match self {
            Domain::Star(d) => d.bounding_box(),
            Domain::Ellipse(d) => d.bounding_box(),
            Domain::Disks(d) => d.bounding_box(),
        }
    }

    /// Panelled boundary; `panels` is the panel count per closed curve.
    pub fn boundary(&self, panels: usize) -> Boundary<'_, T> {
        match self {
            Domain::Star(d) => d.boundary(panels),
            Domain::Ellipse(d) => d.boundary(panels),
            Domain::Disks(d) => d.boundary(panels),
        }
    }

    /// |∂Ω|/(2π) − 1 after rescaling to area π, i.e. P/(2√(πA)) − 1.
    pub fn isoperimetric_deficit(&self) -> Result<T> {
        Ok(self.perimeter()? / (T::lit(2.0) * (T::PI() * self.area()).sqrt()) - T::one())
    }
}

/// Boundary samples on the standard grid as CSV `theta,r,x,y`.
pub fn boundary_csv<T: Real>(dom: &StarDomain<T>) -> String {
    let mut out = String::from("theta,r,x,y\n");
    for t in dom.grid() {
        let p = dom.point(t);
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e}\n",
            t.to_f64_lossy(),
            dom.radius(t).to_f64_lossy(),
            p[0].to_f64_lossy(),
            p[1].to_f64_lossy()
        ));
    }
    out
}
