use serde::Serialize;

use crate::domain::{Disk, DiskSystem, Domain};
use crate::error::Result;
use crate::quadrature::Boundary;
use crate::riesz::{
    ball_energy_closed, cross_interaction, ellipse_energy_closed, nonlocal_energy, Alpha,
    EnergyBreakdown, QuadratureConfig,
};
use crate::scalar::{dist, Real};

/// Energy of a disk system together with the separation bracket.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskSystemEnergy<T> {
    pub energy: EnergyBreakdown<T>,
    /// Bounds on `energy.total` from |x−y| ∈ [dᵢⱼ − rᵢ − rⱼ, dᵢⱼ + rᵢ + rⱼ].
    pub lower: T,
    pub upper: T,
}

/// Total energy, routed to closed forms for ellipses and single disks and
/// to [`disk_system_energy`] for several disks.
pub fn total_energy<T: Real>(
    dom: &Domain<T>,
    alpha: Alpha<T>,
    cfg: &QuadratureConfig,
) -> Result<EnergyBreakdown<T>> {
    match dom {
        Domain::Ellipse(e) => ellipse_energy_closed(e.radius(), e.eccentricity(), alpha),
        Domain::Disks(s) if s.len() == 1 => ball_energy_closed(s.disks()[0].radius, alpha),
        Domain::Disks(s) => Ok(disk_system_energy(s, alpha, cfg)?.energy),
        Domain::Star(_) => {
            let nl = nonlocal_energy(dom, alpha, cfg)?;
            Ok(EnergyBreakdown::new(
                dom.perimeter()?,
                nl.value,
                alpha,
                dom.area(),
                nl.err,
            ))
        }
    }
}

fn circle<T: Real>(d: Disk<T>, panels: usize, split: T) -> Boundary<'static, T> {
    DiskSystem::single(d.center, d.radius)
        .expect("disk from a validated system")
        .boundary(panels)
        .with_min_panel_len(split)
}

/// `(perimeter, self nonlocal, lower cross, upper cross)` for a disk system,
/// all in closed form; cross bounds count ordered pairs.
pub fn disk_system_bracket<T: Real>(sys: &DiskSystem<T>, alpha: Alpha<T>) -> Result<[T; 4]> {
    let a = alpha.get();
    let two = T::lit(2.0);
    let disks = sys.disks();
    let mut out = [T::zero(); 4];
    for d in disks {
        let e = ball_energy_closed(d.radius, alpha)?;
        out[0] = out[0] + e.perimeter;
        out[1] = out[1] + e.nonlocal;
    }
    for i in 0..disks.len() {
        for j in i + 1..disks.len() {
            let (di, dj) = (disks[i], disks[j]);
            let mm = two * di.area() * dj.area();
            let c = dist(di.center, dj.center);
            let gap = di.radius + dj.radius;
            out[2] = out[2] + mm / (c + gap).powf(a);
            out[3] = out[3] + mm / (c - gap).powf(a);
        }
    }
    Ok(out)
}

/// Closed-form self energies plus quadrature of the pairwise interactions
/// (each unordered pair counted twice).
pub fn disk_system_energy<T: Real>(
    sys: &DiskSystem<T>,
    alpha: Alpha<T>,
    cfg: &QuadratureConfig,
) -> Result<DiskSystemEnergy<T>> {
    cfg.validate()?;
    let two = T::lit(2.0);
    let disks = sys.disks();
    let split = T::lit(cfg.singular_split_radius);
    let [perimeter, self_nl, lo, hi] = disk_system_bracket(sys, alpha)?;
    let mut cross = T::zero();
    let mut err = T::zero();
    for i in 0..disks.len() {
        for j in i + 1..disks.len() {
            let (di, dj) = (disks[i], disks[j]);
            let p = cfg.boundary_panels;
            let fine = cross_interaction(&circle(di, p, split), &circle(dj, p, split), alpha);
            let coarse =
                cross_interaction(&circle(di, p / 2, split), &circle(dj, p / 2, split), alpha);
            cross = cross + two * fine;
            err = err + two * (fine - coarse).abs();
        }
    }
    let energy = EnergyBreakdown::new(perimeter, self_nl + cross, alpha, sys.area(), err);
    let base = perimeter + self_nl;
    Ok(DiskSystemEnergy {
        energy,
        lower: base + lo,
        upper: base + hi,
    })
}
