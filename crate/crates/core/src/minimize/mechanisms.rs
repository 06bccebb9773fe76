use serde::Serialize;

use crate::domain::{diameter_direction, Disk, DiskSystem, Domain, Slicer, StarDomain};
use crate::error::{Error, Result};
use crate::riesz::{
    cross_interaction, disk_system_bracket, disk_system_energy, self_interaction, total_energy,
    Alpha, EnergyBreakdown, QuadratureConfig,
};
use crate::roots::golden_min;
use crate::scalar::{Point, Real};

/// Outcome of cutting along lines perpendicular to `direction` and moving
/// the two pieces infinitely far apart.
#[derive(Debug, Clone, Serialize)]
pub struct LineCut<T> {
    pub direction: Point<T>,
    /// Offset of the best cut from the supporting line.
    pub s_star: T,
    /// −min Δ(s); positive means the cut lowers the energy.
    pub gain: T,
    /// Sampled (s, Δ(s)).
    pub samples: Vec<(T, T)>,
}

fn pieces_panels(cfg: &QuadratureConfig) -> usize {
    cfg.boundary_panels
}

/// Δ(s) = 2A(s) − 2∬_{Ω_s × Ω∖Ω_s} |x−y|^{−α}.
pub fn cut_delta<T: Real>(sl: &Slicer<'_, T>, s: T, alpha: Alpha<T>, cfg: &QuadratureConfig) -> T {
    let split = T::lit(cfg.singular_split_radius);
    let (lo, hi) = sl.pieces(s, pieces_panels(cfg));
    let (lo, hi) = (lo.with_min_panel_len(split), hi.with_min_panel_len(split));
    let two = T::lit(2.0);
    two * sl.section(s) - two * cross_interaction(&lo, &hi, alpha)
}

/// Δ(s) through `E_nl(Ω) − E_nl(Ω_s) − E_nl(Ω∖Ω_s)` instead of the cross term.
pub fn cut_delta_by_energies<T: Real>(
    sl: &Slicer<'_, T>,
    dom: &StarDomain<T>,
    s: T,
    alpha: Alpha<T>,
    cfg: &QuadratureConfig,
) -> T {
    let split = T::lit(cfg.singular_split_radius);
    let (lo, hi) = sl.pieces(s, pieces_panels(cfg));
    let (lo, hi) = (lo.with_min_panel_len(split), hi.with_min_panel_len(split));
    let whole = dom.boundary(cfg.boundary_panels).with_min_panel_len(split);
    let released = self_interaction(&whole, alpha)
        - self_interaction(&lo, alpha)
        - self_interaction(&hi, alpha);
    T::lit(2.0) * sl.section(s) - released
}

/// Scan cuts perpendicular to the diameter at `n_s` interior offsets, then
/// refine the best one by golden-section search.
pub fn line_cut_test<T: Real>(
    dom: &StarDomain<T>,
    alpha: Alpha<T>,
    cfg: &QuadratureConfig,
    n_s: usize,
) -> Result<LineCut<T>> {
    cfg.validate()?;
    let n_s = n_s.max(3);
    let sl = Slicer::new(dom, diameter_direction(dom))?;
    let d = sl.width();
    let step = d / T::from_usize_lossy(n_s + 1);
    let mut samples: Vec<(T, T)> = (1..=n_s)
        .map(|i| {
            let s = step * T::from_usize_lossy(i);
            (s, cut_delta(&sl, s, alpha, cfg))
        })
        .collect();
    let (ib, _) = samples
        .iter()
        .enumerate()
        .min_by(|x, y| x.1 .1.partial_cmp(&y.1 .1).unwrap())
        .expect("at least three samples");
    let (s0, s1) = (samples[ib].0 - step, samples[ib].0 + step);
    let (s_star, best) = golden_min(|s| cut_delta(&sl, s, alpha, cfg), s0, s1, d * T::lit(1e-4));
    let (s_star, best) = if best <= samples[ib].1 {
        (s_star, best)
    } else {
        samples[ib]
    };
    samples.push((s_star, best));
    samples.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    Ok(LineCut {
        direction: sl.direction(),
        s_star,
        gain: -best,
        samples,
    })
}

/// E(sys) − E(sys without disk i, dilated by λ = √(m/(m − mᵢ))).
pub fn erase_dilate_gain<T: Real>(
    sys: &DiskSystem<T>,
    i: usize,
    alpha: Alpha<T>,
    cfg: &QuadratureConfig,
) -> Result<T> {
    if sys.len() < 2 {
        return Err(Error::Precondition(
            "erase-and-dilate needs at least two disks".into(),
        ));
    }
    let rest = DiskSystem::new(sys.without(i)?)?;
    let m = sys.area();
    let lambda = (m / (m - sys.disks()[i].area())).sqrt();
    let before = disk_system_energy(sys, alpha, cfg)?.energy.total;
    let after = disk_system_energy(&rest.dilate(lambda), alpha, cfg)?
        .energy
        .total;
    Ok(before - after)
}

/// `m / (|∂Ω|^{(2−α)/(3−α)} · E_nl^{1/(3−α)})`, invariant under dilation.
pub fn interpolation_ratio<T: Real>(
    dom: &Domain<T>,
    alpha: Alpha<T>,
    cfg: &QuadratureConfig,
) -> Result<T> {
    let e = total_energy(dom, alpha, cfg)?;
    let a = alpha.get();
    let three = T::lit(3.0);
    let two = T::lit(2.0);
    Ok(e.mass / (e.perimeter.powf((two - a) / (three - a)) * e.nonlocal.powf((three - a).recip())))
}

/// The chain of disks used for the linear upper bound on the minimal energy.
#[derive(Debug, Clone, Serialize)]
pub struct ChainAnsatz<T> {
    pub system: DiskSystem<T>,
    /// Perimeter exact; nonlocal is the rigorous upper bracket.
    pub energy: EnergyBreakdown<T>,
    pub unit_disks: usize,
    pub remainder_radius: T,
    pub spacing: T,
}

/// ⌊m/π⌋ unit disks plus one disk carrying the remaining mass, on a line
/// with centre spacing m^{1/α} + 2.
pub fn chain_ansatz_energy<T: Real>(m: T, alpha: Alpha<T>) -> Result<ChainAnsatz<T>> {
    if !(m.is_finite() && m >= T::one()) {
        return Err(Error::Precondition(format!(
            "chain ansatz needs m >= 1, got {m}"
        )));
    }
    let a = alpha.get();
    let n = (m / T::PI()).floor().to_usize().unwrap_or(0);
    let rem = ((m - T::PI() * T::from_usize_lossy(n)) / T::PI())
        .max(T::zero())
        .sqrt();
    let spacing = m.powf(a.recip()) + T::lit(2.0);
    let mut disks: Vec<Disk<T>> = (0..n)
        .map(|i| Disk {
            center: [spacing * T::from_usize_lossy(i), T::zero()],
            radius: T::one(),
        })
        .collect();
    // a remainder below rounding level is dropped
    if rem > T::epsilon().sqrt() {
        disks.push(Disk {
            center: [spacing * T::from_usize_lossy(n), T::zero()],
            radius: rem,
        });
    }
    let system = DiskSystem::new(disks)?;
    let [p, self_nl, _, upper] = disk_system_bracket(&system, alpha)?;
    let energy = EnergyBreakdown::new(p, self_nl + upper, alpha, system.area(), T::zero());
    Ok(ChainAnsatz {
        system,
        energy,
        unit_disks: n,
        remainder_radius: rem,
        spacing,
    })
}

/// The two elementary bounds behind c m^{1/α} ≤ diam ≤ C m.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DiameterCheck<T> {
    pub diameter: T,
    pub mass: T,
    pub energy: T,
    /// m²/d^α ≤ E
    pub lower_ok: bool,
    /// 2d ≤ E
    pub upper_ok: bool,
}

pub fn diameter_bounds_check<T: Real>(
    dom: &Domain<T>,
    alpha: Alpha<T>,
    cfg: &QuadratureConfig,
) -> Result<DiameterCheck<T>> {
    if let Domain::Disks(s) = dom {
        if s.len() > 1 {
            return Err(Error::Precondition(
                "diameter bounds need a connected domain".into(),
            ));
        }
    }
    let e = total_energy(dom, alpha, cfg)?;
    let d = dom.diameter();
    let m = e.mass;
    Ok(DiameterCheck {
        diameter: d,
        mass: m,
        energy: e.total,
        lower_ok: m * m / d.powf(alpha.get()) <= e.total,
        upper_ok: T::lit(2.0) * d <= e.total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::riesz::ball_energy_closed;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn al(a: f64) -> Alpha<f64> {
        Alpha::new(a).unwrap()
    }

    #[test]
    fn chain_examples() {
        let c = chain_ansatz_energy(PI, al(1.0)).unwrap();
        assert_eq!(c.system.len(), 1);
        let b = ball_energy_closed(1.0, al(1.0)).unwrap();
        assert_relative_eq!(c.energy.total, b.total, max_relative = 1e-14);
        let c = chain_ansatz_energy(100.0, al(1.0)).unwrap();
        assert!(c.energy.total / 100.0 <= b.total / PI + 4.0);
        assert_relative_eq!(c.system.area(), 100.0, max_relative = 1e-12);
        assert!(chain_ansatz_energy(0.5, al(1.0)).is_err());
    }

    #[test]
    fn interpolation_unit_disk() {
        let d: Domain<f64> = StarDomain::disk([0.0, 0.0], 1.0).unwrap().into();
        let r = interpolation_ratio(&d, al(1.0), &QuadratureConfig::default()).unwrap();
        let want = PI / ((2.0 * PI).sqrt() * (16.0 * PI / 3.0).sqrt());
        assert_relative_eq!(r, want, max_relative = 1e-9);
    }

    #[test]
    fn diameter_bounds_unit_disk() {
        let d: Domain<f64> = StarDomain::disk([0.0, 0.0], 1.0).unwrap().into();
        let c = diameter_bounds_check(&d, al(1.0), &QuadratureConfig::default()).unwrap();
        assert!(c.lower_ok && c.upper_ok);
        assert_relative_eq!(c.diameter, 2.0, max_relative = 1e-12);
    }

    #[test]
    fn erase_needs_two() {
        let s = DiskSystem::single([0.0, 0.0], 1.0).unwrap();
        assert!(erase_dilate_gain(&s, 0, al(1.0), &QuadratureConfig::default()).is_err());
    }
}
