use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::critical::{
    disk_energy_of_mass, eps_of_mass, mass_c1, mass_c2, quartic_coeff, two_disk_excess,
};
use crate::domain::EllipseDomain;
use crate::error::Result;
use crate::minimize::flow::{gradient_flow, FlowConfig};
use crate::riesz::Alpha;
use crate::roots::golden_min;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    DiskGlobalCandidate,
    DiskNotGlobal,
    DiskLocallyUnstable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::DiskGlobalCandidate => "disk-global-candidate",
            Verdict::DiskNotGlobal => "disk-not-global",
            Verdict::DiskLocallyUnstable => "disk-locally-unstable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseVerdict<T> {
    pub alpha: T,
    pub m: T,
    pub disk_energy: T,
    /// Best (t, 1−t) split at infinite separation, t ∈ (0, 1/2].
    pub best_two_disk_energy: T,
    pub best_t: T,
    /// Energy reached by the flow from a perturbed disk, if run.
    pub flow_energy: Option<T>,
    pub quartic: T,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PhaseScanConfig {
    /// t-grid size on [0, 1/2] for the two-disk split.
    pub t_points: usize,
    /// Run a gradient flow from an ellipse of this eccentricity in every cell.
    pub flow: Option<FlowConfig>,
    pub flow_eccentricity: f64,
}

impl Default for PhaseScanConfig {
    fn default() -> Self {
        Self {
            t_points: 2049,
            flow: None,
            flow_eccentricity: 0.05,
        }
    }
}

/// One scanned (α, m) cell; failures are recorded, not propagated.
#[derive(Debug, Clone, Serialize)]
pub struct PhaseCell<T> {
    pub alpha: T,
    pub m: T,
    pub outcome: std::result::Result<PhaseVerdict<T>, String>,
}

/// Masses closer than this (relative) to a threshold are classified by the
/// threshold formula rather than by the witnesses.
const TIE: f64 = 1e-9;

fn best_split<T: Real>(m: T, alpha: Alpha<T>, n: usize) -> Result<(T, T)> {
    let mu = m / mass_c1(alpha)?;
    let f = |t: T| {
        two_disk_excess(t, mu, alpha)
            .map(|s| s.f)
            .unwrap_or(T::infinity())
    };
    let n = n.max(3);
    let h = T::lit(0.5) / T::from_usize_lossy(n - 1);
    let mut best = (T::lit(0.5), f(T::lit(0.5)));
    for i in 1..n {
        let t = h * T::from_usize_lossy(i);
        let v = f(t);
        if v < best.1 {
            best = (t, v);
        }
    }
    if best.0 < T::lit(0.5) {
        let lo = (best.0 - h).max(h * T::lit(1e-3));
        let hi = (best.0 + h).min(T::lit(0.5));
        let (t, v) = golden_min(f, lo, hi, T::lit(1e-12));
        if v < best.1 {
            best = (t, v);
        }
    }
    let scale = T::lit(2.0) * (T::PI() * m).sqrt();
    Ok((best.0, disk_energy_of_mass(m, alpha)? + scale * best.1))
}

/// Classify one (α, m) cell.
pub fn classify<T: Real>(alpha: Alpha<T>, m: T, cfg: &PhaseScanConfig) -> Result<PhaseVerdict<T>> {
    let disk = disk_energy_of_mass(m, alpha)?;
    let (best_t, split) = best_split(m, alpha, cfg.t_points)?;
    let quartic = quartic_coeff(m, alpha)?;
    let flow_energy = match &cfg.flow {
        Some(fc) => {
            let eps = eps_of_mass(m, alpha)?;
            let start =
                EllipseDomain::new(T::one(), T::lit(cfg.flow_eccentricity))?.to_star(fc.modes)?;
            let res = gradient_flow(&start, alpha, eps, fc)?;
            let e = res
                .energy_history
                .last()
                .expect("history starts non-empty")
                .total;
            Some((m / T::PI()).sqrt() * e)
        }
        None => None,
    };
    let (c1, c2) = (mass_c1(alpha)?, mass_c2(alpha)?);
    let tie = |c: T| (m - c).abs() <= T::lit(TIE) * c;
    let unstable = if tie(c2) { m > c2 } else { quartic < T::zero() };
    let witness_margin = T::lit(1e-8) * disk.abs();
    let not_global = if tie(c1) {
        m > c1
    } else {
        split < disk || flow_energy.is_some_and(|e| e < disk - witness_margin)
    };
    let verdict = if unstable {
        Verdict::DiskLocallyUnstable
    } else if not_global {
        Verdict::DiskNotGlobal
    } else {
        Verdict::DiskGlobalCandidate
    };
    Ok(PhaseVerdict {
        alpha: alpha.get(),
        m,
        disk_energy: disk,
        best_two_disk_energy: split,
        best_t,
        flow_energy,
        quartic,
        verdict,
    })
}

/// Scan the (α, m) grid (α outer, m inner); cells run in parallel and are
/// returned in grid order.
pub fn phase_scan<T: Real>(
    alphas: &[Alpha<T>],
    masses: &[T],
    cfg: &PhaseScanConfig,
) -> Vec<PhaseCell<T>> {
    let cells: Vec<(Alpha<T>, T)> = alphas
        .iter()
        .flat_map(|&a| masses.iter().map(move |&m| (a, m)))
        .collect();
    cells
        .par_iter()
        .map(|&(a, m)| PhaseCell {
            alpha: a.get(),
            m,
            outcome: classify(a, m, cfg).map_err(|e| e.to_string()),
        })
        .collect()
}

/// `alpha,m,disk_E,split_E,quartic,verdict`; failed cells carry NaN and `error`.
pub fn phase_csv<T: Real>(cells: &[PhaseCell<T>]) -> String {
    let f = |v: T| format!("{:.16e}", v.to_f64_lossy());
    let mut out = String::from("alpha,m,disk_E,split_E,quartic,verdict\n");
    for c in cells {
        let row = match &c.outcome {
            Ok(v) => format!(
                "{},{},{},{},{},{}",
                f(c.alpha),
                f(c.m),
                f(v.disk_energy),
                f(v.best_two_disk_energy),
                f(v.quartic),
                v.verdict.as_str()
            ),
            Err(_) => format!("{},{},NaN,NaN,NaN,error", f(c.alpha), f(c.m)),
        };
        out.push_str(&row);
        out.push('\n');
    }
    out
}
