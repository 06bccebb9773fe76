use serde::{Deserialize, Serialize};

use crate::domain::{project_modes, StarDomain};
use crate::error::{Error, Result};
use crate::minimize::gradient::{energy_eps, shape_gradient};
use crate::riesz::{Alpha, EnergyBreakdown, QuadratureConfig};
use crate::scalar::Real;

/// Allowed energy increase per accepted step (quadrature noise floor).
const SLACK: f64 = 1e-12;
const ARMIJO: f64 = 1e-4;
const MAX_HALVINGS: usize = 40;
/// Below this min r/r₀ the polar representation is about to pinch.
const NECK_RATIO: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FlowConfig {
    /// Initial (and maximum) line-search step, in units of r₀.
    pub step: f64,
    pub max_steps: usize,
    pub el_tol: f64,
    /// Fourier mode cap N.
    pub modes: usize,
    pub area_target: f64,
    /// Keep a copy of the shape every this many steps (0: none).
    pub checkpoint_every: usize,
    pub quad: QuadratureConfig,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            step: 1.0,
            max_steps: 500,
            el_tol: 1e-6,
            modes: 64,
            area_target: std::f64::consts::PI,
            checkpoint_every: 0,
            quad: QuadratureConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FlowResult<T> {
    pub final_domain: StarDomain<T>,
    /// E_ε after each accepted step (entry 0 is the start).
    pub energy_history: Vec<EnergyBreakdown<T>>,
    pub el_residual_history: Vec<T>,
    pub converged: bool,
    pub split_suspected: bool,
    pub steps: usize,
    pub checkpoints: Vec<(usize, StarDomain<T>)>,
}

/// Rescale the radius so that the area equals `target`, keeping the centre.
fn normalize_area<T: Real>(d: &StarDomain<T>, target: T) -> Result<StarDomain<T>> {
    let lambda = (target / d.area()).sqrt();
    d.with_coeffs(
        d.r0() * lambda,
        d.cos_coeffs().to_vec(),
        d.sin_coeffs().to_vec(),
    )
}

fn pad_modes<T: Real>(d: &StarDomain<T>, n: usize) -> Result<StarDomain<T>> {
    if d.modes() > n {
        return Err(Error::Precondition(format!(
            "domain has {} modes, more than the flow cap {n}",
            d.modes()
        )));
    }
    let mut a = d.cos_coeffs().to_vec();
    let mut b = d.sin_coeffs().to_vec();
    a.resize(n + 1, T::zero());
    b.resize(n, T::zero());
    d.with_coeffs(d.r0(), a, b)
}

/// Sobolev-preconditioned descent direction in Fourier coefficients of ρ.
fn direction<T: Real>(dom: &StarDomain<T>, g: &[T], r: &[T], speed: &[T]) -> (Vec<T>, Vec<T>) {
    let n = dom.modes();
    // normal speed −g expressed as a radial speed
    let vr: Vec<T> = g
        .iter()
        .zip(r.iter().zip(speed))
        .map(|(&gi, (&ri, &si))| -gi * si / ri / dom.r0())
        .collect();
    let (mut a, mut b) = project_modes(&vr, n);
    a[0] = T::zero();
    let half = T::from_usize_lossy(n) * T::lit(0.5);
    for k in 1..=n {
        let kf = T::from_usize_lossy(k);
        let mut w = (T::one() + kf * kf).recip();
        if kf > half {
            let x = (kf - half) / half;
            w = w * (T::one() - T::lit(0.5) * x * x);
        }
        a[k] = a[k] * w;
        b[k - 1] = b[k - 1] * w;
    }
    (a, b)
}

/// Descent on E_ε at fixed area by preconditioned shape-gradient steps
/// with backtracking and exact area renormalization.
pub fn gradient_flow<T: Real>(
    dom: &StarDomain<T>,
    alpha: Alpha<T>,
    eps: T,
    cfg: &FlowConfig,
) -> Result<FlowResult<T>> {
    if !(cfg.step > 0.0 && cfg.el_tol > 0.0 && cfg.area_target > 0.0 && cfg.modes >= 1) {
        return Err(Error::Precondition(
            "flow needs step, el_tol, area_target > 0 and modes >= 1".into(),
        ));
    }
    if !(eps.is_finite() && eps >= T::zero()) {
        return Err(Error::Precondition(format!("eps = {eps} must be >= 0")));
    }
    let q = &cfg.quad;
    let target = T::lit(cfg.area_target);
    let mut cur = normalize_area(&pad_modes(dom, cfg.modes)?, target)?;
    let mut energy = energy_eps(&cur, alpha, eps, q)?;
    let mut energies = vec![energy];
    let mut residuals = Vec::new();
    let mut checkpoints = Vec::new();
    let mut step = T::lit(cfg.step);
    let step_max = T::lit(cfg.step);
    let (mut converged, mut split) = (false, false);
    let mut steps = 0;

    loop {
        let grad = shape_gradient(&cur, alpha, eps, q)?;
        let res = grad.residual();
        residuals.push(res);
        let min_ratio = grad.r.iter().fold(T::infinity(), |m, &r| m.min(r)) / cur.r0();
        if min_ratio < T::lit(NECK_RATIO) {
            split = true;
            break;
        }
        if res <= T::lit(cfg.el_tol) {
            converged = true;
            break;
        }
        if steps >= cfg.max_steps {
            break;
        }
        let (da, db) = direction(&cur, &grad.g, &grad.r, &grad.speed);
        let dr = rho_on_grid(&da, &db, &grad.theta, cur.r0());
        let slope = grad.directional(&dr);

        let mut halvings = 0;
        loop {
            let a: Vec<T> = cur
                .cos_coeffs()
                .iter()
                .zip(&da)
                .map(|(&c, &d)| c + step * d)
                .collect();
            let b: Vec<T> = cur
                .sin_coeffs()
                .iter()
                .zip(&db)
                .map(|(&c, &d)| c + step * d)
                .collect();
            let trial = cur
                .with_coeffs(cur.r0(), a, b)
                .and_then(|t| normalize_area(&t, target));
            if let Ok(t) = trial {
                let e = energy_eps(&t, alpha, eps, q)?;
                let bound = energy.total + T::lit(ARMIJO) * step * slope + T::lit(SLACK);
                if e.total <= bound {
                    cur = t;
                    energy = e;
                    energies.push(e);
                    step = (step * T::lit(2.0)).min(step_max);
                    break;
                }
            }
            step = step * T::lit(0.5);
            halvings += 1;
            if halvings >= MAX_HALVINGS {
                return Err(Error::StepCollapse(MAX_HALVINGS));
            }
        }
        steps += 1;
        if cfg.checkpoint_every > 0 && steps % cfg.checkpoint_every == 0 {
            checkpoints.push((steps, cur.clone()));
        }
    }
    Ok(FlowResult {
        final_domain: cur,
        energy_history: energies,
        el_residual_history: residuals,
        converged,
        split_suspected: split,
        steps,
        checkpoints,
    })
}

fn rho_on_grid<T: Real>(a: &[T], b: &[T], theta: &[T], r0: T) -> Vec<T> {
    theta
        .iter()
        .map(|&t| {
            let mut s = a[0];
            for k in 1..a.len() {
                let (sn, cs) = (T::from_usize_lossy(k) * t).sin_cos();
                s = s + a[k] * cs + b[k - 1] * sn;
            }
            r0 * s
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Domain, EllipseDomain};

    #[test]
    fn pure_perimeter_flow_rounds_ellipse() {
        let start = EllipseDomain::new(1.0, 0.5).unwrap().to_star(16).unwrap();
        let cfg = FlowConfig {
            modes: 16,
            max_steps: 200,
            el_tol: 1e-8,
            ..Default::default()
        };
        let out = gradient_flow(&start, Alpha::new(1.0).unwrap(), 0.0, &cfg).unwrap();
        assert!(
            out.converged,
            "{} steps, last res {:?}",
            out.steps,
            out.el_residual_history.last()
        );
        let d: Domain<f64> = out.final_domain.clone().into();
        assert!(d.isoperimetric_deficit().unwrap() < 1e-10);
        assert!(out
            .energy_history
            .windows(2)
            .all(|w| w[1].total <= w[0].total + SLACK));
        assert!((out.final_domain.area() - std::f64::consts::PI).abs() < 1e-12);
    }
}
