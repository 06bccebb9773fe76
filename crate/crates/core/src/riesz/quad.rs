use rayon::prelude::*;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::quadrature::Boundary;
use crate::riesz::{Alpha, QuadratureConfig};
use crate::scalar::{compensated_sum, dist, dot, sub, Point, Real};

/// Quadrature value with an absolute error estimate (difference against
/// the same rule on half as many panels).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub err: T,
}

/// `∬_{A×B} |x−y|^{−α}` for the regions bounded by `a` and `b` (one ordering).
/// With `a` and `b` the same curve this is the self-interaction.
pub fn cross_interaction<T: Real>(a: &Boundary<'_, T>, b: &Boundary<'_, T>, alpha: Alpha<T>) -> T {
    let two = T::lit(2.0);
    let beta = two - alpha.get();
    let rows: Vec<T> = a
        .nodes()
        .par_iter()
        .map(|xn| {
            let x = xn.x;
            let nx = xn.nw;
            b.integrate_near(x, &|y: Point<T>, nw: Point<T>| {
                let r = dist(x, y);
                if r == T::zero() {
                    T::zero()
                } else {
                    r.powf(beta) * dot(nx, nw)
                }
            })
        })
        .collect();
    -compensated_sum(rows) / (beta * beta)
}

/// `∬_{Ω×Ω} |x−y|^{−α}` for the region bounded by `b`.
pub fn self_interaction<T: Real>(b: &Boundary<'_, T>, alpha: Alpha<T>) -> T {
    cross_interaction(b, b, alpha)
}

fn potential_on<T: Real>(b: &Boundary<'_, T>, alpha: Alpha<T>, x: Point<T>) -> T {
    let a = alpha.get();
    let v = b.integrate_near(x, &|y: Point<T>, nw: Point<T>| {
        let d = sub(y, x);
        let r = dist(x, y);
        if r == T::zero() {
            T::zero()
        } else {
            r.powf(-a) * dot(d, nw)
        }
    });
    v / (T::lit(2.0) - a)
}

fn checked<T: Real>(fine: T, coarse: T, cfg: &QuadratureConfig) -> Result<Estimate<T>> {
    if !fine.is_finite() {
        return Err(Error::NonFinite("boundary quadrature"));
    }
    let err = (fine - coarse).abs();
    let rel = (err / fine.abs().max(T::min_positive_value())).to_f64_lossy();
    if rel > cfg.tol {
        return Err(Error::ToleranceNotMet {
            achieved: rel,
            tol: cfg.tol,
        });
    }
    Ok(Estimate { value: fine, err })
}

fn boundaries<'d, T: Real>(
    dom: &'d Domain<T>,
    cfg: &QuadratureConfig,
) -> (Boundary<'d, T>, Boundary<'d, T>) {
    let split = T::lit(cfg.singular_split_radius);
    let p = cfg.boundary_panels;
    (
        dom.boundary(p).with_min_panel_len(split),
        dom.boundary((p / 2).max(1)).with_min_panel_len(split),
    )
}

/// Nonlocal energy by the double boundary reduction (no closed forms).
pub fn nonlocal_energy<T: Real>(
    dom: &Domain<T>,
    alpha: Alpha<T>,
    cfg: &QuadratureConfig,
) -> Result<Estimate<T>> {
    cfg.validate()?;
    let (fine, coarse) = boundaries(dom, cfg);
    checked(
        self_interaction(&fine, alpha),
        self_interaction(&coarse, alpha),
        cfg,
    )
}

/// `v(x) = ∫_Ω |x−y|^{−α} dy` by the single boundary reduction; `x` may lie
/// inside, on, or outside ∂Ω.
pub fn potential_at<T: Real>(
    dom: &Domain<T>,
    alpha: Alpha<T>,
    x: Point<T>,
    cfg: &QuadratureConfig,
) -> Result<Estimate<T>> {
    cfg.validate()?;
    if !(x[0].is_finite() && x[1].is_finite()) {
        return Err(Error::NonFinite("potential_at"));
    }
    let (fine, coarse) = boundaries(dom, cfg);
    checked(
        potential_on(&fine, alpha, x),
        potential_on(&coarse, alpha, x),
        cfg,
    )
}

/// [`potential_at`] for many points, sharing the panelled boundary.
pub fn potential_many<T: Real>(
    dom: &Domain<T>,
    alpha: Alpha<T>,
    points: &[Point<T>],
    cfg: &QuadratureConfig,
) -> Result<Vec<Estimate<T>>> {
    cfg.validate()?;
    let (fine, coarse) = boundaries(dom, cfg);
    points
        .par_iter()
        .map(|&x| {
            checked(
                potential_on(&fine, alpha, x),
                potential_on(&coarse, alpha, x),
                cfg,
            )
        })
        .collect()
}
