use crate::error::{Error, Result};
use crate::riesz::{Alpha, EnergyBreakdown};
use crate::scalar::Real;
use crate::specfun::{elliptic_e, hyp2f1, ln_gamma};

fn half<T: Real>() -> T {
    T::lit(0.5)
}

/// `2π²Γ(2−α)/(Γ(2−α/2)Γ(3−α/2))`, the nonlocal energy of the unit disk.
pub fn ball_nonlocal_coeff<T: Real>(alpha: Alpha<T>) -> Result<T> {
    let a = alpha.get();
    let two = T::lit(2.0);
    let lg = ln_gamma(two - a)? - ln_gamma(two - a * half())? - ln_gamma(T::lit(3.0) - a * half())?;
    Ok(two * T::PI() * T::PI() * lg.exp())
}

fn check_radius<T: Real>(r: T) -> Result<()> {
    if r.is_finite() && r > T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidDomain(format!("radius {r} must be positive")))
    }
}

/// Energy of a disk of radius `r`.
pub fn ball_energy_closed<T: Real>(r: T, alpha: Alpha<T>) -> Result<EnergyBreakdown<T>> {
    check_radius(r)?;
    let nl = ball_nonlocal_coeff(alpha)? * r.powf(T::lit(4.0) - alpha.get());
    Ok(EnergyBreakdown::new(
        T::TAU() * r,
        nl,
        alpha,
        T::PI() * r * r,
        T::zero(),
    ))
}

/// Energy of the ellipse of area πR² and eccentricity e (axes along x, y).
pub fn ellipse_energy_closed<T: Real>(r: T, e: T, alpha: Alpha<T>) -> Result<EnergyBreakdown<T>> {
    check_radius(r)?;
    if !(e >= T::zero() && e < T::one()) {
        return Err(Error::InvalidDomain(format!(
            "eccentricity {e} outside [0, 1)"
        )));
    }
    let a = alpha.get();
    let one = T::one();
    let two = T::lit(2.0);
    let e2 = e * e;
    let q = one - e2;
    let perimeter = T::lit(4.0) * r * q.powf(-T::lit(0.25)) * elliptic_e(e2)?;

    let (ha, hb, hc) = (half(), one - a * half(), one);
    let f1 = hyp2f1(ha, hb, hc, e2)?;
    let f2 = if e2 == T::zero() {
        one
    } else {
        hyp2f1(ha, hb, hc, e2 / (e2 - one))?
    };
    let bracket = q * f1 + q.powf(a * half()) * f2;
    // half of the disk coefficient times the (1−e²) factors; equals it at e = 0
    let coeff = ball_nonlocal_coeff(alpha)? * half();
    let nl = coeff * q.powf(-(a + two) / T::lit(4.0)) * bracket * r.powf(T::lit(4.0) - a);
    Ok(EnergyBreakdown::new(
        perimeter,
        nl,
        alpha,
        T::PI() * r * r,
        T::zero(),
    ))
}

/// Potential of the unit disk on its boundary, `πΓ(2−α)/Γ(2−α/2)²`.
pub fn ball_potential_v0<T: Real>(alpha: Alpha<T>) -> Result<T> {
    let a = alpha.get();
    let two = T::lit(2.0);
    Ok(T::PI() * (ln_gamma(two - a)? - two * ln_gamma(two - a * half())?).exp())
}

/// Potential of the unit disk at distance `r` from its centre.
///
/// Both branches are evaluated through ₂F₁ all the way to r = 1; the
/// hypergeometric routine switches to its z → 1 connection formulas there,
/// so no separate near-boundary expansion is needed.
pub fn ball_potential_closed<T: Real>(r: T, alpha: Alpha<T>) -> Result<T> {
    if !(r.is_finite() && r >= T::zero()) {
        return Err(Error::Domain {
            func: "ball_potential_closed",
            detail: format!("r = {r}"),
        });
    }
    let a = alpha.get();
    let two = T::lit(2.0);
    if r == T::one() {
        return ball_potential_v0(alpha);
    }
    if r < T::one() {
        Ok(T::TAU() / (two - a) * hyp2f1((a - two) * half(), a * half(), T::one(), r * r)?)
    } else {
        let z = (r * r).recip();
        Ok(T::PI() / r.powf(a) * hyp2f1(a * half(), a * half(), two, z)?)
    }
}

/// Leading term of `v^B(1 + r) − v₀` as r → 0.
///
/// α < 1: linear; α = 1: `−r(2 ln|r|⁻¹ − 2 + 3 ln 4)`; α > 1: `−C_α|r|^{1−α} r`.
pub fn boundary_expansion_leading<T: Real>(r: T, alpha: Alpha<T>) -> Result<T> {
    let a = alpha.get();
    let one = T::one();
    let two = T::lit(2.0);
    if r == T::zero() {
        return Ok(T::zero());
    }
    if a < one {
        let c = T::PI()
            * a
            * (two - a)
            * (ln_gamma(one - a)? - two * ln_gamma(two - a * half())?).exp()
            / two;
        Ok(-c * r)
    } else if a == one {
        Ok(-r * (two * (-r.abs().ln()) - two + T::lit(3.0) * T::lit(4.0).ln()))
    } else {
        let c = T::PI().sqrt() * (ln_gamma((a - one) * half())? - ln_gamma(a * half())?).exp()
            / (two - a);
        Ok(-c * r.abs().powf(one - a) * r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn al(a: f64) -> Alpha<f64> {
        Alpha::new(a).unwrap()
    }

    #[test]
    fn unit_disk_alpha_one() {
        let e = ball_energy_closed(1.0, al(1.0)).unwrap();
        assert_relative_eq!(e.nonlocal, 16.0 * PI / 3.0, max_relative = 1e-13);
        assert_relative_eq!(e.total, 2.0 * PI + 16.0 * PI / 3.0, max_relative = 1e-13);
        assert_relative_eq!(e.total, 23.038346, max_relative = 1e-7);
    }

    #[test]
    fn small_alpha_tends_to_mass_squared() {
        // kernel → 1 as α → 0; at α = 0.05 the coefficient is within a few % of π²
        let c = ball_nonlocal_coeff(al(0.05)).unwrap();
        assert!((c / (PI * PI) - 1.0).abs() < 0.05);
    }

    #[test]
    fn disk_scaling() {
        for a in [0.5, 1.0, 1.5] {
            let e1 = ball_energy_closed(1.0, al(a)).unwrap().nonlocal;
            let e2 = ball_energy_closed(2.0, al(a)).unwrap().nonlocal;
            assert_relative_eq!(e2, 2f64.powf(4.0 - a) * e1, max_relative = 1e-13);
        }
    }

    #[test]
    fn ellipse_reduces_to_disk() {
        for a in [0.3, 1.0, 1.7] {
            let d = ball_energy_closed(1.3, al(a)).unwrap();
            let e = ellipse_energy_closed(1.3, 0.0, al(a)).unwrap();
            assert_relative_eq!(e.nonlocal, d.nonlocal, max_relative = 1e-14);
            assert_relative_eq!(e.perimeter, d.perimeter, max_relative = 1e-14);
        }
    }

    #[test]
    fn potential_values() {
        assert_relative_eq!(
            ball_potential_closed(0.0, al(1.0)).unwrap(),
            2.0 * PI,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            ball_potential_closed(1.0, al(1.0)).unwrap(),
            4.0,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            ball_potential_v0(al(1.0)).unwrap(),
            4.0,
            max_relative = 1e-13
        );
        // far field
        let v = ball_potential_closed(1e4, al(0.7)).unwrap();
        assert_relative_eq!(v, PI * 1e4f64.powf(-0.7), max_relative = 1e-7);
        // continuity across r = 1; for α > 1 only Hölder, |v − v₀| ~ |r|^{2−α}
        for a in [0.5, 1.0, 1.5] {
            let v0 = ball_potential_v0(al(a)).unwrap();
            let lo = ball_potential_closed(1.0 - 1e-9, al(a)).unwrap();
            let hi = ball_potential_closed(1.0 + 1e-9, al(a)).unwrap();
            assert_relative_eq!(lo, v0, max_relative = 1e-4);
            assert_relative_eq!(hi, v0, max_relative = 1e-4);
        }
    }

    #[test]
    fn expansion_alpha_below_one() {
        let a = al(0.5);
        let v0 = ball_potential_v0(a).unwrap();
        for r in [1e-4, -1e-4] {
            let lead = boundary_expansion_leading(r, a).unwrap();
            let dv = ball_potential_closed(1.0 + r, a).unwrap() - v0;
            // remainder O(|r|^{2−α}) = O(|r|^{1.5}) relative |r|^{0.5} = 1e-2
            assert_relative_eq!(dv / lead, 1.0, max_relative = 0.05);
        }
    }

    #[test]
    fn expansion_alpha_one_log_slope() {
        let a = al(1.0);
        let v0 = ball_potential_v0(a).unwrap();
        let dv = |r: f64| ball_potential_closed(1.0 + r, a).unwrap() - v0;
        for r in [1e-3f64, -1e-3] {
            assert!(dv(r) * r < 0.0, "potential decreases outward");
        }
        // (v(1+r) − v0)/r ≈ −2 ln|r|⁻¹ + const: slope in ln r is 2
        let g = |r: f64| dv(r) / r;
        let slope = (g(1e-5) - g(1e-4)) / (1e-5f64.ln() - 1e-4f64.ln());
        assert_relative_eq!(slope, 2.0, max_relative = 1e-2);
    }
}
