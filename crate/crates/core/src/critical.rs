//! Critical masses of the disk and the comparison functions behind them.
//!
//! `m_c1`: above it two far-apart disks beat one disk. `m_c2`: above it
//! the disk is unstable to elliptic deformations (the e⁴ coefficient of
//! the energy turns negative). Both satisfy `m_c1 < m_c2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::riesz::{ball_nonlocal_coeff, Alpha};
use crate::scalar::Real;
use crate::specfun::ln_gamma;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdSet<T> {
    pub alpha: T,
    pub m_c1: T,
    pub m_c2: T,
}

/// Excess of a (t, 1−t) split over a single disk at infinite separation,
/// in units of 2√π m^{1/2}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SplitComparison<T> {
    pub t: T,
    pub mu: T,
    pub f_tilde: T,
    pub f: T,
}

fn half<T: Real>() -> T {
    T::lit(0.5)
}

/// Γ(2−α/2)Γ(3−α/2) in log form.
fn ln_gamma_pair<T: Real>(a: T) -> Result<T> {
    Ok(ln_gamma(T::lit(2.0) - a * half())? + ln_gamma(T::lit(3.0) - a * half())?)
}

fn from_log<T: Real>(ln_x: T, a: T) -> T {
    T::PI() * (T::lit(2.0) * ln_x / (T::lit(3.0) - a)).exp()
}

/// Mass above which one disk is not the global minimizer.
pub fn mass_c1<T: Real>(alpha: Alpha<T>) -> Result<T> {
    let a = alpha.get();
    let two = T::lit(2.0);
    // 1 − 2^{(α−2)/2}, kept accurate as α → 2
    let gap = -(((a - two) * half()) * two.ln()).exp_m1();
    let ln_x = (two.sqrt() - T::one()).ln() + ln_gamma_pair(a)?
        - T::PI().ln()
        - gap.ln()
        - ln_gamma(two - a)?;
    Ok(from_log(ln_x, a))
}

/// Mass above which the disk is not a local minimizer.
pub fn mass_c2<T: Real>(alpha: Alpha<T>) -> Result<T> {
    let a = alpha.get();
    let ln_x =
        T::lit(3.0).ln() + ln_gamma_pair(a)? - T::PI().ln() - a.ln() - ln_gamma(T::lit(3.0) - a)?;
    Ok(from_log(ln_x, a))
}

pub fn thresholds<T: Real>(alpha: Alpha<T>) -> Result<ThresholdSet<T>> {
    Ok(ThresholdSet {
        alpha: alpha.get(),
        m_c1: mass_c1(alpha)?,
        m_c2: mass_c2(alpha)?,
    })
}

/// `2(√2−1)/(2 − 2^{α/2})`.
fn split_coeff<T: Real>(a: T) -> T {
    let two = T::lit(2.0);
    two * (two.sqrt() - T::one()) / (two - two.powf(a * half()))
}

fn f_tilde<T: Real>(t: T, mu: T, a: T) -> T {
    let one = T::one();
    let two = T::lit(2.0);
    let p = (T::lit(4.0) - a) / two;
    t.sqrt()
        + (one - t).sqrt()
        + split_coeff(a) * mu.powf((T::lit(3.0) - a) / two) * (t.powf(p) + (one - t).powf(p))
}

/// F̃(t, μ) and F = F̃(t, μ) − F̃(0, μ) for mass fraction t ∈ [0, 1/2] and μ = m/m_c1.
pub fn two_disk_excess<T: Real>(t: T, mu: T, alpha: Alpha<T>) -> Result<SplitComparison<T>> {
    if !(t >= T::zero() && t <= half()) {
        return Err(Error::Precondition(format!(
            "mass fraction t = {t} outside [0, 1/2]"
        )));
    }
    if !(mu.is_finite() && mu > T::zero()) {
        return Err(Error::Precondition(format!("mu = {mu} must be positive")));
    }
    let a = alpha.get();
    let ft = f_tilde(t, mu, a);
    Ok(SplitComparison {
        t,
        mu,
        f_tilde: ft,
        f: ft - f_tilde(T::zero(), mu, a),
    })
}

/// Coefficient of e⁴ in E(ellipse) − E(disk) at mass m:
/// `3πR/32 − π²αΓ(3−α)R^{4−α}/(32Γ(2−α/2)Γ(3−α/2))`, R = (m/π)^{1/2}.
pub fn quartic_coeff<T: Real>(m: T, alpha: Alpha<T>) -> Result<T> {
    check_mass(m)?;
    let a = alpha.get();
    let r = (m / T::PI()).sqrt();
    let c32 = T::lit(32.0);
    let ln_ratio = ln_gamma(T::lit(3.0) - a)? - ln_gamma_pair(a)?;
    Ok(T::lit(3.0) * T::PI() * r / c32
        - T::PI() * T::PI() * a * ln_ratio.exp() * r.powf(T::lit(4.0) - a) / c32)
}

fn check_mass<T: Real>(m: T) -> Result<()> {
    if m.is_finite() && m > T::zero() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("mass {m} must be positive")))
    }
}

/// ε = (m/π)^{(3−α)/2}.
pub fn eps_of_mass<T: Real>(m: T, alpha: Alpha<T>) -> Result<T> {
    check_mass(m)?;
    Ok((m / T::PI()).powf((T::lit(3.0) - alpha.get()) * half()))
}

/// Inverse of [`eps_of_mass`].
pub fn mass_of_eps<T: Real>(eps: T, alpha: Alpha<T>) -> Result<T> {
    if !(eps.is_finite() && eps > T::zero()) {
        return Err(Error::Precondition(format!("eps {eps} must be positive")));
    }
    Ok(T::PI() * eps.powf(T::lit(2.0) / (T::lit(3.0) - alpha.get())))
}

/// Energy of a single disk of mass m, in closed form.
pub fn disk_energy_of_mass<T: Real>(m: T, alpha: Alpha<T>) -> Result<T> {
    check_mass(m)?;
    let r = (m / T::PI()).sqrt();
    Ok(T::TAU() * r + ball_nonlocal_coeff(alpha)? * r.powf(T::lit(4.0) - alpha.get()))
}

/// `alpha,m_c1,m_c2,eps_c1,eps_c2` rows for each α.
pub fn critical_table_csv<T: Real>(alphas: &[Alpha<T>]) -> Result<String> {
    let mut out = String::from("alpha,m_c1,m_c2,eps_c1,eps_c2\n");
    for &a in alphas {
        let th = thresholds(a)?;
        let row = [
            th.alpha,
            th.m_c1,
            th.m_c2,
            eps_of_mass(th.m_c1, a)?,
            eps_of_mass(th.m_c2, a)?,
        ];
        let cells: Vec<String> = row
            .iter()
            .map(|v| format!("{:.16e}", v.to_f64_lossy()))
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
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
    fn alpha_one_values() {
        assert_relative_eq!(
            mass_c1(al(1.0)).unwrap(),
            3.0 * 2f64.sqrt() * PI / 8.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            mass_c2(al(1.0)).unwrap(),
            9.0 * PI / 8.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn ordering_on_window() {
        for i in 1..=39 {
            let a = al(i as f64 / 20.0);
            let t = thresholds(a).unwrap();
            assert!(
                t.m_c1.is_finite() && t.m_c1 > 0.0 && t.m_c1 < t.m_c2,
                "{t:?}"
            );
        }
    }

    #[test]
    fn split_identities() {
        for a in [0.3, 1.0, 1.7] {
            let s = two_disk_excess(0.0, 2.0, al(a)).unwrap();
            assert_eq!(s.f, 0.0);
            let h = two_disk_excess(0.5, 1.3, al(a)).unwrap();
            let p: f64 = 1.3f64.powf((3.0 - a) / 2.0);
            assert_relative_eq!(h.f, (2f64.sqrt() - 1.0) * (1.0 - p), max_relative = 1e-12);
        }
        assert!(two_disk_excess(0.6, 1.0, al(1.0)).is_err());
        assert!(two_disk_excess(0.2, -1.0, al(1.0)).is_err());
    }

    #[test]
    fn split_at_zero_is_disk_energy() {
        // 2√π m^{1/2} F̃(0, m/m_c1) = E(disk of mass m)
        for a in [0.4, 1.0, 1.6] {
            let mc1 = mass_c1(al(a)).unwrap();
            for m in [0.5, 2.0, 7.0] {
                let s = two_disk_excess(0.0, m / mc1, al(a)).unwrap();
                let e = 2.0 * PI.sqrt() * m.sqrt() * s.f_tilde;
                assert_relative_eq!(
                    e,
                    disk_energy_of_mass(m, al(a)).unwrap(),
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn quartic_sign_and_zero() {
        let a = al(1.3);
        let mc2 = mass_c2(a).unwrap();
        assert!(
            quartic_coeff(mc2, a).unwrap().abs()
                < 1e-12 * quartic_coeff(mc2 / 2.0, a).unwrap().abs() * 1e3
        );
        assert!(quartic_coeff(mc2 / 2.0, a).unwrap() > 0.0);
        assert!(quartic_coeff(mc2 * 1.1, a).unwrap() < 0.0);
    }

    #[test]
    fn eps_round_trip() {
        assert_relative_eq!(eps_of_mass(PI, al(0.7)).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(
            eps_of_mass(4.0 * PI, al(1.0)).unwrap(),
            4.0,
            max_relative = 1e-15
        );
        for m in [0.1, 3.0, 250.0] {
            let a = al(1.4);
            assert_relative_eq!(
                mass_of_eps(eps_of_mass(m, a).unwrap(), a).unwrap(),
                m,
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn table_rows() {
        let alphas: Vec<_> = [0.5, 1.0].iter().map(|&a| al(a)).collect();
        let csv = critical_table_csv(&alphas).unwrap();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "alpha,m_c1,m_c2,eps_c1,eps_c2");
        assert_eq!(lines.len(), 3);
        assert!(lines[2].starts_with("1.0000000000000000e0,1.66608"));
    }
}
